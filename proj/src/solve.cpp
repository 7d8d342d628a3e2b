#include "elbie/solve.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace elbie {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

SolveReport make_report(VectorXc x, const MatrixXc& M, const VectorXc& rhs,
                        SolveMethod method, int iterations, double wall_ms) {
    SolveReport rep;
    double nb = rhs.norm();
    rep.residual = (nb == 0.0) ? 0.0 : (M * x - rhs).norm() / nb;
    int n = int(x.size()) / 2;
    rep.lambda_p = x.head(n);
    rep.lambda_s = x.tail(x.size() - n);
    rep.method = method;
    rep.iterations = iterations;
    rep.wall_ms = wall_ms;
    return rep;
}

void check_system(const MatrixXc& M, const VectorXc& rhs) {
    if (M.rows() != M.cols())
        throw ConfigError("solver requires a square matrix");
    if (rhs.size() != M.rows())
        throw ConfigError("right-hand side length does not match the system");
}

// Givens rotation [[c, s], [-conj(s), c]] with real c zeroing the real b
// below the complex a.
void make_rotation(cplx a, double b, double& c, cplx& s) {
    if (b == 0.0) {
        c = 1.0;
        s = 0.0;
        return;
    }
    if (a == 0.0) {
        c = 0.0;
        s = 1.0;
        return;
    }
    double t = std::sqrt(std::norm(a) + b * b);
    c = std::abs(a) / t;
    s = a * (b / (std::abs(a) * t));
}

} // namespace

SolveReport solve_direct(const MatrixXc& M, const VectorXc& rhs) {
    check_system(M, rhs);
    auto t0 = Clock::now();
    Eigen::PartialPivLU<MatrixXc> lu(M);
    double pivot_floor = 1e-14 * M.cwiseAbs().maxCoeff();
    double pmin = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    if (pmin < pivot_floor) {
        std::ostringstream os;
        os << "numerically singular system: pivot " << pmin
           << " below " << pivot_floor;
        throw NumericalError(os.str());
    }
    VectorXc x = lu.solve(rhs);
    return make_report(std::move(x), M, rhs, SolveMethod::Direct, 0, ms_since(t0));
}

SolveReport solve_gmres(const MatrixXc& M, const VectorXc& rhs, double tol,
                        int max_iter) {
    check_system(M, rhs);
    auto t0 = Clock::now();
    const int n = int(M.rows());
    if (max_iter <= 0) max_iter = n;

    double beta = rhs.norm();
    if (beta == 0.0)
        return make_report(VectorXc::Zero(n), M, rhs, SolveMethod::Gmres, 0,
                           ms_since(t0));

    MatrixXc V(n, std::min(max_iter, 64) + 1);
    MatrixXc H = MatrixXc::Zero(std::min(max_iter, 64) + 1,
                                std::min(max_iter, 64));
    std::vector<double> rot_c;
    std::vector<cplx> rot_s;
    VectorXc g = VectorXc::Zero(1);
    g(0) = beta;

    V.col(0) = rhs / beta;
    double best = 1.0;
    int m = 0;

    while (m < max_iter) {
        if (m + 1 >= V.cols()) {
            int cap = std::min(max_iter, 2 * int(V.cols()));
            V.conservativeResize(Eigen::NoChange, cap + 1);
            H.conservativeResize(cap + 1, cap);
            H.rightCols(cap - m).setZero();
        }
        VectorXc w = M * V.col(m);
        for (int i = 0; i <= m; ++i) {
            cplx h = V.col(i).dot(w);
            H(i, m) = h;
            w -= h * V.col(i);
        }
        for (int i = 0; i <= m; ++i) {
            cplx h = V.col(i).dot(w);
            H(i, m) += h;
            w -= h * V.col(i);
        }
        double hs = w.norm();
        H(m + 1, m) = hs;
        bool breakdown = hs <= 1e-300;
        if (!breakdown) V.col(m + 1) = w / hs;

        for (size_t i = 0; i < rot_c.size(); ++i) {
            cplx a = H(int(i), m), b = H(int(i) + 1, m);
            H(int(i), m) = rot_c[i] * a + rot_s[i] * b;
            H(int(i) + 1, m) = -std::conj(rot_s[i]) * a + rot_c[i] * b;
        }
        double c;
        cplx s;
        make_rotation(H(m, m), hs, c, s);
        rot_c.push_back(c);
        rot_s.push_back(s);
        H(m, m) = c * H(m, m) + s * hs;
        H(m + 1, m) = 0.0;
        g.conservativeResize(m + 2);
        g(m + 1) = -std::conj(s) * g(m);
        g(m) = c * g(m);
        ++m;

        double res = std::abs(g(m)) / beta;
        best = std::min(best, res);
        if (res <= tol || breakdown) {
            VectorXc y(m);
            for (int i = m - 1; i >= 0; --i) {
                cplx acc = g(i);
                for (int j = i + 1; j < m; ++j) acc -= H(i, j) * y(j);
                y(i) = acc / H(i, i);
            }
            VectorXc x = V.leftCols(m) * y;
            if (res <= tol || best <= tol)
                return make_report(std::move(x), M, rhs, SolveMethod::Gmres, m,
                                   ms_since(t0));
            break;  // breakdown without convergence
        }
    }

    std::ostringstream os;
    os << "GMRES did not reach tolerance " << tol << " in " << m
       << " iterations; best residual " << best;
    throw NumericalError(os.str());
}

std::vector<cplx> spectrum(const MatrixXc& M) {
    if (M.rows() != M.cols())
        throw ConfigError("spectrum requires a square matrix");
    if (M.rows() > 4096)
        throw ConfigError("spectrum supports dimensions up to 4096");
    Eigen::ComplexEigenSolver<MatrixXc> es(M, /*computeEigenvectors=*/false);
    const VectorXc& ev = es.eigenvalues();
    return std::vector<cplx>(ev.data(), ev.data() + ev.size());
}

double condition_number(const MatrixXc& M) {
    if (M.rows() != M.cols())
        throw ConfigError("condition number requires a square matrix");
    if (M.rows() > 4096)
        throw ConfigError("condition number supports dimensions up to 4096");
    Eigen::BDCSVD<MatrixXc> svd(M);
    const VectorXr& sv = svd.singularValues();
    double smin = sv(sv.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

} // namespace elbie
