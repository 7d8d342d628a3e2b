#include "elbie/fields.hpp"

#include "elbie/bessel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace elbie {

namespace {

// Trace samples for the interior test and the distance gate. 1024 nodes keep
// the chord error well below the 0.1 exclusion distance.
std::vector<Vec2> trace_samples(const Curve& curve, int minimum) {
    int M = std::max(minimum, 1024);
    std::vector<Vec2> pts;
    pts.reserve(static_cast<size_t>(M));
    for (const CurveFrame& f : curve.frames_on_grid(M)) pts.push_back(f.x);
    return pts;
}

bool winding_inside(const std::vector<Vec2>& trace, const Vec2& x) {
    double total = 0.0;
    const size_t M = trace.size();
    for (size_t m = 0; m < M; ++m) {
        Vec2 a = trace[m] - x;
        Vec2 b = trace[(m + 1) % M] - x;
        total += std::atan2(a.x() * b.y() - a.y() * b.x(), a.dot(b));
    }
    return std::abs(total) > PI;   // |winding| >= 1/2 turn
}

double trace_distance(const std::vector<Vec2>& trace, const Vec2& x) {
    double d = std::numeric_limits<double>::infinity();
    for (const Vec2& p : trace) d = std::min(d, (x - p).norm());
    return d;
}

// Hessian of phi0(k r) at x (r = |x|):
//   (i k^2/4) H1_2(kr) x x^T / r^2 - (i k/4) H1_1(kr) / r I.
CMat2 hess_phi0(double k, const Vec2& x, double r) {
    const cplx h1 = hankel1_1(k * r);
    const cplx h2 = hankel1_2(k * r);
    CMat2 m = (0.25 * I_UNIT * k * k * h2 / (r * r)) * (x * x.transpose()).cast<cplx>();
    m -= (0.25 * I_UNIT * k * h1 / r) * CMat2::Identity();
    return m;
}

} // namespace

CMat2 fundamental_matrix(const ProblemParams& prm, const Vec2& x) {
    const double r = x.norm();
    if (r < 1e-12)
        throw NumericalError("fundamental matrix evaluated at its singularity");
    CMat2 out = (0.25 * I_UNIT / prm.mu * hankel1_0(prm.ks * r)) * CMat2::Identity();
    out += (hess_phi0(prm.ks, x, r) - hess_phi0(prm.kp, x, r)) / (prm.omega * prm.omega);
    return out;
}

CVec2 exact_exterior_field(const NavierPointSource& src, const Vec2& x) {
    return -(fundamental_matrix(src.prm, x - src.x0) * src.polarization.cast<cplx>());
}

bool point_inside(const Curve& curve, const Vec2& x) {
    return winding_inside(trace_samples(curve, 1024), x);
}

double distance_to_curve(const Curve& curve, const Vec2& x) {
    return trace_distance(trace_samples(curve, 1024), x);
}

VectorXc BoundaryData::stacked() const {
    VectorXc rhs(f_n.size() + f_t.size());
    rhs << f_n, f_t;
    return rhs;
}

BoundaryData boundary_data(const Curve& curve, const NavierPointSource& src, int N) {
    if (!point_inside(curve, src.x0)) {
        std::ostringstream msg;
        msg << "source point (" << src.x0.x() << ", " << src.x0.y()
            << ") must lie inside the curve";
        throw ConfigError(msg.str());
    }
    BoundaryData bd;
    bd.f_n.resize(N);
    bd.f_t.resize(N);
    const auto fr = curve.frames_on_grid(N);
    const CVec2 pol = src.polarization.cast<cplx>();
    for (int m = 0; m < N; ++m) {
        const CVec2 uinc = fundamental_matrix(src.prm, fr[m].x - src.x0) * pol;
        bd.f_n(m) = -(uinc.x() * fr[m].nrm.x() + uinc.y() * fr[m].nrm.y());
        bd.f_t(m) = -(uinc.x() * fr[m].tang.x() + uinc.y() * fr[m].tang.y());
    }
    return bd;
}

Densities recover_densities(const SolveReport& rep, const MatrixXc& R) {
    const auto n = rep.lambda_p.size();
    if (rep.lambda_s.size() != n)
        throw ConfigError("solution blocks differ in length");
    if (R.rows() != 2 * n || R.cols() != 2 * n)
        throw ConfigError("regularizer size does not match the solution");
    VectorXc lambda(2 * n);
    lambda << rep.lambda_p, rep.lambda_s;
    const VectorXc phi = R * lambda;
    return {phi.head(n), phi.tail(n)};
}

PotentialValue helmholtz_potential(const std::vector<CurveFrame>& fr, double k,
                                   const VectorXc& phi, const VectorXc& psi,
                                   const Vec2& x) {
    const int N = static_cast<int>(fr.size());
    if (phi.size() != N || psi.size() != N)
        throw ConfigError("density length does not match the frame grid");
    cplx val = 0.0;
    CVec2 grad = CVec2::Zero();
    for (int m = 0; m < N; ++m) {
        const Vec2 z = x - fr[m].x;
        const double r = z.norm();
        const cplx h0 = hankel1_0(k * r);
        const cplx h1 = hankel1_1(k * r);
        const cplx h2 = hankel1_2(k * r);
        const double zn = z.dot(fr[m].nrm);
        const cplx sl = 0.25 * I_UNIT * h0;
        const cplx dl = 0.25 * I_UNIT * k * h1 * zn / r;
        const CVec2 grad_sl = (-0.25 * I_UNIT * k * h1 / r) * z.cast<cplx>();
        const CVec2 grad_dl = (0.25 * I_UNIT * k) *
            (h1 / r * fr[m].nrm.cast<cplx>() - k * h2 * zn / (r * r) * z.cast<cplx>());
        val += (dl * phi(m) - sl * psi(m)) * fr[m].eta;
        grad += (grad_dl * phi(m) - grad_sl * psi(m)) * fr[m].eta;
    }
    const double h = TWO_PI / N;
    return {h * val, h * grad};
}

ExteriorField evaluate_field(const Curve& curve, const ProblemParams& prm,
                             const VectorXc& phi_p, const VectorXc& phi_s,
                             const MatrixXc& Y_p, const MatrixXc& Y_s,
                             const std::vector<Vec2>& points) {
    const auto N = phi_p.size();
    if (phi_s.size() != N)
        throw ConfigError("density blocks differ in length");
    if (Y_p.rows() != N || Y_p.cols() != N || Y_s.rows() != N || Y_s.cols() != N)
        throw ConfigError("Dirichlet-to-Neumann blocks do not match the densities");

    const auto fr = curve.frames_on_grid(static_cast<int>(N));
    const VectorXc psi_p = Y_p * phi_p;
    const VectorXc psi_s = Y_s * phi_s;
    const auto gate = trace_samples(curve, static_cast<int>(N));

    ExteriorField out;
    out.points = points;
    out.u.reserve(points.size());
    out.grad_part.reserve(points.size());
    out.curl_part.reserve(points.size());
    for (const Vec2& x : points) {
        if (winding_inside(gate, x)) {
            std::ostringstream msg;
            msg << "evaluation point (" << x.x() << ", " << x.y()
                << ") lies inside the curve";
            throw ConfigError(msg.str());
        }
        if (const double d = trace_distance(gate, x); d < 0.1) {
            std::ostringstream msg;
            msg << "evaluation point (" << x.x() << ", " << x.y()
                << ") is within the near-field exclusion band (distance "
                << d << " < 0.1)";
            throw ConfigError(msg.str());
        }
        const PotentialValue up = helmholtz_potential(fr, prm.kp, phi_p, psi_p, x);
        const PotentialValue us = helmholtz_potential(fr, prm.ks, phi_s, psi_s, x);
        const CVec2 gp = up.grad;
        const CVec2 vc{us.grad.y(), -us.grad.x()};
        out.grad_part.push_back(gp);
        out.curl_part.push_back(vc);
        out.u.push_back(gp + vc);
    }
    return out;
}

std::vector<Vec2> standard_probes() {
    std::vector<Vec2> pts;
    pts.reserve(1024);
    for (int j = 0; j < 1024; ++j) {
        const double th = TWO_PI * j / 1024.0;
        pts.emplace_back(4.0 * std::cos(th), 4.0 * std::sin(th));
    }
    return pts;
}

double farfield_error(const ExteriorField& field, const NavierPointSource& src) {
    double err = 0.0;
    for (size_t j = 0; j < field.points.size(); ++j) {
        const CVec2 diff = field.u[j] - exact_exterior_field(src, field.points[j]);
        err = std::max(err, diff.norm());
    }
    return err;
}

void write_field_csv(const ExteriorField& field, const std::string& path) {
    std::ofstream out(path);
    if (!out)
        throw ConfigError("cannot open '" + path + "' for writing");
    out << "x,y,Re u1,Im u1,Re u2,Im u2\n";
    char line[256];
    for (size_t j = 0; j < field.points.size(); ++j) {
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      field.points[j].x(), field.points[j].y(),
                      field.u[j].x().real(), field.u[j].x().imag(),
                      field.u[j].y().real(), field.u[j].y().imag());
        out << line;
    }
}

} // namespace elbie
