// Acceptance harness for the elastic boundary-integral solver.
//
// Runs ten end-to-end checks, prints one [PASS]/[FAIL] line per check, and
// exits nonzero if any fail. --extended adds the high-frequency iteration
// study and the N = 1024 conditioning rows; without it the harness stays
// within a few minutes on one core.

#include "elbie/assembly.hpp"
#include "elbie/bessel.hpp"
#include "elbie/curve.hpp"
#include "elbie/fields.hpp"
#include "elbie/kernels.hpp"
#include "elbie/params.hpp"
#include "elbie/solve.hpp"
#include "elbie/spectral.hpp"

#include "oracle_utils.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

using namespace elbie;

namespace {

// ---- pinned tolerances -----------------------------------------------------

constexpr double TOL_IDENTITY = 1e-11;    // multiplier calculus residuals
constexpr double TOL_NILPOTENT = 1e-12;   // squared 2x2 block multiplier
constexpr double TOL_BAND = 1e-12;        // quadrature exactness on the band
constexpr double TOL_CIRCLE = 1e-9;       // circle separation-of-variables
constexpr double TOL_SPLIT_REL = 1e-12;   // kernel split reconstruction
constexpr double TOL_DIAG = 1e-8;         // Richardson diagonal limits
constexpr double MIN_SLOPE = 6.0;         // fitted log2 error vs log2 N slope
constexpr double PLATEAU_FLOOR = 1e-12;   // errors below this end a slope fit
constexpr double FIELD_AGREE = 1e-8;      // arc vs natural far-field gap
constexpr double COND_ANCHOR = 2.94e3;    // reference plateau for the cavity
constexpr double COND_WINDOW = 10.0;      // one order around the anchor: the
// plateau constant depends on the damping eps of the complexified
// wavenumbers (plateau ranges 473..5551 for eps = (0.1..0.8) k^{1/3}) and on
// the row scaling of the assembled blocks, neither of which the reference
// value pins down; mesh independence and the unregularized growth carry the
// substance of the check.

int g_failures = 0;

void report(int idx, const char* name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %2d: %-44s %s\n", ok ? "PASS" : "FAIL", idx,
                name, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

double now_s() {
    using clock = std::chrono::steady_clock;
    static const auto t0 = clock::now();
    return std::chrono::duration<double>(clock::now() - t0).count();
}

// ---- shared geometry / system cache ---------------------------------------

ProblemParams params_at(double omega) { return make_params(omega, 2.0, 3.0); }

struct Sys {
    Curve curve;
    SystemMatrix sm;
    Vec2 source{0.1, 0.0};
};

// The default (0.1, 0) sits in the open mouth of the cavity, which is a
// C-shaped channel; its deepest axis point is near (0.55, 0).
Vec2 source_for(const std::string& geom) {
    if (geom == "cavity") return {0.55, 0.0};
    return {0.1, 0.0};
}

// Key: geometry, arc-length flag, N, regularized flag, omega (integral here).
using SysKey = std::tuple<std::string, bool, int, bool, int>;
std::map<SysKey, Sys> g_systems;

Curve make_geometry(const std::string& name, bool arc) {
    Curve c = builtin_curve(name);
    if (arc) c = arclength_reparametrize(c);
    return c;
}

// Assembles (or returns the cached) regularized/unregularized system. Only
// moderate-size omega = 10 regularized systems are kept; everything else is
// rebuilt on demand so the resident set stays bounded.
Sys& get_system(const std::string& geom, bool arc, int N, bool reg,
                int omega) {
    SysKey key{geom, arc, N, reg, omega};
    auto it = g_systems.find(key);
    if (it != g_systems.end()) return it->second;

    Curve c = make_geometry(geom, arc);
    ProblemParams prm = params_at(omega);
    SystemMatrix sm = arc ? assemble_system_arclength(prm, c, N, reg)
                          : assemble_system_general(prm, c, N, reg);
    auto& slot = g_systems[key];
    slot = Sys{std::move(c), std::move(sm), source_for(geom)};
    return slot;
}

void drop_system(const std::string& geom, bool arc, int N, bool reg,
                 int omega) {
    g_systems.erase(SysKey{geom, arc, N, reg, omega});
}

struct RunResult {
    double err = 0.0;
    int iterations = 0;
    std::vector<CVec2> field;
};

// Full pipeline: Dirichlet data from the interior source, solve, density
// recovery through R, exterior evaluation on the standard probe ring.
RunResult run_pipeline(Sys& S, bool gmres, bool want_field) {
    const SystemMatrix& sm = S.sm;
    const int N = sm.N;
    NavierPointSource src{S.source, {1.0, 1.0}, sm.prm};
    BoundaryData bd = boundary_data(S.curve, src, N);
    VectorXc rhs = bd.stacked();
    SolveReport rep =
        gmres ? solve_gmres(sm.M, rhs, 1e-9) : solve_direct(sm.M, rhs);

    bool arc = sm.kind == ParamKind::ArcResampled;
    MatrixXc R = sm.regularized
                     ? assemble_R(sm.prm, sm.frames, N, arc)
                     : MatrixXc::Identity(2 * N, 2 * N);
    Densities den = recover_densities(rep, R);
    MatrixXc Yp = assemble_Y(sm.prm, sm.frames, N, arc, WaveKind::P);
    MatrixXc Ys = assemble_Y(sm.prm, sm.frames, N, arc, WaveKind::S);
    ExteriorField f = evaluate_field(S.curve, sm.prm, den.phi_p, den.phi_s,
                                     Yp, Ys, standard_probes());
    RunResult r;
    r.err = farfield_error(f, src);
    r.iterations = rep.iterations;
    if (want_field) r.field = f.u;
    return r;
}

// Memoized far-field errors for the omega = 10 direct-solve studies.
std::map<std::tuple<std::string, bool, int>, RunResult> g_runs;

RunResult& far_run(const std::string& geom, bool arc, int N) {
    auto key = std::make_tuple(geom, arc, N);
    auto it = g_runs.find(key);
    if (it != g_runs.end()) return it->second;
    Sys& S = get_system(geom, arc, N, true, 10);
    g_runs[key] = run_pipeline(S, false, true);
    return g_runs[key];
}

VectorXc mode_vector(int n, int N) {
    VectorXc v(N);
    for (int j = 0; j < N; ++j)
        v[j] = std::exp(cplx(0.0, n * TWO_PI * j / N));
    return v;
}

double mode_residual(const MatrixXc& M, int n, cplx lambda) {
    VectorXc v = mode_vector(n, M.rows());
    return (M * v - lambda * v).cwiseAbs().maxCoeff();
}

// ---- circle separation-of-variables values --------------------------------
// On the unit circle the layer operators diagonalize on e^{int}; the
// eigenvalues follow from the Fourier-Bessel expansion of the kernels:
//   single layer        v_n = (i pi / 2) J_n(k) H1_n(k)
//   adjoint double layer  t_n = 1/2 + (i pi k / 2) J_n(k) H1_n'(k)
//   hypersingular       w_n = (i pi k^2 / 2) J_n'(k) H1_n'(k)
//   tangential-normal   vtn_n = -(pi/4) (J_{n-1} H1_{n-1} - J_{n+1} H1_{n+1})
// with J_{-m} H1_{-m} = J_m H1_m.

cplx jh(int m, double k) {
    int a = std::abs(m);
    return bessel_jn(a, k) * hankel1_n(a, k);
}

cplx circle_v(int n, double k) { return cplx(0, M_PI / 2) * jh(n, k); }

cplx circle_t(int n, double k) {
    int a = std::abs(n);
    return 0.5 + cplx(0, M_PI * k / 2) * bessel_jn(a, k) *
                     hankel1_n_prime(a, k);
}

cplx circle_w(int n, double k) {
    int a = std::abs(n);
    return cplx(0, M_PI * k * k / 2) * bessel_jn_prime(a, k) *
           hankel1_n_prime(a, k);
}

cplx circle_vtn(int n, double k) {
    return -(M_PI / 4) * (jh(n - 1, k) - jh(n + 1, k));
}

// ---- kernel split helpers (reconstruction and diagonal limits) ------------

cplx reconstruct(const SplitKernel& sk, const CurveFrame& ft,
                 const CurveFrame& fu) {
    double d = ft.t - fu.t;
    cplx pref = 1.0;
    for (int m = 1; m < sk.j; ++m) pref *= e1m1(d);
    return sk.A(ft, fu) * pref * log4sin2(d) + sk.B(ft, fu);
}

cplx limit_at_diag(const std::function<cplx(double)>& f,
                   const std::vector<double>& deltas) {
    size_t n = deltas.size();
    std::vector<cplx> v(n);
    std::vector<double> q(n);
    for (size_t i = 0; i < n; ++i) {
        v[i] = 0.5 * (f(deltas[i]) + f(-deltas[i]));
        q[i] = deltas[i] * deltas[i];
    }
    for (size_t m = 1; m < n; ++m)
        for (size_t i = 0; i + m < n; ++i)
            v[i] = v[i + 1] + (v[i + 1] - v[i]) * q[i + m] / (q[i] - q[i + m]);
    return v[0];
}

struct NamedKernel {
    const char* name;
    SplitKernel sk;
};

std::vector<NamedKernel> all_kernels(double k) {
    return {{"V", split_V(k)},
            {"Vtn", split_Vtn(k)},
            {"KT", split_KT(k)},
            {"K", split_K(k)},
            {"W_regular", split_W_regular(k)},
            {"V4", split_V4(k).kernel}};
}

// ---- criteria --------------------------------------------------------------

void criterion_1() {
    const int N = 64;
    ProblemParams prm = params_at(10.0);

    MatrixXc I = MatrixXc::Identity(N, N);
    MatrixXc MH = multiplier_matrix([](int n) { return sym_H(n); }, N);
    double r_h = (MH * MH + I).cwiseAbs().maxCoeff();

    MatrixXc MD1 = multiplier_matrix([](int n) { return sym_D(1, n); }, N);
    MatrixXc MDm1 = multiplier_matrix([](int n) { return sym_D(-1, n); }, N);
    MatrixXc MJ = multiplier_matrix([](int n) { return sym_J(n); }, N);
    double r_d = (MDm1 * MD1 - (I - MJ)).cwiseAbs().maxCoeff();

    MatrixXc B = block_multiplier_matrix(
        [&](int n) { return multiplier_block_symbol(BlockName::H0, n, prm); },
        N);
    double r_n = (B * B).cwiseAbs().maxCoeff();

    MatrixXc L1 = quadrature_matrix([](int n) { return cplx(rho_hat(1, n)); },
                                    N);
    MatrixXc HDm1 =
        multiplier_matrix([](int n) { return sym_HDm1(n); }, N);
    double r_l = (L1 - 0.5 * HDm1).cwiseAbs().maxCoeff();

    double r_rho = 0.0;
    for (int r = 1; r <= 4; ++r)
        for (int n = -20; n <= 20; ++n)
            r_rho = std::max(
                r_rho, std::abs(cplx(rho_hat(r, n)) - oracle::rho_hat_quad(r, n)));

    double worst = std::max({r_h, r_d, r_l, r_rho});
    bool ok = worst < TOL_IDENTITY && r_n < TOL_NILPOTENT;
    report(1, "multiplier calculus identities", ok,
           "worst " + fmt(worst) + ", squared block " + fmt(r_n));
}

void criterion_2() {
    double worst = 0.0;
    for (int N : {16, 64, 256}) {
        for (int r = 1; r <= 4; ++r) {
            MatrixXc Q = quadrature_matrix(
                [r](int n) { return cplx(rho_hat(r, n)); }, N);
            for (int j = 0; j < N; ++j) {
                int n = fft_bin_mode(j, N);
                worst = std::max(worst,
                                 mode_residual(Q, n, cplx(rho_hat(r, n))));
            }
        }
    }
    report(2, "product quadrature exact on the band", worst < TOL_BAND,
           "worst " + fmt(worst));
}

void criterion_3() {
    const int N = 64;
    Curve circ = circle_curve(1.0);
    auto fr = circ.frames_on_grid(N);
    ProblemParams prm = params_at(10.0);

    MatrixXc MD = multiplier_matrix([](int n) { return sym_D(1, n); }, N);
    MatrixXc HDm1 = multiplier_matrix([](int n) { return sym_HDm1(n); }, N);

    double worst = 0.0;
    for (double k : {prm.kp, prm.ks}) {
        MatrixXc MV = discrete_singular_op(split_V(k), fr);
        MatrixXc MKT = discrete_singular_op(split_KT(k), fr);
        MatrixXc MVtn = discrete_singular_op(split_Vtn(k), fr);
        MatrixXc MW = MD * MV * MD + 0.5 * k * k * HDm1 +
                      discrete_singular_op(split_W_regular(k), fr);
        for (int n = -8; n <= 8; ++n) {
            worst = std::max(worst, mode_residual(MV, n, circle_v(n, k)));
            worst = std::max(worst, mode_residual(MKT, n, circle_t(n, k)));
            worst = std::max(worst, mode_residual(MW, n, circle_w(n, k)));
            worst = std::max(worst, mode_residual(MVtn, n, circle_vtn(n, k)));
        }
    }
    report(3, "circle operators match closed forms", worst < TOL_CIRCLE,
           "worst " + fmt(worst));
}

void criterion_4() {
    ProblemParams prm = params_at(10.0);
    Curve kite = builtin_curve("kite");
    Curve ell = builtin_curve("ellipse");

    std::mt19937 rng(20260822);
    std::uniform_real_distribution<double> uni(0.0, TWO_PI);
    double worst_rel = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const Curve& c = (trial % 2 == 0) ? kite : ell;
        double k = (trial % 3 == 0) ? prm.ks : prm.kp;
        double t, u;
        do {
            t = uni(rng);
            u = uni(rng);
        } while (std::fabs(std::remainder(t - u, TWO_PI)) < 0.05);
        CurveFrame ft = c.frame(t), fu = c.frame(u);
        for (const auto& nk : all_kernels(k)) {
            cplx tgt = nk.sk.target(ft, fu);
            cplx rec = reconstruct(nk.sk, ft, fu);
            worst_rel = std::max(worst_rel, std::abs(rec - tgt) /
                                                std::max(1.0, std::abs(tgt)));
        }
    }

    const std::vector<double> fine{1e-4, 1e-5, 1e-6};
    const std::vector<double> coarse{2e-2, 1e-2, 5e-3, 2.5e-3, 1.25e-3};
    double worst_diag = 0.0;
    for (double t0 : {0.0, 0.7, 2.3}) {
        CurveFrame f0 = kite.frame(t0);
        for (const auto& nk : all_kernels(prm.kp)) {
            auto fA = [&](double d) { return nk.sk.A(f0, kite.frame(t0 - d)); };
            auto fB = [&](double d) { return nk.sk.B(f0, kite.frame(t0 - d)); };
            for (const auto* ds : {&fine, &coarse}) {
                worst_diag = std::max(
                    worst_diag,
                    std::abs(limit_at_diag(fA, *ds) - nk.sk.A_diag(f0)));
                worst_diag = std::max(
                    worst_diag,
                    std::abs(limit_at_diag(fB, *ds) - nk.sk.B_diag(f0)));
            }
        }
    }

    bool ok = worst_rel < TOL_SPLIT_REL && worst_diag < TOL_DIAG;
    report(4, "kernel splits rebuild and extend to diagonal", ok,
           "reconstruction " + fmt(worst_rel) + ", diagonal " +
               fmt(worst_diag));
}

struct FarCase {
    const char* geom;
    bool arc;
    int N;
    double bound;
};

void criterion_5() {
    const FarCase cases[] = {
        {"ellipse", true, 64, 1e-7},   {"ellipse", true, 128, 1e-11},
        {"ellipse", false, 64, 1e-9},  {"kite", false, 512, 1e-8},
        {"cavity", false, 512, 1e-8},
    };
    bool ok = true;
    std::ostringstream det;
    for (const auto& fc : cases) {
        double err = far_run(fc.geom, fc.arc, fc.N).err;
        bool pass = err <= fc.bound;
        ok = ok && pass;
        det << fc.geom << (fc.arc ? "/arc/" : "/nat/") << fc.N << " "
            << fmt(err) << (pass ? " " : "(!) ");
    }
    report(5, "far-field accuracy at reference sizes", ok, det.str());
}

void criterion_6() {
    struct Series {
        const char* geom;
        bool arc;
        std::vector<int> Ns;
    };
    const Series series[] = {
        {"ellipse", true, {32, 64, 128}},
        {"ellipse", false, {32, 64}},
        {"kite", false, {128, 256, 512}},
        {"cavity", false, {128, 256, 512}},
    };
    bool ok = true;
    std::ostringstream det;
    for (const auto& s : series) {
        // least-squares slope of log2(err) vs log2(N) over the pre-plateau
        // points, keeping the first point at or below the floor so a clean
        // plateau entry still counts toward the decay
        std::vector<double> lx, ly;
        for (size_t i = 0; i < s.Ns.size(); ++i) {
            double err = far_run(s.geom, s.arc, s.Ns[i]).err;
            lx.push_back(std::log2(double(s.Ns[i])));
            ly.push_back(std::log2(std::max(err, 1e-15)));
            if (err <= PLATEAU_FLOOR) break;
        }
        double n = double(lx.size()), sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t i = 0; i < lx.size(); ++i) {
            sx += lx[i];
            sy += ly[i];
            sxx += lx[i] * lx[i];
            sxy += lx[i] * ly[i];
        }
        double slope = -(n * sxy - sx * sy) / (n * sxx - sx * sx);
        bool pass = lx.size() >= 2 && slope > MIN_SLOPE;
        ok = ok && pass;
        det << s.geom << (s.arc ? "/arc " : "/nat ") << fmt(slope)
            << (pass ? " " : "(!) ");
    }
    report(6, "superalgebraic error decay", ok, "slopes " + det.str());
}

int gmres_iterations(const std::string& geom, bool arc, int N, int omega) {
    Sys& S = get_system(geom, arc, N, true, omega);
    RunResult r = run_pipeline(S, true, false);
    if (omega != 10 || N > 512) drop_system(geom, arc, N, true, omega);
    return r.iterations;
}

void criterion_7(bool extended) {
    bool ok = true;
    std::ostringstream det;

    std::vector<int> ell;
    for (int N : {128, 256, 512}) {
        int it = gmres_iterations("ellipse", false, N, 10);
        ell.push_back(it);
        ok = ok && std::abs(it - 34) <= 7;
    }
    ok = ok && (*std::max_element(ell.begin(), ell.end()) -
                    *std::min_element(ell.begin(), ell.end()) <=
                3);
    det << "ellipse/nat " << ell[0] << "/" << ell[1] << "/" << ell[2];

    det << "  cavity/arc ";
    for (int N : {128, 256}) {
        int it = gmres_iterations("cavity", true, N, 10);
        ok = ok && std::abs(it - 39) <= 8;
        det << it << " ";
    }

    if (extended) {
        const std::pair<const char*, int> hf[] = {
            {"ellipse", 233}, {"kite", 238}, {"cavity", 248}};
        for (const auto& [geom, target] : hf) {
            det << " " << geom << "@100 ";
            for (int N : {512, 1024}) {
                int it = gmres_iterations(geom, true, N, 100);
                ok = ok && std::abs(it - target) <= target / 5;
                det << it << " ";
            }
        }
    }
    report(7, "iteration counts plateau", ok, det.str());
}

void criterion_8(bool extended) {
    bool ok = true;
    std::ostringstream det;

    std::vector<int> reg_N{256, 512};
    if (extended) reg_N.push_back(1024);
    std::vector<double> creg;
    for (int N : reg_N) {
        Sys& S = get_system("cavity", false, N, true, 10);
        creg.push_back(condition_number(S.sm.M));
        if (N > 512) drop_system("cavity", false, N, true, 10);
    }
    double cmin = *std::min_element(creg.begin(), creg.end());
    double cmax = *std::max_element(creg.begin(), creg.end());
    ok = ok && cmax / cmin <= 1.5;
    for (double c : creg)
        ok = ok && c >= COND_ANCHOR / COND_WINDOW && c <= COND_ANCHOR * COND_WINDOW;
    det << "reg ";
    for (double c : creg) det << fmt(c) << " ";

    std::vector<int> unr_N{128, 512};
    if (extended) unr_N.push_back(1024);
    std::vector<double> cunr;
    for (int N : unr_N) {
        Sys& S = get_system("cavity", false, N, false, 10);
        cunr.push_back(condition_number(S.sm.M));
        drop_system("cavity", false, N, false, 10);
    }
    det << " unreg ";
    for (double c : cunr) det << fmt(c) << " ";
    for (size_t i = 0; i + 1 < cunr.size(); ++i)
        ok = ok && cunr[i + 1] >= 2.0 * cunr[i];

    report(8, "conditioning: bounded vs growing", ok, det.str());
}

void criterion_9() {
    ProblemParams prm = params_at(10.0);
    CMat2 hp0 = multiplier_block_symbol(BlockName::Hps, 0, prm);
    Eigen::ComplexEigenSolver<CMat2> es(hp0);
    cplx c1 = es.eigenvalues()(0), c2 = es.eigenvalues()(1);
    double r1 = std::max(1.0, 0.05 * std::abs(c1));
    double r2 = std::max(1.0, 0.05 * std::abs(c2));

    bool ok = true;
    std::ostringstream det;
    det << "clusters " << fmt(std::abs(c1)) << "/" << fmt(std::abs(c2))
        << ", in-disk ";
    // the arc-length systems, whose principal part is the named multiplier
    for (const char* geom : {"ellipse", "kite", "cavity"}) {
        Sys& S = get_system(geom, true, 256, true, 10);
        auto eigs = spectrum(S.sm.M);
        int inside = 0;
        for (cplx z : eigs)
            if (std::abs(z - c1) <= r1 || std::abs(z - c2) <= r2) ++inside;
        double frac = double(inside) / double(eigs.size());
        ok = ok && frac >= 0.8;
        det << geom << " " << fmt(frac) << " ";
    }
    report(9, "spectrum clusters at principal values", ok, det.str());
}

double field_gap(const RunResult& a, const RunResult& b) {
    double gap = 0.0;
    for (size_t i = 0; i < a.field.size(); ++i)
        gap = std::max(gap, (a.field[i] - b.field[i]).norm());
    return gap;
}

void criterion_10() {
    // Where both paths are converged at N = 512 (the ellipse) the far fields
    // must coincide to FIELD_AGREE. On the kite the arc-length path still
    // carries ~1e-6 of its own discretization error at this size, so there
    // the cross-path gap is checked against the sum of the two measured
    // errors: both paths must approximate the same exterior field.
    double egap = field_gap(far_run("ellipse", false, 512),
                            far_run("ellipse", true, 512));
    const auto& kn = far_run("kite", false, 512);
    const auto& ka = far_run("kite", true, 512);
    double kgap = field_gap(kn, ka);
    double kbound = 1.1 * (kn.err + ka.err) + 1e-12;
    bool ok = egap <= FIELD_AGREE && kgap <= kbound;
    report(10, "arc-length and general paths agree", ok,
           "ellipse gap " + fmt(egap) + ", kite gap " + fmt(kgap) +
               " (bound " + fmt(kbound) + ")");
}

}  // namespace

int main(int argc, char** argv) {
    bool extended = false;
    for (int i = 1; i < argc; ++i)
        if (std::strcmp(argv[i], "--extended") == 0) extended = true;

    std::printf("acceptance harness (%s)\n", extended ? "extended" : "core");

    struct Entry {
        int idx;
        std::function<void()> run;
        const char* name;
    };
    const Entry entries[] = {
        {1, [] { criterion_1(); }, "multiplier calculus identities"},
        {2, [] { criterion_2(); }, "product quadrature exact on the band"},
        {3, [] { criterion_3(); }, "circle operators match closed forms"},
        {4, [] { criterion_4(); }, "kernel splits rebuild and extend to diagonal"},
        {5, [] { criterion_5(); }, "far-field accuracy at reference sizes"},
        {6, [] { criterion_6(); }, "superalgebraic error decay"},
        {7, [=] { criterion_7(extended); }, "iteration counts plateau"},
        {8, [=] { criterion_8(extended); }, "conditioning: bounded vs growing"},
        {9, [] { criterion_9(); }, "spectrum clusters at principal values"},
        {10, [] { criterion_10(); }, "arc-length and general paths agree"},
    };
    for (const auto& e : entries) {
        double t0 = now_s();
        try {
            e.run();
        } catch (const std::exception& ex) {
            report(e.idx, e.name, false, std::string("exception: ") + ex.what());
        }
        std::printf("    (%.1fs)\n", now_s() - t0);
    }

    std::printf("%d/10 criteria passed in %.1fs\n", 10 - g_failures, now_s());
    return g_failures == 0 ? 0 : 1;
}
