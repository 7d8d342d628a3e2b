#include "elbie/kernels.hpp"

#include <cmath>

#include "elbie/bessel.hpp"

namespace elbie {
namespace {

// Closed forms below lose digits to cancellation inside this window around
// the diagonal; short Taylor expansions take over there. Assembly grids never
// enter the window (minimum node spacing 2pi/4096), only diagonal-limit tests
// do.
constexpr double TAYLOR_CUT = 3e-4;

inline double wrap_pi(double d) { return d - TWO_PI * std::round(d / TWO_PI); }

inline double cross2(const Vec2& a, const Vec2& b) {
    return a[0] * b[1] - a[1] * b[0];
}

// J1(x)/x, finite at 0 (limit 1/2).
double j1_over_x(double x) {
    if (x >= 0.5) return bessel_j1(x) / x;
    double q = 0.25 * x * x;
    // (1/2) sum (-q)^m / (m! (m+1)!) * m-free normalization
    double term = 0.5, sum = 0.0;
    for (int m = 0; m < 20; ++m) {
        sum += term;
        term *= -q / (double(m + 1) * double(m + 2));
        if (std::fabs(term) < 1e-20) break;
    }
    return sum;
}

struct PairGeom {
    double d;    // wrapped t - tau
    cplx em;     // e^{i d} - 1
    Vec2 z;      // x(t) - x(tau)
    double r;    // |z|
    double l4;   // log(4 sin^2(d/2))
    double lnG;  // log(r / (2 |sin(d/2)|))
};

PairGeom pair_geom(const CurveFrame& ft, const CurveFrame& fu) {
    PairGeom g;
    g.d = wrap_pi(ft.t - fu.t);
    g.em = e1m1(g.d);
    g.z = ft.x - fu.x;
    g.r = g.z.norm();
    double s2 = 2.0 * std::fabs(std::sin(0.5 * g.d));
    g.l4 = 2.0 * std::log(s2);
    g.lnG = std::log(g.r / s2);
    return g;
}

// z.nhat(t) with cancellation-free branch near the diagonal:
// z.nhat(t) = kappa eta^2 d^2/2 + (x'''.nhat) d^3/6 + O(d^4).
double z_dot_n_t(const CurveFrame& ft, const CurveFrame& fu, const PairGeom& g) {
    if (std::fabs(g.d) >= TAYLOR_CUT) return g.z.dot(ft.nrm);
    double d = g.d;
    return 0.5 * ft.kappa * ft.eta * ft.eta * d * d +
           ft.d3.dot(ft.nrm) * d * d * d / 6.0;
}

// z.nhat(tau): -kappa(tau) eta(tau)^2 d^2/2 + (x'''(tau).nhat(tau)) d^3/6.
double z_dot_n_tau(const CurveFrame& ft, const CurveFrame& fu, const PairGeom& g) {
    if (std::fabs(g.d) >= TAYLOR_CUT) return g.z.dot(fu.nrm);
    double d = g.d;
    return -0.5 * fu.kappa * fu.eta * fu.eta * d * d +
           fu.d3.dot(fu.nrm) * d * d * d / 6.0;
}

// r^2 + (e^{id}-1)^2 eta(tau)^2 = r^2 - 4 sin^2(d/2) e^{id} eta(tau)^2;
// vanishes to third order on the diagonal. Branch coefficients taken at t:
//   d^3: eta eta' - i eta^2
//   d^4: -(3/4)|x''|^2 - (2/3) x'.x''' + 2 i eta eta' + (7/12) eta^2.
cplx bracketB(const CurveFrame& ft, const CurveFrame& fu, const PairGeom& g) {
    if (std::fabs(g.d) >= TAYLOR_CUT) {
        double s = std::sin(0.5 * g.d);
        cplx eid(std::cos(g.d), std::sin(g.d));
        return g.r * g.r - 4.0 * s * s * eid * fu.eta * fu.eta;
    }
    double d = g.d;
    double eta = ft.eta, deta = ft.deta;
    cplx c3(eta * deta, -eta * eta);
    cplx c4(-0.75 * ft.d2.squaredNorm() - (2.0 / 3.0) * ft.d1.dot(ft.d3) +
                (7.0 / 12.0) * eta * eta,
            2.0 * eta * deta);
    return (c3 + c4 * d) * d * d * d;
}

// Smooth factor of the single-layer B-part, without the eta(tau) weight:
//   (i/4) J0(kr) - (1/2pi)(ln(k/2) + lnG + gamma) J0(kr) - (1/2pi) S0(kr)
// for small kr; assembled from H0 directly once kr is clear of the origin.
cplx b1_factor(double k, const PairGeom& g) {
    double kr = k * g.r;
    if (kr < 8.0) {
        CylSeriesParts p = bessel_log_companions(kr);
        double lg = std::log(0.5 * k) + g.lnG + EULER_GAMMA;
        return cplx(0.0, 0.25) * p.j0 - (lg * p.j0 + p.s0) / TWO_PI;
    }
    // direct: target/eta - A/eta * l4
    return cplx(0.0, 0.25) * hankel1_0(kr) +
           bessel_j0(kr) / (4.0 * PI) * g.l4;
}

cplx b1_diag(double k, const CurveFrame& f) {
    return cplx(0.0, 0.25) -
           (EULER_GAMMA + std::log(0.5 * k * f.eta)) / TWO_PI;
}

// Smooth bracket of the (adjoint) double-layer D-part, multiplying
// (z.nhat/r) eta(tau):
//   -(ik/4) J1(kr) + (k/2pi)(ln(k/2) + lnG + gamma) J1(kr) - (k/4pi) S1(kr).
cplx d3_factor(double k, const PairGeom& g) {
    double kr = k * g.r;
    if (kr < 8.0) {
        CylSeriesParts p = bessel_log_companions(kr);
        double lg = std::log(0.5 * k) + g.lnG + EULER_GAMMA;
        return cplx(0.0, -0.25 * k) * p.j1 +
               k * (2.0 * lg * p.j1 - p.s1) / (4.0 * PI);
    }
    // direct: -(ik/4) H1(kr) + 1/(2pi r) - (k/4pi) J1(kr) l4
    return cplx(0.0, -0.25 * k) * hankel1_1(kr) + 1.0 / (TWO_PI * g.r) -
           k * bessel_j1(kr) / (4.0 * PI) * g.l4;
}

} // namespace

cplx e1m1(double d) {
    double s = std::sin(0.5 * d);
    return {-2.0 * s * s, 2.0 * s * std::cos(0.5 * d)};
}

double log4sin2(double d) {
    double s = std::sin(0.5 * d);
    return std::log(4.0 * s * s);
}

SplitKernel split_V(double k) {
    SplitKernel sk;
    sk.j = 1;
    sk.A = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        return cplx(-bessel_j0(k * g.r) / (4.0 * PI) * fu.eta, 0.0);
    };
    sk.B = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        return b1_factor(k, g) * fu.eta;
    };
    sk.target = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        return cplx(0.0, 0.25) * hankel1_0(k * g.r) * fu.eta;
    };
    sk.A_diag = [](const CurveFrame& f) {
        return cplx(-f.eta / (4.0 * PI), 0.0);
    };
    sk.B_diag = [k](const CurveFrame& f) { return b1_diag(k, f) * f.eta; };
    return sk;
}

SplitKernel split_Vtn(double k) {
    SplitKernel sk;
    sk.j = 2;
    sk.A = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double c = cross2(ft.d1, fu.d1);
        return -bessel_j0(k * g.r) / (4.0 * PI) * c / (ft.eta * g.em);
    };
    sk.B = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double tn = cross2(ft.d1, fu.d1) / (ft.eta * fu.eta);
        return tn * b1_factor(k, g) * fu.eta;
    };
    sk.target = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double tn = cross2(ft.d1, fu.d1) / (ft.eta * fu.eta);
        return tn * cplx(0.0, 0.25) * hankel1_0(k * g.r) * fu.eta;
    };
    sk.A_diag = [](const CurveFrame& f) {
        return cplx(0.0, -f.kappa * f.eta * f.eta / (4.0 * PI));
    };
    sk.B_diag = [](const CurveFrame&) { return cplx(0.0, 0.0); };
    return sk;
}

SplitKernel split_KT(double k) {
    SplitKernel sk;
    sk.j = 3;
    sk.A = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double zn = z_dot_n_t(ft, fu, g);
        return k * k / (4.0 * PI) * j1_over_x(k * g.r) * zn * fu.eta /
               (g.em * g.em);
    };
    sk.B = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double zn = z_dot_n_t(ft, fu, g);
        return zn / g.r * fu.eta * d3_factor(k, g) -
               zn / (g.r * g.r) * fu.eta / TWO_PI;
    };
    sk.target = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double zn = g.z.dot(ft.nrm);
        return cplx(0.0, -0.25 * k) * hankel1_1(k * g.r) * zn / g.r * fu.eta;
    };
    sk.A_diag = [k](const CurveFrame& f) {
        return cplx(-k * k * f.kappa * f.eta * f.eta * f.eta / (16.0 * PI),
                    0.0);
    };
    sk.B_diag = [](const CurveFrame& f) {
        return cplx(-f.kappa * f.eta / (4.0 * PI), 0.0);
    };
    return sk;
}

SplitKernel split_K(double k) {
    SplitKernel sk;
    sk.j = 3;
    sk.A = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double zn = z_dot_n_tau(ft, fu, g);
        return -k * k / (4.0 * PI) * j1_over_x(k * g.r) * zn * fu.eta /
               (g.em * g.em);
    };
    sk.B = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double zn = z_dot_n_tau(ft, fu, g);
        return -(zn / g.r * fu.eta * d3_factor(k, g) -
                 zn / (g.r * g.r) * fu.eta / TWO_PI);
    };
    sk.target = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double zn = g.z.dot(fu.nrm);
        return cplx(0.0, 0.25 * k) * hankel1_1(k * g.r) * zn / g.r * fu.eta;
    };
    sk.A_diag = [k](const CurveFrame& f) {
        return cplx(-k * k * f.kappa * f.eta * f.eta * f.eta / (16.0 * PI),
                    0.0);
    };
    sk.B_diag = [](const CurveFrame& f) {
        return cplx(-f.kappa * f.eta / (4.0 * PI), 0.0);
    };
    return sk;
}

SplitKernel split_W_regular(double k) {
    SplitKernel sk;
    sk.j = 3;
    sk.A = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double tt = ft.tang.dot(fu.tang);
        double half_dt2 = 0.5 * (ft.tang - fu.tang).squaredNorm();  // 1 - tt
        return k * k * fu.eta / (4.0 * PI) *
               (-tt * bessel_j0m1(k * g.r) + half_dt2) / (g.em * g.em);
    };
    sk.B = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double tt = ft.tang.dot(fu.tang);
        return k * k * tt * b1_factor(k, g) * fu.eta;
    };
    sk.target = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        double tt = ft.tang.dot(fu.tang);
        return k * k * fu.eta *
               (tt * cplx(0.0, 0.25) * hankel1_0(k * g.r) + g.l4 / (4.0 * PI));
    };
    sk.A_diag = [k](const CurveFrame& f) {
        double e3 = f.eta * f.eta * f.eta;
        return cplx(-k * k * e3 *
                        (k * k / (16.0 * PI) +
                         f.kappa * f.kappa / (8.0 * PI)),
                    0.0);
    };
    sk.B_diag = [k](const CurveFrame& f) {
        return k * k * b1_diag(k, f) * f.eta;
    };
    return sk;
}

V4Split split_V4(double k) {
    V4Split vs;
    vs.lambda3 = [](int n) { return rho_hat(3, n); };
    SplitKernel sk;
    sk.j = 4;
    sk.A = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        cplx em3 = g.em * g.em * g.em;
        cplx bb = bracketB(ft, fu, g);
        return k * k / (16.0 * PI) * fu.eta * bb / em3 -
               fu.eta * bessel_j0rem(k * g.r) / (4.0 * PI) / em3;
    };
    sk.B = [k](const CurveFrame& ft, const CurveFrame& fu) {
        PairGeom g = pair_geom(ft, fu);
        return b1_factor(k, g) * fu.eta;
    };
    sk.target = [k](const CurveFrame& ft, const CurveFrame& fu) {
        // V kernel minus its two extracted log-convolution parts
        PairGeom g = pair_geom(ft, fu);
        cplx em2 = g.em * g.em;
        return cplx(0.0, 0.25) * hankel1_0(k * g.r) * fu.eta +
               g.l4 * fu.eta / (4.0 * PI) +
               k * k / (16.0 * PI) * em2 * g.l4 * fu.eta * fu.eta * fu.eta;
    };
    sk.A_diag = [k](const CurveFrame& f) {
        double e2 = f.eta * f.eta;
        return k * k / (16.0 * PI) * cplx(f.eta * e2, e2 * f.deta);
    };
    sk.B_diag = [k](const CurveFrame& f) { return b1_diag(k, f) * f.eta; };
    vs.kernel = sk;
    return vs;
}

CommutatorKernel commutator_kernel(std::function<double(double)> a,
                                   std::function<double(double)> da) {
    CommutatorKernel ck;
    ck.value = [a](double t, double tau) {
        double d = wrap_pi(t - tau);
        return (a(t) - a(tau)) / (a(t) * e1m1(d));
    };
    ck.diag = [a, da](double t) {
        return cplx(0.0, -da(t) / a(t));
    };
    return ck;
}

} // namespace elbie
