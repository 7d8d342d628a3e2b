#include "elbie/bessel.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace elbie {
namespace {

// Minimal double-double arithmetic: an unevaluated sum hi + lo with
// |lo| <= ulp(hi)/2. Enough for compensated series summation; no special
// handling of inf/nan is needed in the argument ranges used here.
struct dd {
    double hi, lo;
};

inline dd two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline dd quick_two_sum(double a, double b) {  // requires |a| >= |b|
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd dd_add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd dd_add(dd a, double b) {
    dd s = two_sum(a.hi, b);
    return quick_two_sum(s.hi, s.lo + a.lo);
}

inline dd dd_mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd dd_mul(dd a, double b) {
    dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd dd_div(dd a, double b) {
    double q1 = a.hi / b;
    dd r = dd_add(a, two_prod(-q1, b));
    double q2 = r.hi / b;
    r = dd_add(r, two_prod(-q2, b));
    double q3 = r.hi / b;
    dd q = quick_two_sum(q1, q2);
    return dd_add(q, q3);
}

inline dd dd_neg(dd a) { return {-a.hi, -a.lo}; }

constexpr double SERIES_ASYMPT_CROSSOVER = 17.0;

// 2 pi, pi/2, pi/4 as double-double pairs for phase reduction.
constexpr double TWO_PI_HI = 6.283185307179586476925286766559;
constexpr double TWO_PI_LO = 2.4492935982947063545922304459e-16;
constexpr double PI_OVER_2_HI = 1.5707963267948966;
constexpr double PI_OVER_2_LO = 6.123233995736766e-17;

// Ascending-series evaluation of J0, J1 and the companion log-free sums
//   S0(z) = sum_{m>=1} (-1)^{m+1} h_m (z^2/4)^m / (m!)^2
//   S1(z) = sum_{m>=0} (-1)^m (h_m + h_{m+1}) (z/2)^{2m+1} / (m! (m+1)!)
// with h_m the m-th harmonic number, from which
//   Y0 = (2/pi)[(ln(z/2) + gamma) J0 + S0]
//   Y1 = (2/pi) (ln(z/2) + gamma) J1 - 2/(pi z) - S1/pi.
// The alternating series cancel heavily for z near the crossover (terms up
// to ~1e5 at z = 17 for a result of order 1), hence double-double sums.
struct SeriesResult {
    double j0, j1, s0, s1;
};

SeriesResult cyl_series(double z) {
    double q = 0.25 * z * z;
    dd term0 = {1.0, 0.0};           // (z^2/4)^m / (m!)^2, m = 0
    dd term1 = {1.0, 0.0};           // (z^2/4)^m / (m! (m+1)!) * (m+1)-scaling handled below
    dd j0 = {1.0, 0.0}, s0 = {0.0, 0.0};
    dd j1 = {1.0, 0.0}, s1 = {1.0, 0.0};  // s1 accumulates sum (h_m + h_{m+1}) t1_m  (h_0 + h_1 = 1)
    dd h = {0.0, 0.0};               // harmonic number h_m
    int sign = -1;
    for (int m = 1; m < 200; ++m) {
        term0 = dd_div(dd_mul(term0, q), double(m) * double(m));
        term1 = dd_div(dd_mul(term1, q), double(m) * double(m + 1));
        h = dd_add(h, dd_div(dd{1.0, 0.0}, double(m)));
        dd h_next = dd_add(h, dd_div(dd{1.0, 0.0}, double(m + 1)));
        dd j0t = (sign > 0) ? term0 : dd_neg(term0);
        dd j1t = (sign > 0) ? term1 : dd_neg(term1);
        j0 = dd_add(j0, j0t);
        j1 = dd_add(j1, j1t);
        s0 = dd_add(s0, (sign > 0) ? dd_neg(dd_mul(term0, h)) : dd_mul(term0, h));
        s1 = dd_add(s1, dd_mul(j1t, dd_add(h, h_next)));
        sign = -sign;
        if (term0.hi < 1e-34 * (std::fabs(j0.hi) + 1.0)) break;
    }
    double half_z = 0.5 * z;
    return {j0.hi + j0.lo, half_z * (j1.hi + j1.lo), s0.hi + s0.lo,
            half_z * (s1.hi + s1.lo)};
}

// Hankel asymptotic modulus/phase sums P_nu, Q_nu:
//   J_nu(z) = sqrt(2/(pi z)) [P cos w - Q sin w],  w = z - nu pi/2 - pi/4
//   Y_nu(z) = sqrt(2/(pi z)) [P sin w + Q cos w]
// Terms a_k(nu) = prod_{j=1..k}(4 nu^2 - (2j-1)^2) / (k! 8^k), summed to the
// smallest term. At z >= 17 the smallest term is below 1e-16.
struct PQ {
    double p, q;
};

PQ asymptotic_pq(double nu, double z) {
    double mu4 = 4.0 * nu * nu;
    dd p = {1.0, 0.0}, q = {0.0, 0.0};
    double ak = 1.0;
    double prev = 1e300;
    for (int k = 0; k < 60; ++k) {
        double odd = 2.0 * k + 1.0;
        ak *= (mu4 - odd * odd) / (8.0 * (k + 1.0) * z);
        double mag = std::fabs(ak);
        if (mag >= prev) break;   // divergent tail reached
        prev = mag;
        // ak now holds a_{k+1}/z^{k+1}; odd-index terms go to Q, even to P
        if (k % 4 == 0) q = dd_add(q, ak);
        else if (k % 4 == 1) p = dd_add(p, -ak);
        else if (k % 4 == 2) q = dd_add(q, -ak);
        else p = dd_add(p, ak);
        if (mag < 1e-18) break;
    }
    return {p.hi + p.lo, q.hi + q.lo};
}

// Reduced phase w = z - nu pi/2 - pi/4 computed in double-double so that
// cos/sin keep full relative accuracy up to z = 1e4.
double reduced_phase(double nu, double z) {
    double n = std::floor(z / TWO_PI_HI);
    dd prod = two_prod(n, TWO_PI_HI);
    dd r = dd_add(two_sum(z, -prod.hi), -prod.lo);
    r = dd_add(r, -n * TWO_PI_LO);
    double m = 2.0 * nu + 1.0;   // subtract (2 nu + 1) pi/4
    r = dd_add(r, two_prod(-0.5 * m, PI_OVER_2_HI));
    r = dd_add(r, -0.5 * m * PI_OVER_2_LO);
    return r.hi + r.lo;
}

struct JY {
    double j, y;
};

JY asymptotic_jy(double nu, double z) {
    PQ pq = asymptotic_pq(nu, z);
    double w = reduced_phase(nu, z);
    double c = std::cos(w), s = std::sin(w);
    double amp = std::sqrt(2.0 / (PI * z));
    return {amp * (pq.p * c - pq.q * s), amp * (pq.p * s + pq.q * c)};
}

void require_positive(double z) {
    if (!(z > 0.0))
        throw NumericalError("cylinder function argument must be positive");
}

} // namespace

double bessel_j0(double z) {
    z = std::fabs(z);
    if (z < SERIES_ASYMPT_CROSSOVER) return cyl_series(z).j0;
    return asymptotic_jy(0.0, z).j;
}

double bessel_j1(double z) {
    double s = (z < 0.0) ? -1.0 : 1.0;
    z = std::fabs(z);
    if (z < SERIES_ASYMPT_CROSSOVER) return s * cyl_series(z).j1;
    return s * asymptotic_jy(1.0, z).j;
}

double bessel_y0(double z) {
    require_positive(z);
    if (z < SERIES_ASYMPT_CROSSOVER) {
        SeriesResult r = cyl_series(z);
        double lg = std::log(0.5 * z) + EULER_GAMMA;
        return (2.0 / PI) * (lg * r.j0 + r.s0);
    }
    return asymptotic_jy(0.0, z).y;
}

double bessel_y1(double z) {
    require_positive(z);
    if (z < SERIES_ASYMPT_CROSSOVER) {
        SeriesResult r = cyl_series(z);
        double lg = std::log(0.5 * z) + EULER_GAMMA;
        return (2.0 / PI) * lg * r.j1 - 2.0 / (PI * z) - r.s1 / PI;
    }
    return asymptotic_jy(1.0, z).y;
}

cplx hankel1_0(double z) { return {bessel_j0(z), bessel_y0(z)}; }
cplx hankel1_1(double z) { return {bessel_j1(z), bessel_y1(z)}; }

cplx hankel1_2(double z) {
    require_positive(z);
    return 2.0 * hankel1_1(z) / z - hankel1_0(z);
}

double bessel_jn(int n, double z) {
    n = std::abs(n);
    if (n == 0) return bessel_j0(z);
    if (n == 1) return bessel_j1(z);
    if (z >= SERIES_ASYMPT_CROSSOVER)
        throw NumericalError("bessel_jn: series path requires z < 17");
    // forward series in double-double; max term is modest for n >= 2, z < 17
    double q = 0.25 * z * z;
    dd term = {1.0, 0.0};
    for (int m = 1; m <= n; ++m) term = dd_div(dd_mul(term, 0.5 * z), double(m));
    dd sum = term;
    int sign = -1;
    for (int m = 1; m < 120; ++m) {
        term = dd_div(dd_mul(term, q), double(m) * double(m + n));
        sum = dd_add(sum, (sign > 0) ? term : dd_neg(term));
        sign = -sign;
        if (term.hi < 1e-32 * (std::fabs(sum.hi) + 1e-300)) break;
    }
    return sum.hi + sum.lo;
}

double bessel_yn(int n, double z) {
    n = std::abs(n);
    if (n == 0) return bessel_y0(z);
    if (n == 1) return bessel_y1(z);
    // upward recurrence, stable for Y
    double ym = bessel_y0(z), y = bessel_y1(z);
    for (int m = 1; m < n; ++m) {
        double yn = (2.0 * m / z) * y - ym;
        ym = y;
        y = yn;
    }
    return y;
}

cplx hankel1_n(int n, double z) { return {bessel_jn(n, z), bessel_yn(n, z)}; }

double bessel_jn_prime(int n, double z) {
    n = std::abs(n);
    if (n == 0) return -bessel_j1(z);
    return 0.5 * (bessel_jn(n - 1, z) - bessel_jn(n + 1, z));
}

cplx hankel1_n_prime(int n, double z) {
    n = std::abs(n);
    if (n == 0) return -hankel1_1(z);
    return 0.5 * (hankel1_n(n - 1, z) - hankel1_n(n + 1, z));
}

CylSeriesParts bessel_log_companions(double z) {
    if (!(z >= 0.0) || z >= SERIES_ASYMPT_CROSSOVER)
        throw std::domain_error("bessel_log_companions: need 0 <= z < 17");
    SeriesResult r = cyl_series(z);
    return {r.j0, r.j1, r.s0, r.s1};
}

double bessel_j0m1(double z) {
    if (z >= 0.5) return bessel_j0(z) - 1.0;
    // ascending series without the leading 1
    double q = 0.25 * z * z;
    double term = -q, sum = 0.0;
    for (int m = 1; m < 30; ++m) {
        sum += term;
        term *= -q / (double(m + 1) * double(m + 1));
        if (std::fabs(term) < 1e-20 * (std::fabs(sum) + 1e-300)) break;
    }
    return sum;
}

double bessel_j0rem(double z) {
    if (z >= 0.5) return bessel_j0(z) - 1.0 + 0.25 * z * z;
    // series from the m = 2 term onward
    double q = 0.25 * z * z;
    double term = q * q / 4.0, sum = 0.0;
    for (int m = 2; m < 30; ++m) {
        sum += term;
        term *= -q / (double(m + 1) * double(m + 1));
        if (std::fabs(term) < 1e-20 * (std::fabs(sum) + 1e-300)) break;
    }
    return sum;
}

} // namespace elbie
