#pragma once

#include "elbie/types.hpp"

namespace elbie {

// Cylinder functions of real positive argument, authored in-repo.
// Accuracy: relative error <= 1e-13 for 0 < z <= 1e4 (relative to the
// oscillation envelope near zeros). Series summed in compensated
// double-double arithmetic below z = 17; Hankel asymptotic expansions with
// double-double phase reduction above.
double bessel_j0(double z);
double bessel_j1(double z);
double bessel_y0(double z);
double bessel_y1(double z);

cplx hankel1_0(double z);            // J0 + i Y0
cplx hankel1_1(double z);            // J1 + i Y1
cplx hankel1_2(double z);            // 2 H1_1(z)/z - H1_0(z)

// Log-free companion sums of the ascending series (z < 17):
//   Y0 = (2/pi)(ln(z/2) + gamma) J0 + (2/pi) S0
//   Y1 = (2/pi)(ln(z/2) + gamma) J1 - 2/(pi z) - S1/pi.
// Used by the singularity-split kernels, where the log factor is extracted
// analytically.
struct CylSeriesParts {
    double j0, j1, s0, s1;
};
CylSeriesParts bessel_log_companions(double z);

// J0(z) - 1 and J0(z) - 1 + z^2/4 without cancellation for small z.
double bessel_j0m1(double z);
double bessel_j0rem(double z);

// Integer orders for the circle separation-of-variables oracle (tests).
// J_n by forward series (z < 17 required), Y_n by upward recurrence.
double bessel_jn(int n, double z);
double bessel_yn(int n, double z);
cplx hankel1_n(int n, double z);
double bessel_jn_prime(int n, double z);
cplx hankel1_n_prime(int n, double z);

} // namespace elbie
