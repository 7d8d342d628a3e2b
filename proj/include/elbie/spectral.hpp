#pragma once

#include "elbie/types.hpp"
#include <functional>

namespace elbie {

// A Fourier multiplier symbol n -> sigma(n) acting on the trigonometric
// band -N/2 <= n < N/2 (the grid mode n = -N/2 carries the j = N/2 FFT bin
// wholly).
using FourierSymbol = std::function<cplx(int)>;

// Equispaced nodes t_j = 2 pi j / N.
VectorXr grid_nodes(int N);

// Discrete Fourier analysis/synthesis with the convention
//   coeffs[j] = (1/N) sum_m values[m] exp(-i n(j) t_m),
//   values[m] = sum_j coeffs[j] exp(+i n(j) t_m),
// coefficients stored in FFT bin order; n(j) = j for j < N/2, else j - N.
VectorXc fourier_coeffs(const VectorXc& values);
VectorXc fourier_values(const VectorXc& coeffs);
int fft_bin_mode(int j, int N);

// Diagonal action of a symbol on grid values (exact on the band).
VectorXc apply_multiplier(const FourierSymbol& sym, const VectorXc& values);

// Dense N x N matrix realizing apply_multiplier: a circulant with
// M e_n = sigma(n) e_n exactly for every band mode. This is also the
// quadrature matrix of a weakly singular convolution kernel whose Fourier
// coefficients are sigma.
MatrixXc multiplier_matrix(const FourierSymbol& sym, int N);

// Standard symbols.
cplx sym_D(int r, int n);       // (i n)^r, zero at n = 0 for r != 0
cplx sym_H(int n);              // i sign(n), value i at n = 0
cplx sym_J(int n);              // mean projector: 1 at n = 0
cplx sym_HD(int n);             // -|n|
cplx sym_HDm1(int n);           // 1/|n|, 0 at n = 0
cplx sym_HDm2(int n);           // -i sign(n)/n^2, 0 at n = 0
cplx sym_HDm3(int n);           // -1/|n|^3, 0 at n = 0

// Fourier coefficients rho_hat_r(n) of the weakly singular kernels
//   rho_r(tau) = -(e1(tau) - 1)^{r-1} log(2 |sin(tau/2)|)
// under the (1/(2 pi)) integral convention; closed forms, r in 1..4.
double rho_hat(int r, int n);

// lambda_c(n) = rho_hat_3(n) + 1/|n|^3 sign-adjusted remainder of the
// (Lambda_3 + H D_-3) grouping: rho_hat_3(n) - 1/|n|^3 for n != 0 (decays
// like n^-4), -3/4 at n = 0.
cplx sym_lambda3c(int n);

// Trigonometric interpolant of grid values; eval is O(N) per point.
struct TrigPoly {
    int N = 0;
    VectorXc coeffs;   // FFT bin order
    cplx eval(double t) const;
};
TrigPoly interpolate(const VectorXc& values);

// Discrete Sobolev norm (sum over band of (1 + n^2)^s |phi_hat(n)|^2)^(1/2).
double sobolev_norm(const VectorXc& values, double s);

} // namespace elbie
