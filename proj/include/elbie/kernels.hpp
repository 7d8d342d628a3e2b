#pragma once

#include <functional>

#include "elbie/curve.hpp"
#include "elbie/spectral.hpp"
#include "elbie/types.hpp"

namespace elbie {

// Kussmaul-Martensen singularity split of a weakly singular boundary kernel:
//
//   kernel(t, tau) = A(t, tau) (e^{i(t-tau)} - 1)^{j-1} log(4 sin^2((t-tau)/2))
//                  + B(t, tau)
//
// with A, B smooth and 2pi-biperiodic. The curve speed eta(tau) of the
// parameter-space integral is folded into the kernel, so assembled matrices
// act on density samples directly. A and B evaluate off the diagonal by
// closed forms (switching to short Taylor expansions inside |t-tau| < 3e-4,
// where the closed forms lose digits) and expose their diagonal limits
// separately.
struct SplitKernel {
    int j = 1;  // order of the (e^{i dt} - 1)^{j-1} prefactor

    std::function<cplx(const CurveFrame&, const CurveFrame&)> A, B;
    // full kernel value A * (e1m1)^{j-1} * log(4 sin^2) + B, usable off-diagonal
    std::function<cplx(const CurveFrame&, const CurveFrame&)> target;
    std::function<cplx(const CurveFrame&)> A_diag, B_diag;
};

// Single-layer kernel (i/4) H1_0(k r) eta(tau); j = 1.
SplitKernel split_V(double k);

// Tangential-normal single-layer kernel (that(t).nhat(tau)) (i/4) H1_0(k r)
// eta(tau); j = 2. Smooth diagonal, A_diag = -(i/4pi) kappa eta^2.
SplitKernel split_Vtn(double k);

// Adjoint double-layer kernel -(ik/4) H1_1(k r) (z.nhat(t)/r) eta(tau),
// z = x(t) - x(tau); j = 3.
SplitKernel split_KT(double k);

// Double-layer kernel (ik/4) H1_1(k r) (z.nhat(tau)/r) eta(tau); j = 3.
SplitKernel split_K(double k);

// Regular part of the hypersingular operator beyond its principal Maue
// terms: the kernel of k^2 [T V T - (1/2) HD_{-1} (eta .)] with T the
// tangential-rotation sign flip; j = 3.
// A_diag = -k^2 eta^3 (k^2/(16 pi) + kappa^2/(8 pi)).
SplitKernel split_W_regular(double k);

// Smoothing remainder of the single-layer operator:
//   V = (1/2) HD_{-1} (eta .) + (k^2/4) Lambda_3 (eta^3 .) + V4,
// returned as the Fourier multiplier symbol of the middle term's convolution
// weight (to be composed with multiplication by eta^3) plus the j = 4 split
// kernel of V4.
struct V4Split {
    FourierSymbol lambda3;  // symbol of Lambda_3: rho_hat_3(n)
    SplitKernel kernel;     // j = 4
};
V4Split split_V4(double k);

// Commutator kernel r_a(t, tau) = (a(t) - a(tau)) / (a(t) (e^{i(t-tau)} - 1))
// entering S - a^{-1} S a for a convolution operator S; the Hadamard factor
// against the band-limited symbol-difference matrix. Diagonal -i a'(t)/a(t).
// a and a' are supplied as callables of the parameter.
struct CommutatorKernel {
    std::function<cplx(double, double)> value;  // (t, tau), off-diagonal
    std::function<cplx(double)> diag;
};
CommutatorKernel commutator_kernel(std::function<double(double)> a,
                                   std::function<double(double)> da);

// exp(i d) - 1 = 2 i sin(d/2) exp(i d/2), exact magnitude for small d.
cplx e1m1(double d);

// log(4 sin^2(d/2)) for d != 0 (any real d, periodic).
double log4sin2(double d);

} // namespace elbie
