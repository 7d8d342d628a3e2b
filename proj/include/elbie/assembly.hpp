#pragma once

#include "elbie/curve.hpp"
#include "elbie/kernels.hpp"
#include "elbie/params.hpp"
#include "elbie/spectral.hpp"

#include <functional>
#include <string>
#include <vector>

namespace elbie {

enum class WaveKind { P, S };

// sigma(n-1) - sigma(n): the coefficient family of the Hadamard correction
// matrix realizing S(a .) - (a .) S for the convolution operator of symbol
// sigma. For sigma = HD_{-2} this reproduces the (2n-1)/(n^2 (n-1)^2) family
// with exceptional indices at n = 0, 1.
FourierSymbol difference_family(FourierSymbol sigma);

// Product-integration matrix Delta_N of a weakly singular convolution kernel
// with Fourier coefficients delta_hat; exact on the grid band. (A circulant;
// identical to the multiplier matrix of the same symbol.)
MatrixXc quadrature_matrix(const FourierSymbol& delta_hat, int N);

// Dense Nystrom matrix of a split kernel on the given frames:
//   (-4 pi A_N) o Delta_N(rho_hat_j) + (2 pi / N) B_N
// with o the elementwise product and analytic diagonal limits.
MatrixXc discrete_singular_op(const SplitKernel& sk, const std::vector<CurveFrame>& fr);

// C_a = S - a^{-1} S a: commutator-kernel samples Hadamard the quadrature
// matrix of the difference family of S's symbol.
MatrixXc correction_matrix(const CommutatorKernel& ck, const FourierSymbol& ghat, int N);

// Named 2x2 multiplier blocks of the arc-length calculus.
//   H0        nilpotent block [[I, -H], [-H, -I]]
//   Hps       the invertible principal block the regularized system clusters at
//   AppMinus1 order >= -1 multiplier part of the combined operator
//   App2      its order -2 remainder multiplier part
//   Y         diag(y_p, y_s) complexified Dirichlet-to-Neumann symbols
//   R         the regularizer block
enum class BlockName { H0, Hps, AppMinus1, App2, Y, R };
CMat2 multiplier_block_symbol(BlockName name, int n, const ProblemParams& prm);

// 2N x 2N block circulant from a 2x2 symbol.
MatrixXc block_multiplier_matrix(const std::function<CMat2(int)>& sym, int N);

// Complexified DtN multiplier Y_k. Arc: pure multiplier matrix with symbol
// -|n| + ktilde^2/(2|n|), 1 at n = 0. General: eta^{-1} D H + (ktilde^2/2)
// HD_{-1} (eta .) + eta^{-1} J realized on the frames.
MatrixXc assemble_Y(const ProblemParams& prm, const std::vector<CurveFrame>& fr,
                    int N, bool arc, WaveKind which);

// Block regularizer R (2N x 2N). Arc: multiplier of the R block symbol.
// General: eta^{-1} H0 HD + (1/2) diag(ks~^2, -kp~^2) HD_{-1} (eta .)
// + diag(J, J) (eta .).
MatrixXc assemble_R(const ProblemParams& prm, const std::vector<CurveFrame>& fr,
                    int N, bool arc);

// Assembled 2N x 2N discrete system. Block order: p-density rows/columns
// first, then s. principal() exposes the multiplier part the spectrum
// clusters around (diagnostics); the correction part is M minus its
// realization.
struct SystemMatrix {
    MatrixXc M;
    int N = 0;
    ParamKind kind = ParamKind::Analytic;
    bool regularized = true;
    ProblemParams prm;
    std::vector<CurveFrame> frames;
    std::function<CMat2(int)> principal;
};

// Arc-length formulation: multiplier blocks composed symbol-wise, kernel
// block assembled from split kernels, right-multiplied by R when
// regularized. Requires an arc-length parametrization (eta constant).
SystemMatrix assemble_system_arclength(const ProblemParams& prm, const Curve& curve,
                                       int N, bool regularized = true);

// General-parametrization formulation: H_{p,s} plus commutator-corrected
// multiplier products and the split-kernel block, right-multiplied by the
// general R. Any smooth parametrization.
SystemMatrix assemble_system_general(const ProblemParams& prm, const Curve& curve,
                                     int N, bool regularized = true);

// Binary dump for regression diffing: 8-field header (magic "ELBIESYS",
// version u32, N u32, kind u32, omega f64, lambda f64, mu f64, eps_p f64)
// followed by 2N x 2N row-major complex128, little-endian.
void dump_system(const SystemMatrix& sm, const std::string& path);
SystemMatrix load_system(const std::string& path);

} // namespace elbie
