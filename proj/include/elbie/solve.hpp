#pragma once

#include "elbie/types.hpp"

#include <vector>

namespace elbie {

enum class SolveMethod { Direct, Gmres };

// Solution of the 2N x 2N block system, split into the two density blocks.
struct SolveReport {
    VectorXc lambda_p;
    VectorXc lambda_s;
    SolveMethod method = SolveMethod::Direct;
    int iterations = 0;     // matrix-vector products (0 for direct)
    double residual = 0.0;  // achieved |M x - b| / |b|
    double wall_ms = 0.0;
};

// LU with partial pivoting. A pivot below 1e-14 times the largest entry of M
// raises NumericalError.
SolveReport solve_direct(const MatrixXc& M, const VectorXc& rhs);

// Full (unrestarted) GMRES, modified Gram-Schmidt with one reorthogonalization
// pass, Givens-updated residual, x0 = 0. max_iter <= 0 selects the dimension
// of the system. Raises NumericalError carrying the best residual when
// max_iter is exhausted.
SolveReport solve_gmres(const MatrixXc& M, const VectorXc& rhs,
                        double tol = 1e-9, int max_iter = 0);

// All eigenvalues of M (dense solve, unordered). Requires dimension <= 4096.
std::vector<cplx> spectrum(const MatrixXc& M);

// 2-norm condition number via singular values. Requires dimension <= 4096.
double condition_number(const MatrixXc& M);

} // namespace elbie
