#pragma once

#include "elbie/curve.hpp"
#include "elbie/params.hpp"
#include "elbie/solve.hpp"
#include "elbie/types.hpp"

#include <string>
#include <vector>

namespace elbie {

// Interior point source driving the manufactured solution: the exact
// exterior field is -Phi(. - x0) pol, and the Dirichlet data its trace.
struct NavierPointSource {
    Vec2 x0{0.1, 0.0};
    Vec2 polarization{1.0, 1.0};
    ProblemParams prm;
};

// Fundamental 2x2 matrix of the time-harmonic Navier operator,
//   Phi(x) = mu^{-1} phi0(ks r) I + omega^{-2} Hess(phi0(ks r) - phi0(kp r)),
// phi0(z) = (i/4) H1_0(z); the Hessian is analytic through H1_1 and H1_2.
// Symmetric and even in x. |x| < 1e-12 raises NumericalError.
CMat2 fundamental_matrix(const ProblemParams& prm, const Vec2& x);

// -Phi(x - x0) pol, the manufactured exterior solution at x.
CVec2 exact_exterior_field(const NavierPointSource& src, const Vec2& x);

// Winding-number interior test and distance to the curve trace, both from a
// dense resampling of the trace (adequate away from the near-field band).
bool point_inside(const Curve& curve, const Vec2& x);
double distance_to_curve(const Curve& curve, const Vec2& x);

// Dirichlet data in the normal/tangential frame on the N-point grid:
//   f_n(t_m) = -u_inc(x(t_m)) . n,  f_t(t_m) = -u_inc(x(t_m)) . t,
// u_inc = Phi(. - x0) pol. stacked() = (f_n; f_t) is the system right-hand
// side. The source must lie inside the curve (ConfigError otherwise).
struct BoundaryData {
    VectorXc f_n, f_t;
    VectorXc stacked() const;
};
BoundaryData boundary_data(const Curve& curve, const NavierPointSource& src, int N);

// phi = R lambda: grid densities of the potential ansatz from the solved
// unknowns. R is the assembled 2N x 2N regularizer (identity for the
// unregularized system, whose unknowns are the densities themselves).
struct Densities {
    VectorXc phi_p, phi_s;
};
Densities recover_densities(const SolveReport& rep, const MatrixXc& R);

// Value and gradient of the combined scalar Helmholtz potential
//   u = DL_k[phi] - SL_k[psi]
// at one point by the N-point rectangular rule (psi holds the grid values of
// Y_k phi). Gradients are analytic: grad SL = -(ik/4) H1_1(k|z|) z/|z| and
// the H1_2-based double layer gradient. Exposed for the PDE residual and
// finite-difference consistency checks.
struct PotentialValue {
    cplx value;
    CVec2 grad;
};
PotentialValue helmholtz_potential(const std::vector<CurveFrame>& fr, double k,
                                   const VectorXc& phi, const VectorXc& psi,
                                   const Vec2& x);

// Exterior field with its Helmholtz parts: u = grad u_p + vcurl u_s.
struct ExteriorField {
    std::vector<Vec2> points;
    std::vector<CVec2> u;
    std::vector<CVec2> grad_part;   // grad u_p
    std::vector<CVec2> curl_part;   // vcurl u_s = (d2 u_s, -d1 u_s)
};

// u_k = DL_k[phi_k] - SL_k[Y_k phi_k], k in {p, s}, evaluated at the given
// points; Y_p, Y_s are the assembled N x N Dirichlet-to-Neumann blocks.
// Points must be exterior (ConfigError: domain) and at distance >= 0.1 from
// the curve (ConfigError: near-field band, no nearly-singular quadrature).
ExteriorField evaluate_field(const Curve& curve, const ProblemParams& prm,
                             const VectorXc& phi_p, const VectorXc& phi_s,
                             const MatrixXc& Y_p, const MatrixXc& Y_s,
                             const std::vector<Vec2>& points);

// The 1024 points uniformly distributed on the circle of radius 4, the
// standard far-field error probe set.
std::vector<Vec2> standard_probes();

// max over the field's points of |u - (-Phi(. - x0) pol)|_2.
double farfield_error(const ExteriorField& field, const NavierPointSource& src);

// CSV export: header x,y,Re u1,Im u1,Re u2,Im u2, one row per point,
// 17 significant digits.
void write_field_csv(const ExteriorField& field, const std::string& path);

} // namespace elbie
