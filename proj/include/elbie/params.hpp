#pragma once

#include "elbie/types.hpp"
#include <cmath>

namespace elbie {

// Physical and regularization parameters of the exterior Navier problem.
// Wavenumbers: kp^2 = omega^2/(lambda + 2 mu), ks^2 = omega^2/mu.
// Complexified wavenumbers ktilde = k + i*eps enter only the regularizing
// operators (Y, R), never the potentials.
struct ProblemParams {
    double omega = 10.0;
    double lambda = 2.0;
    double mu = 3.0;
    double kp = 0.0;
    double ks = 0.0;
    double eps_p = 0.0;   // default 0.4 * kp^(1/3)
    double eps_s = 0.0;   // default 0.4 * ks^(1/3)

    cplx kp_tilde() const { return {kp, eps_p}; }
    cplx ks_tilde() const { return {ks, eps_s}; }
};

inline ProblemParams make_params(double omega, double lambda, double mu,
                                 double eps_override = -1.0) {
    if (omega <= 0.0) throw ConfigError("omega must be positive");
    if (mu <= 0.0 || lambda + 2.0 * mu <= 0.0)
        throw ConfigError("need mu > 0 and lambda + 2 mu > 0");
    ProblemParams p;
    p.omega = omega;
    p.lambda = lambda;
    p.mu = mu;
    p.kp = omega / std::sqrt(lambda + 2.0 * mu);
    p.ks = omega / std::sqrt(mu);
    if (eps_override >= 0.0) {
        p.eps_p = eps_override;
        p.eps_s = eps_override;
    } else {
        p.eps_p = 0.4 * std::cbrt(p.kp);
        p.eps_s = 0.4 * std::cbrt(p.ks);
    }
    return p;
}

// Scale covariance: a geometry of length L shrunk to length 2 pi is
// equivalent to the original problem with wavenumbers multiplied by
// L/(2 pi), since k|x - y| is invariant under the joint rescaling.
inline ProblemParams rescale_wavenumbers(const ProblemParams& p, double length) {
    double s = length / TWO_PI;
    ProblemParams q = p;
    q.omega *= s;
    q.kp *= s;
    q.ks *= s;
    q.eps_p *= s;   // scales with k so the regularized symbols rescale exactly
    q.eps_s *= s;
    return q;
}

} // namespace elbie
