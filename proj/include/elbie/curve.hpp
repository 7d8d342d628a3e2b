#pragma once

#include "elbie/types.hpp"

#include <string>
#include <vector>

namespace elbie {

// Local data of a parametrized boundary point. Curves are closed,
// counterclockwise, 2 pi periodic; the normal Q tangent (Q = [[0,1],[-1,0]])
// points into the exterior.
struct CurveFrame {
    double t = 0.0;
    Vec2 x = Vec2::Zero();
    Vec2 d1 = Vec2::Zero(), d2 = Vec2::Zero(), d3 = Vec2::Zero();
    double eta = 0.0;       // |x'|
    double deta = 0.0;      // eta' = (x'.x'')/eta
    Vec2 tang = Vec2::Zero();
    Vec2 nrm = Vec2::Zero();
    double kappa = 0.0;     // cross(x', x'')/eta^3
};

enum class ParamKind { Analytic, ArcResampled };

// A closed curve held as the Fourier coefficients of its position on a base
// grid; derivatives are spectral and exact for trigonometric-polynomial
// shapes (all builtins). Arc-length-resampled curves use a dense base grid.
class Curve {
public:
    std::string name;
    double scale = 1.0;                  // factor applied to the base shape
    ParamKind kind = ParamKind::Analytic;
    int n_base = 0;

    VectorXc cx1, cx2;                   // position coefficients, FFT order

    CurveFrame frame(double t) const;
    std::vector<CurveFrame> frames_on_grid(int N) const;

    double length() const { return length_; }
    bool needs_rescale() const { return std::abs(length_ - TWO_PI) > 1e-6; }

    void finalize();                     // computes length, checks orientation

private:
    double length_ = 0.0;
};

// The three builtin geometries. The base shapes are scaled so that the total
// length is 2 pi (ellipse r = 0.64852..., kite r = 0.50096...,
// cavity r = 0.67992...).
Curve builtin_curve(const std::string& name);

// Circle of given radius centered at the origin (tests and custom configs).
Curve circle_curve(double radius);

// Curve from real cosine/sine coefficient lists per component:
//   x_i(t) = a0/2… stored plainly: x_i(t) = sum_m (cosc[m] cos(m t) + sinc[m] sin(m t)).
Curve fourier_curve(const std::string& name,
                    const std::vector<double>& x1_cos, const std::vector<double>& x1_sin,
                    const std::vector<double>& x2_cos, const std::vector<double>& x2_sin,
                    double scale = 1.0);

// Reparametrize by arc length: returns a curve with |x'| constant = L/(2 pi)
// to spectral accuracy, same trace and length. n_aux controls the auxiliary
// grid (node positions solved by Newton on the arc-length function).
Curve arclength_reparametrize(const Curve& c, int n_aux = 4096);

// JSON (de)serialization. Builtins round-trip by name + kind + n_aux; custom
// curves carry their coefficient lists.
std::string curve_to_json(const Curve& c);
Curve curve_from_json(const std::string& text);

} // namespace elbie
