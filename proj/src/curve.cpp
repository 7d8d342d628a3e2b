#include "elbie/curve.hpp"
#include "elbie/spectral.hpp"

#include <nlohmann/json.hpp>

#include <cmath>

namespace elbie {
namespace {

using nlohmann::json;

// Fold base-grid coefficients of f^(r) onto an N-point grid; folding the
// derivative coefficients equals sampling the true derivative at the N nodes,
// for any even N.
VectorXc fold_derivative(const VectorXc& coeffs, int r, int N) {
    const int NB = int(coeffs.size());
    VectorXc folded = VectorXc::Zero(N);
    for (int j = 0; j < NB; ++j) {
        int n = fft_bin_mode(j, NB);
        cplx c = coeffs[j] * sym_D(r, n);
        int bin = ((n % N) + N) % N;
        folded[bin] += c;
    }
    return folded;
}

void fill_frame_geometry(CurveFrame& f) {
    f.eta = f.d1.norm();
    if (f.eta <= 0.0) throw NumericalError("curve has a vanishing-speed point");
    f.tang = f.d1 / f.eta;
    f.nrm = Vec2(f.tang[1], -f.tang[0]);   // Q tangent, outward for ccw curves
    double cross = f.d1[0] * f.d2[1] - f.d1[1] * f.d2[0];
    f.kappa = cross / (f.eta * f.eta * f.eta);
    f.deta = f.d1.dot(f.d2) / f.eta;
}

VectorXc coeffs_from_samples(const std::vector<double>& v) {
    VectorXc out(v.size());
    for (size_t j = 0; j < v.size(); ++j) out[int(j)] = v[j];
    return fourier_coeffs(out);
}

} // namespace

CurveFrame Curve::frame(double t) const {
    CurveFrame f;
    f.t = t;
    cplx x1 = 0, x2 = 0, d11 = 0, d12 = 0, d21 = 0, d22 = 0, d31 = 0, d32 = 0;
    for (int j = 0; j < n_base; ++j) {
        int n = fft_bin_mode(j, n_base);
        cplx e = std::exp(cplx(0.0, n * t));
        cplx in(0.0, double(n));
        cplx a = cx1[j] * e, b = cx2[j] * e;
        x1 += a;       x2 += b;
        d11 += in * a; d12 += in * b;
        d21 += in * in * a; d22 += in * in * b;
        d31 += in * in * in * a; d32 += in * in * in * b;
    }
    f.x = Vec2(x1.real(), x2.real());
    f.d1 = Vec2(d11.real(), d12.real());
    f.d2 = Vec2(d21.real(), d22.real());
    f.d3 = Vec2(d31.real(), d32.real());
    fill_frame_geometry(f);
    return f;
}

std::vector<CurveFrame> Curve::frames_on_grid(int N) const {
    VectorXr t = grid_nodes(N);
    VectorXc x1 = fourier_values(fold_derivative(cx1, 0, N));
    VectorXc x2 = fourier_values(fold_derivative(cx2, 0, N));
    VectorXc d11 = fourier_values(fold_derivative(cx1, 1, N));
    VectorXc d12 = fourier_values(fold_derivative(cx2, 1, N));
    VectorXc d21 = fourier_values(fold_derivative(cx1, 2, N));
    VectorXc d22 = fourier_values(fold_derivative(cx2, 2, N));
    VectorXc d31 = fourier_values(fold_derivative(cx1, 3, N));
    VectorXc d32 = fourier_values(fold_derivative(cx2, 3, N));
    std::vector<CurveFrame> out(N);
    for (int j = 0; j < N; ++j) {
        CurveFrame& f = out[j];
        f.t = t[j];
        f.x = Vec2(x1[j].real(), x2[j].real());
        f.d1 = Vec2(d11[j].real(), d12[j].real());
        f.d2 = Vec2(d21[j].real(), d22[j].real());
        f.d3 = Vec2(d31[j].real(), d32[j].real());
        fill_frame_geometry(f);
    }
    return out;
}

void Curve::finalize() {
    const int ND = std::max(n_base, 2048);
    auto frames = frames_on_grid(ND);
    double len = 0.0, area2 = 0.0;
    for (const auto& f : frames) {
        len += f.eta;
        area2 += f.x[0] * f.d1[1] - f.x[1] * f.d1[0];
    }
    length_ = len * TWO_PI / ND;
    if (area2 <= 0.0)
        throw ConfigError("curve must be counterclockwise (outward normal = Q tangent)");
}

Curve builtin_curve(const std::string& name) {
    const int NB = 32;
    std::vector<double> x1(NB), x2(NB);
    for (int j = 0; j < NB; ++j) {
        double t = TWO_PI * j / NB;
        if (name == "ellipse") {
            x1[j] = std::cos(t);
            x2[j] = 2.0 * std::sin(t);
        } else if (name == "kite") {
            x1[j] = std::cos(t) + std::cos(2.0 * t);
            x2[j] = 2.0 * std::sin(t);
        } else if (name == "cavity") {
            x1[j] = 0.8 * std::cos(2.0 * t) + 0.4 * std::cos(t);
            x2[j] = (7.0 / 12.0) * std::sin(t) + (17.0 / 48.0) * std::sin(2.0 * t) +
                    (3.0 / 8.0) * std::sin(3.0 * t) - (1.0 / 24.0) * std::sin(4.0 * t);
        } else {
            throw ConfigError("unknown builtin geometry: " + name +
                              " (valid: ellipse, kite, cavity)");
        }
    }
    Curve c;
    c.name = name;
    c.kind = ParamKind::Analytic;
    c.n_base = NB;
    c.cx1 = coeffs_from_samples(x1);
    c.cx2 = coeffs_from_samples(x2);
    c.finalize();
    // scale so the total length is exactly 2 pi (length is linear in scale)
    double r = TWO_PI / c.length();
    c.scale = r;
    c.cx1 *= r;
    c.cx2 *= r;
    c.finalize();
    return c;
}

Curve circle_curve(double radius) {
    return fourier_curve("circle", {0.0, radius}, {}, {}, {0.0, radius}, 1.0);
}

Curve fourier_curve(const std::string& name,
                    const std::vector<double>& x1_cos, const std::vector<double>& x1_sin,
                    const std::vector<double>& x2_cos, const std::vector<double>& x2_sin,
                    double scale) {
    size_t degree = std::max(std::max(x1_cos.size(), x1_sin.size()),
                             std::max(x2_cos.size(), x2_sin.size()));
    if (degree == 0) throw ConfigError("fourier_curve: empty coefficient lists");
    int NB = 16;
    while (NB < int(2 * degree + 2)) NB *= 2;
    Curve c;
    c.name = name;
    c.kind = ParamKind::Analytic;
    c.n_base = NB;
    c.scale = scale;
    c.cx1 = VectorXc::Zero(NB);
    c.cx2 = VectorXc::Zero(NB);
    auto place = [&](VectorXc& dst, const std::vector<double>& cosc, const std::vector<double>& sinc) {
        for (size_t m = 0; m < cosc.size(); ++m) {
            if (m == 0) dst[0] += cosc[0];
            else {
                dst[int(m)] += 0.5 * cosc[m];
                dst[NB - int(m)] += 0.5 * cosc[m];
            }
        }
        for (size_t m = 1; m < sinc.size(); ++m) {
            dst[int(m)] += cplx(0.0, -0.5 * sinc[m]);
            dst[NB - int(m)] += cplx(0.0, 0.5 * sinc[m]);
        }
    };
    place(c.cx1, x1_cos, x1_sin);
    place(c.cx2, x2_cos, x2_sin);
    c.cx1 *= scale;
    c.cx2 *= scale;
    c.finalize();
    return c;
}

Curve arclength_reparametrize(const Curve& src, int n_aux) {
    if (n_aux < 16 || n_aux % 2 != 0) throw ConfigError("n_aux must be even and >= 16");
    const double L = src.length();
    // Fourier coefficients of the speed on a dense grid, truncated to the
    // modes above roundoff; s(t) = eta0 t + sum_{n != 0} (etahat_n/(i n)) (e^{i n t} - 1).
    const int ND = std::max(src.n_base, 4096);
    auto dense = src.frames_on_grid(ND);
    VectorXc eta_vals(ND);
    for (int j = 0; j < ND; ++j) eta_vals[j] = dense[j].eta;
    VectorXc eta_hat = fourier_coeffs(eta_vals);
    double cutoff = 1e-17 * eta_hat.cwiseAbs().maxCoeff();
    std::vector<std::pair<int, cplx>> modes;   // nonzero modes, n != 0
    for (int j = 0; j < ND; ++j) {
        int n = fft_bin_mode(j, ND);
        if (n != 0 && std::abs(eta_hat[j]) > cutoff) modes.emplace_back(n, eta_hat[j]);
    }
    const double eta0 = eta_hat[0].real();
    auto arclen = [&](double t) {
        cplx acc = 0.0;
        for (auto& [n, c] : modes) acc += c / cplx(0.0, double(n)) * (std::exp(cplx(0.0, n * t)) - 1.0);
        return eta0 * t + acc.real();
    };

    std::vector<double> x1(n_aux), x2(n_aux);
    double t = 0.0;
    for (int j = 0; j < n_aux; ++j) {
        double target = L * j / n_aux;
        // Newton from the previous node shifted by one average step
        if (j > 0) t += L / (n_aux * src.frame(t).eta);
        for (int it = 0; it < 50; ++it) {
            double resid = arclen(t) - target;
            double step = resid / src.frame(t).eta;
            t -= step;
            if (std::fabs(step) < 1e-14) break;
        }
        CurveFrame f = src.frame(t);
        x1[j] = f.x[0];
        x2[j] = f.x[1];
    }

    Curve out;
    out.name = src.name;
    out.scale = src.scale;
    out.kind = ParamKind::ArcResampled;
    out.n_base = n_aux;
    out.cx1 = coeffs_from_samples(x1);
    out.cx2 = coeffs_from_samples(x2);
    out.finalize();
    return out;
}

std::string curve_to_json(const Curve& c) {
    json j;
    j["name"] = c.name;
    j["r"] = c.scale;
    j["kind"] = (c.kind == ParamKind::Analytic) ? "analytic" : "arc_resampled";
    j["n_aux"] = c.n_base;
    bool builtin = (c.name == "ellipse" || c.name == "kite" || c.name == "cavity");
    if (!builtin) {
        json re1, im1, re2, im2;
        for (int i = 0; i < c.n_base; ++i) {
            re1.push_back(c.cx1[i].real());
            im1.push_back(c.cx1[i].imag());
            re2.push_back(c.cx2[i].real());
            im2.push_back(c.cx2[i].imag());
        }
        j["cx1_re"] = re1; j["cx1_im"] = im1;
        j["cx2_re"] = re2; j["cx2_im"] = im2;
    }
    return j.dump(2);
}

Curve curve_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("bad curve file: ") + e.what());
    }
    std::string name = j.at("name").get<std::string>();
    std::string kind = j.value("kind", "analytic");
    int n_aux = j.value("n_aux", 4096);
    bool builtin = (name == "ellipse" || name == "kite" || name == "cavity");
    if (builtin) {
        Curve c = builtin_curve(name);
        if (kind == "arc_resampled") c = arclength_reparametrize(c, n_aux);
        return c;
    }
    if (!j.contains("cx1_re")) throw ConfigError("custom curve file lacks coefficients");
    Curve c;
    c.name = name;
    c.scale = j.value("r", 1.0);
    c.kind = (kind == "arc_resampled") ? ParamKind::ArcResampled : ParamKind::Analytic;
    c.n_base = n_aux;
    auto re1 = j.at("cx1_re"), im1 = j.at("cx1_im"), re2 = j.at("cx2_re"), im2 = j.at("cx2_im");
    if (int(re1.size()) != c.n_base) throw ConfigError("curve coefficient length mismatch");
    c.cx1.resize(c.n_base);
    c.cx2.resize(c.n_base);
    for (int i = 0; i < c.n_base; ++i) {
        c.cx1[i] = cplx(re1[i].get<double>(), im1[i].get<double>());
        c.cx2[i] = cplx(re2[i].get<double>(), im2[i].get<double>());
    }
    c.finalize();
    return c;
}

} // namespace elbie
