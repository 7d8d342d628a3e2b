#include "elbie/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

namespace elbie {
namespace {

// FFTW plan cache. Plans are created with FFTW_ESTIMATE (deterministic) on
// owned aligned buffers; executions copy through those buffers under a lock,
// so concurrent callers on distinct data are safe.
struct PlanPair {
    fftw_complex* buf = nullptr;
    fftw_plan fwd = nullptr;
    fftw_plan bwd = nullptr;
};

std::mutex g_fft_mutex;
std::map<int, PlanPair>& plan_cache() {
    static std::map<int, PlanPair> cache;
    return cache;
}

PlanPair& plans_for(int N) {
    auto& cache = plan_cache();
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    PlanPair p;
    p.buf = fftw_alloc_complex(N);
    p.fwd = fftw_plan_dft_1d(N, p.buf, p.buf, FFTW_FORWARD, FFTW_ESTIMATE);
    p.bwd = fftw_plan_dft_1d(N, p.buf, p.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    return cache.emplace(N, p).first->second;
}

VectorXc run_fft(const VectorXc& in, bool forward) {
    const int N = int(in.size());
    std::lock_guard<std::mutex> lock(g_fft_mutex);
    PlanPair& p = plans_for(N);
    for (int j = 0; j < N; ++j) {
        p.buf[j][0] = in[j].real();
        p.buf[j][1] = in[j].imag();
    }
    fftw_execute(forward ? p.fwd : p.bwd);
    VectorXc out(N);
    for (int j = 0; j < N; ++j) out[j] = cplx(p.buf[j][0], p.buf[j][1]);
    return out;
}

void check_size(int N) {
    if (N < 2 || N % 2 != 0)
        throw ConfigError("grid size must be even and >= 2");
}

} // namespace

VectorXr grid_nodes(int N) {
    check_size(N);
    VectorXr t(N);
    for (int j = 0; j < N; ++j) t[j] = TWO_PI * j / N;
    return t;
}

int fft_bin_mode(int j, int N) { return (j < N / 2) ? j : j - N; }

VectorXc fourier_coeffs(const VectorXc& values) {
    check_size(int(values.size()));
    return run_fft(values, true) / double(values.size());
}

VectorXc fourier_values(const VectorXc& coeffs) {
    check_size(int(coeffs.size()));
    return run_fft(coeffs, false);
}

VectorXc apply_multiplier(const FourierSymbol& sym, const VectorXc& values) {
    const int N = int(values.size());
    VectorXc c = fourier_coeffs(values);
    for (int j = 0; j < N; ++j) c[j] *= sym(fft_bin_mode(j, N));
    return fourier_values(c);
}

MatrixXc multiplier_matrix(const FourierSymbol& sym, int N) {
    check_size(N);
    // first column c[l] = (1/N) sum_n sigma(n) e^{i n t_l}; M[j,m] = c[(j-m) mod N]
    VectorXc sig(N);
    for (int j = 0; j < N; ++j) sig[j] = sym(fft_bin_mode(j, N));
    VectorXc col = run_fft(sig, false) / double(N);
    MatrixXc M(N, N);
    for (int j = 0; j < N; ++j)
        for (int m = 0; m < N; ++m) M(j, m) = col[(j - m + N) % N];
    return M;
}

cplx sym_D(int r, int n) {
    if (n == 0) return (r == 0) ? cplx(1.0) : cplx(0.0);
    return std::pow(cplx(0.0, double(n)), double(r));
}

cplx sym_H(int n) {
    if (n == 0) return I_UNIT;
    return (n > 0) ? I_UNIT : -I_UNIT;
}

cplx sym_J(int n) { return (n == 0) ? cplx(1.0) : cplx(0.0); }

cplx sym_HD(int n) { return cplx(-std::abs(double(n))); }

cplx sym_HDm1(int n) { return (n == 0) ? cplx(0.0) : cplx(1.0 / std::abs(double(n))); }

cplx sym_HDm2(int n) {
    if (n == 0) return 0.0;
    double s = (n > 0) ? 1.0 : -1.0;
    return cplx(0.0, -s / (double(n) * double(n)));
}

cplx sym_HDm3(int n) {
    if (n == 0) return 0.0;
    double a = std::abs(double(n));
    return cplx(-1.0 / (a * a * a));
}

double rho_hat(int r, int n) {
    double dn = double(n);
    double sgn = (n > 0) ? 1.0 : ((n < 0) ? -1.0 : 0.0);
    switch (r) {
        case 1:
            return (n == 0) ? 0.0 : 1.0 / (2.0 * std::fabs(dn));
        case 2:
            if (n == 0) return 0.5;
            if (n == 1) return -0.5;
            return sgn / (2.0 * dn * (dn - 1.0));
        case 3:
            if (n == 0 || n == 2) return -0.75;
            if (n == 1) return 1.0;
            return 1.0 / std::fabs(dn * (dn - 1.0) * (dn - 2.0));
        case 4:
            if (n == 0) return 11.0 / 12.0;
            if (n == 1) return -7.0 / 4.0;
            if (n == 2) return 7.0 / 4.0;
            if (n == 3) return -11.0 / 12.0;
            return 3.0 * sgn / (dn * (dn - 1.0) * (dn - 2.0) * (dn - 3.0));
        default:
            throw ConfigError("rho_hat: order must be in 1..4");
    }
}

cplx sym_lambda3c(int n) {
    if (n == 0) return -0.75;
    double a = std::fabs(double(n));
    return cplx(rho_hat(3, n) - 1.0 / (a * a * a));
}

cplx TrigPoly::eval(double t) const {
    cplx acc = 0.0;
    for (int j = 0; j < N; ++j) {
        int n = fft_bin_mode(j, N);
        acc += coeffs[j] * std::exp(cplx(0.0, n * t));
    }
    return acc;
}

TrigPoly interpolate(const VectorXc& values) {
    TrigPoly p;
    p.N = int(values.size());
    p.coeffs = fourier_coeffs(values);
    return p;
}

double sobolev_norm(const VectorXc& values, double s) {
    const int N = int(values.size());
    VectorXc c = fourier_coeffs(values);
    double acc = 0.0;
    for (int j = 0; j < N; ++j) {
        double n = double(fft_bin_mode(j, N));
        acc += std::pow(1.0 + n * n, s) * std::norm(c[j]);
    }
    return std::sqrt(acc);
}

} // namespace elbie
