#include "elbie/assembly.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace elbie {
namespace {

cplx y_sym(cplx kt2, int n) {
    if (n == 0) return 1.0;
    double a = std::abs(double(n));
    return -a + kt2 / (2.0 * a);
}

FourierSymbol wrap(cplx (*f)(int)) {
    return [f](int n) { return f(n); };
}

// Samples indexed by grid node; t arguments produced by grid_nodes round-trip
// exactly to an index.
std::function<double(double)> node_fun(std::vector<double> v) {
    const int n = int(v.size());
    return [v = std::move(v), n](double t) {
        int j = int(std::lround(t * n / TWO_PI)) % n;
        if (j < 0) j += n;
        return v[size_t(j)];
    };
}

MatrixXc blkdiag_scale(const VectorXc& d, const MatrixXc& X) {
    return d.asDiagonal() * X;
}

struct KernelSet {
    MatrixXc KV4, Wreg, KT, Vtn;
};

KernelSet kernel_set(double k, const std::vector<CurveFrame>& fr) {
    KernelSet ks;
    ks.KV4 = discrete_singular_op(split_V4(k).kernel, fr);
    ks.Wreg = discrete_singular_op(split_W_regular(k), fr);
    ks.KT = discrete_singular_op(split_KT(k), fr);
    ks.Vtn = discrete_singular_op(split_Vtn(k), fr);
    return ks;
}

// Full arc-length multiplier block of the combined operator (order >= -1 part
// plus order -2 remainder); the split-kernel matrices carry everything else.
CMat2 arc_symbol(int n, const ProblemParams& prm) {
    CMat2 S = multiplier_block_symbol(BlockName::AppMinus1, n, prm);
    S += multiplier_block_symbol(BlockName::App2, n, prm);
    return S;
}

void put_blocks(MatrixXc& M, int N, const MatrixXc& B11, const MatrixXc& B12,
                const MatrixXc& B21, const MatrixXc& B22) {
    M.block(0, 0, N, N) = B11;
    M.block(0, N, N, N) = B12;
    M.block(N, 0, N, N) = B21;
    M.block(N, N, N, N) = B22;
}

void check_curve(const Curve& curve) {
    if (curve.needs_rescale())
        throw ConfigError("assembly requires a curve of length 2*pi; rescale first");
}

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), 4);
}

void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), 8);
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}

double read_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}

} // namespace

FourierSymbol difference_family(FourierSymbol sigma) {
    return [sigma = std::move(sigma)](int n) { return sigma(n - 1) - sigma(n); };
}

MatrixXc quadrature_matrix(const FourierSymbol& delta_hat, int N) {
    // Product integration of a convolution kernel with coefficients delta_hat
    // is its own multiplier matrix; exact on the grid band.
    return multiplier_matrix(delta_hat, N);
}

MatrixXc discrete_singular_op(const SplitKernel& sk, const std::vector<CurveFrame>& fr) {
    const int N = int(fr.size());
    const int j = sk.j;
    MatrixXc Q = quadrature_matrix([j](int n) { return cplx(rho_hat(j, n)); }, N);
    const double tz = TWO_PI / N;
    MatrixXc M(N, N);
    for (int r = 0; r < N; ++r) {
        for (int c = 0; c < N; ++c) {
            if (r == c)
                M(r, c) = -4.0 * PI * sk.A_diag(fr[r]) * Q(r, r) + tz * sk.B_diag(fr[r]);
            else
                M(r, c) = -4.0 * PI * sk.A(fr[r], fr[c]) * Q(r, c) + tz * sk.B(fr[r], fr[c]);
        }
    }
    return M;
}

MatrixXc correction_matrix(const CommutatorKernel& ck, const FourierSymbol& ghat, int N) {
    MatrixXc Q = quadrature_matrix(ghat, N);
    VectorXr t = grid_nodes(N);
    MatrixXc M(N, N);
    for (int r = 0; r < N; ++r)
        for (int c = 0; c < N; ++c)
            M(r, c) = (r == c ? ck.diag(t[r]) : ck.value(t[r], t[c])) * Q(r, c);
    return M;
}

CMat2 multiplier_block_symbol(BlockName name, int n, const ProblemParams& prm) {
    const double kp2 = prm.kp * prm.kp;
    const double ks2 = prm.ks * prm.ks;
    const cplx kpt2 = prm.kp_tilde() * prm.kp_tilde();
    const cplx kst2 = prm.ks_tilde() * prm.ks_tilde();
    const cplx sH = sym_H(n);
    const double an = std::abs(double(n));
    const cplx d(0.0, double(n));
    CMat2 B = CMat2::Zero();
    switch (name) {
        case BlockName::H0:
            B(0, 0) = 1.0;
            B(0, 1) = -sH;
            B(1, 0) = -sH;
            B(1, 1) = -1.0;
            return B;
        case BlockName::Hps: {
            cplx sum = kp2 + ks2 + kpt2 + kst2;
            cplx dif = kp2 + ks2 - kpt2 - kst2;
            B(0, 0) = -0.25 * sum;
            B(0, 1) = 0.25 * dif * sH;
            B(1, 0) = -0.25 * dif * sH;
            B(1, 1) = -0.25 * sum;
            return B;
        }
        case BlockName::AppMinus1: {
            cplx s1 = sym_HDm1(n);
            cplx s2 = sym_HDm2(n);
            cplx st = (n == 0) ? cplx(0.0) : sH;  // sigma_H with the 0-mode removed
            cplx hd = sym_HD(n);
            cplx yp = y_sym(kpt2, n), ys = y_sym(kst2, n);
            B(0, 0) = 0.5 * hd + 0.25 * kp2 * s1 + 0.5 * yp;
            B(0, 1) = 0.5 * d + (-0.5 * st + 0.25 * ks2 * s2) * ys;
            B(1, 0) = 0.5 * d + (-0.5 * st + 0.25 * kp2 * s2) * yp;
            B(1, 1) = -0.5 * hd - 0.25 * ks2 * s1 - 0.5 * ys;
            return B;
        }
        case BlockName::App2: {
            cplx s1 = sym_HDm1(n);
            cplx r3 = rho_hat(3, n);
            cplx dlc = d * sym_lambda3c(n);
            cplx yp = y_sym(kpt2, n), ys = y_sym(kst2, n);
            cplx core = -double(n) * double(n) * r3 + s1;
            B(0, 0) = 0.25 * kp2 * core;
            B(0, 1) = -0.25 * ks2 * dlc * ys;
            B(1, 0) = -0.25 * kp2 * dlc * yp;
            B(1, 1) = -0.25 * ks2 * core;
            return B;
        }
        case BlockName::Y:
            B(0, 0) = y_sym(kpt2, n);
            B(1, 1) = y_sym(kst2, n);
            return B;
        case BlockName::R:
            if (n == 0) return CMat2::Identity();
            B(0, 0) = -an + kst2 / (2.0 * an);
            B(0, 1) = d;
            B(1, 0) = d;
            B(1, 1) = an - kpt2 / (2.0 * an);
            return B;
    }
    throw ConfigError("multiplier_block_symbol: unknown block");
}

MatrixXc block_multiplier_matrix(const std::function<CMat2(int)>& sym, int N) {
    std::vector<CMat2> S(static_cast<size_t>(N));
    for (int j = 0; j < N; ++j) S[size_t(j)] = sym(fft_bin_mode(j, N));
    MatrixXc M(2 * N, 2 * N);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            FourierSymbol entry = [&S, N, a, b](int n) {
                int j = (n >= 0) ? n : n + N;
                return S[size_t(j)](a, b);
            };
            M.block(a * N, b * N, N, N) = multiplier_matrix(entry, N);
        }
    return M;
}

MatrixXc assemble_Y(const ProblemParams& prm, const std::vector<CurveFrame>& fr,
                    int N, bool arc, WaveKind which) {
    const cplx kt = (which == WaveKind::P) ? prm.kp_tilde() : prm.ks_tilde();
    const cplx kt2 = kt * kt;
    if (arc)
        return multiplier_matrix([kt2](int n) { return y_sym(kt2, n); }, N);
    VectorXc eta(N), etai(N);
    for (int j = 0; j < N; ++j) {
        eta[j] = fr[size_t(j)].eta;
        etai[j] = 1.0 / fr[size_t(j)].eta;
    }
    MatrixXc Y = blkdiag_scale(etai, multiplier_matrix(wrap(sym_HD), N));
    Y += 0.5 * kt2 * (multiplier_matrix(wrap(sym_HDm1), N) * eta.asDiagonal());
    Y.noalias() += (1.0 / N) * etai * Eigen::RowVectorXcd::Ones(N);
    return Y;
}

MatrixXc assemble_R(const ProblemParams& prm, const std::vector<CurveFrame>& fr,
                    int N, bool arc) {
    if (arc) {
        return block_multiplier_matrix(
            [&prm](int n) { return multiplier_block_symbol(BlockName::R, n, prm); }, N);
    }
    const cplx kpt2 = prm.kp_tilde() * prm.kp_tilde();
    const cplx kst2 = prm.ks_tilde() * prm.ks_tilde();
    VectorXc eta(N), etai(N);
    for (int j = 0; j < N; ++j) {
        eta[j] = fr[size_t(j)].eta;
        etai[j] = 1.0 / fr[size_t(j)].eta;
    }
    MatrixXc MHD = multiplier_matrix(wrap(sym_HD), N);
    MatrixXc MHDm1eta = multiplier_matrix(wrap(sym_HDm1), N) * eta.asDiagonal();
    MatrixXc MD = multiplier_matrix([](int n) { return sym_D(1, n); }, N);
    MatrixXc PB11 = blkdiag_scale(etai, MHD);
    MatrixXc PB12 = blkdiag_scale(etai, MD);
    MatrixXc Jeta = (1.0 / N) * VectorXc::Ones(N) * eta.transpose();
    MatrixXc R(2 * N, 2 * N);
    put_blocks(R, N, PB11 + 0.5 * kst2 * MHDm1eta + Jeta, PB12, PB12,
               -PB11 - 0.5 * kpt2 * MHDm1eta + Jeta);
    return R;
}

SystemMatrix assemble_system_arclength(const ProblemParams& prm, const Curve& curve,
                                       int N, bool regularized) {
    check_curve(curve);
    std::vector<CurveFrame> fr = curve.frames_on_grid(N);
    if (curve.kind != ParamKind::ArcResampled) {
        double dev = 0.0;
        for (const CurveFrame& f : fr) dev = std::max(dev, std::fabs(f.eta - 1.0));
        if (dev > 1e-8)
            throw ConfigError(
                "arc-length assembly requires an arc-length parametrization; "
                "resample the curve or use the general formulation");
    }

    MatrixXc MD = multiplier_matrix([](int n) { return sym_D(1, n); }, N);
    KernelSet kp = kernel_set(prm.kp, fr);
    KernelSet ks = kernel_set(prm.ks, fr);
    MatrixXc Yp = assemble_Y(prm, fr, N, true, WaveKind::P);
    MatrixXc Ys = assemble_Y(prm, fr, N, true, WaveKind::S);
    const double kp2 = prm.kp * prm.kp, ks2 = prm.ks * prm.ks;

    MatrixXc DKV4p = MD * kp.KV4;
    MatrixXc DKV4s = MD * ks.KV4;
    MatrixXc W2p = DKV4p * MD + kp.Wreg;
    MatrixXc W2s = DKV4s * MD + ks.Wreg;

    MatrixXc A2K(2 * N, 2 * N);
    put_blocks(A2K, N,
               W2p - kp.KT * Yp,
               ks2 * ks.Vtn - ks.KT * MD - DKV4s * Ys,
               kp2 * kp.Vtn - kp.KT * MD - DKV4p * Yp,
               -W2s + ks.KT * Ys);

    SystemMatrix sm;
    sm.N = N;
    sm.kind = ParamKind::ArcResampled;
    sm.regularized = regularized;
    sm.prm = prm;
    sm.frames = std::move(fr);
    if (regularized) {
        MatrixXc Msym = block_multiplier_matrix(
            [&prm](int n) {
                return CMat2(arc_symbol(n, prm) *
                             multiplier_block_symbol(BlockName::R, n, prm));
            },
            N);
        MatrixXc BR = assemble_R(prm, sm.frames, N, true);
        sm.M = Msym + A2K * BR;
        sm.principal = [prm](int n) {
            return multiplier_block_symbol(BlockName::Hps, n, prm);
        };
    } else {
        sm.M = block_multiplier_matrix(
                   [&prm](int n) { return arc_symbol(n, prm); }, N) +
               A2K;
        sm.principal = [prm](int n) { return arc_symbol(n, prm); };
    }
    return sm;
}

SystemMatrix assemble_system_general(const ProblemParams& prm, const Curve& curve,
                                     int N, bool regularized) {
    check_curve(curve);
    std::vector<CurveFrame> fr = curve.frames_on_grid(N);
    VectorXr t = grid_nodes(N);

    VectorXc eta(N), etai(N), eta2(N), eta3(N);
    const size_t nn = static_cast<size_t>(N);
    std::vector<double> av_eta(nn), av_deta(nn), av_eta2(nn), av_deta2(nn),
        av_etai(nn), av_detai(nn);
    VectorXr wv(N), wpv(N);
    for (int j = 0; j < N; ++j) {
        const CurveFrame& f = fr[size_t(j)];
        double e = f.eta, de = f.deta;
        double epp = (f.d2.squaredNorm() + f.d1.dot(f.d3) - de * de) / e;
        eta[j] = e;
        etai[j] = 1.0 / e;
        eta2[j] = e * e;
        eta3[j] = e * e * e;
        av_eta[size_t(j)] = e;
        av_deta[size_t(j)] = de;
        av_eta2[size_t(j)] = e * e;
        av_deta2[size_t(j)] = 2.0 * e * de;
        av_etai[size_t(j)] = 1.0 / e;
        av_detai[size_t(j)] = -de / (e * e);
        wv[j] = de / (e * e);
        wpv[j] = epp / (e * e) - 2.0 * de * de / (e * e * e);
    }

    // Commutator corrections: eta against the HD_{-1} and HD_{-2} families,
    // eta and 1/eta against the Hilbert-transform family.
    MatrixXc C2m = correction_matrix(commutator_kernel(node_fun(av_eta), node_fun(av_deta)),
                                     difference_family(wrap(sym_HDm1)), N);
    MatrixXc C3m = correction_matrix(commutator_kernel(node_fun(av_eta2), node_fun(av_deta2)),
                                     difference_family(wrap(sym_HDm2)), N);
    MatrixXc Cinfm = correction_matrix(commutator_kernel(node_fun(av_eta), node_fun(av_deta)),
                                       difference_family(wrap(sym_H)), N);
    MatrixXc Cpm = correction_matrix(commutator_kernel(node_fun(av_etai), node_fun(av_detai)),
                                     difference_family(wrap(sym_H)), N);

    // H (w .) - (w .) H for w = eta'/eta^2; the H family collapses to a
    // rank-structure-free dense matrix with no division by w.
    MatrixXc CMw(N, N);
    {
        const cplx c(0.0, 2.0 / N);
        for (int r = 0; r < N; ++r)
            for (int cgl = 0; cgl < N; ++cgl)
                CMw(r, cgl) = (r == cgl)
                                  ? cplx(2.0 / N * wpv[r], 0.0)
                                  : c * (wv[r] - wv[cgl]) / e1m1(t[r] - t[cgl]);
    }

    MatrixXc MD = multiplier_matrix([](int n) { return sym_D(1, n); }, N);
    MatrixXc MHD = multiplier_matrix(wrap(sym_HD), N);
    MatrixXc MHDm1 = multiplier_matrix(wrap(sym_HDm1), N);
    MatrixXc MHDm2 = multiplier_matrix(wrap(sym_HDm2), N);
    MatrixXc MH = multiplier_matrix(wrap(sym_H), N);
    MatrixXc Min = multiplier_matrix(
        [](int n) { return n == 0 ? cplx(0.0) : cplx(0.0, 1.0 / n); }, N);
    MatrixXc Mdlc = multiplier_matrix(
        [](int n) { return cplx(0.0, double(n)) * sym_lambda3c(n); }, N);

    const double kp2 = prm.kp * prm.kp, ks2 = prm.ks * prm.ks;
    const cplx kpt2 = prm.kp_tilde() * prm.kp_tilde();
    const cplx kst2 = prm.ks_tilde() * prm.ks_tilde();

    KernelSet kkp = kernel_set(prm.kp, fr);
    KernelSet kks = kernel_set(prm.ks, fr);
    MatrixXc Ym_p = assemble_Y(prm, fr, N, false, WaveKind::P);
    MatrixXc Ym_s = assemble_Y(prm, fr, N, false, WaveKind::S);

    MatrixXc Dcheck = blkdiag_scale(etai, MD);
    MatrixXc C3MD = C3m * MD;

    // DV4_k = eta^{-1} D o (quarter k^2 Lambda_c (eta^3 .) + V4-kernel)
    MatrixXc DV4p = 0.25 * kp2 * blkdiag_scale(etai, Mdlc * eta3.asDiagonal()) + Dcheck * kkp.KV4;
    MatrixXc DV4s = 0.25 * ks2 * blkdiag_scale(etai, Mdlc * eta3.asDiagonal()) + Dcheck * kks.KV4;

    // W-row kernel parts: the eta^{-1} D V D eta^{-1} reduction leaves the
    // C^(2)/C^(3) corrections with a leading eta factor.
    MatrixXc W2p = -0.25 * kp2 * blkdiag_scale(eta, C2m) +
                   0.25 * kp2 * blkdiag_scale(eta, C3MD) + DV4p * Dcheck + kkp.Wreg;
    MatrixXc W2s = -0.25 * ks2 * blkdiag_scale(eta, C2m) +
                   0.25 * ks2 * blkdiag_scale(eta, C3MD) + DV4s * Dcheck + kks.Wreg;

    MatrixXc SL12p = -0.5 * Cinfm + DV4p;
    MatrixXc SL12s = -0.5 * Cinfm + DV4s;

    MatrixXc S11 = W2p - kkp.KT * Ym_p;
    MatrixXc S12 = ks2 * kks.Vtn - kks.KT * Dcheck - SL12s * Ym_s;
    MatrixXc S21 = kp2 * kkp.Vtn - kkp.KT * Dcheck - SL12p * Ym_p;
    MatrixXc S22 = -W2s + kks.KT * Ym_s;

    // Low-order multiplier parts of the combined operator.
    Eigen::RowVectorXcd onesr = Eigen::RowVectorXcd::Ones(N);
    MatrixXc MHDm1eta = MHDm1 * eta.asDiagonal();
    MatrixXc Pdp = 0.25 * (kp2 + kpt2) * MHDm1eta;
    Pdp.noalias() += (0.5 / N) * etai * onesr;
    MatrixXc Pds = 0.25 * (ks2 + kst2) * MHDm1eta;
    Pds.noalias() += (0.5 / N) * etai * onesr;

    MatrixXc CpHD = Cpm * MHD;
    MatrixXc G2 = MHDm2 * eta2.asDiagonal();
    MatrixXc G2HD = G2 * MHD;
    MatrixXc G3HDm1 = (MHDm2 * eta3.asDiagonal()) * MHDm1eta;
    VectorXc u3 = MH * etai;
    VectorXc v4 = (MHDm1.transpose() * eta).cwiseProduct(eta);
    VectorXc u8 = G2 * VectorXc::Ones(N) / double(N);

    auto x_block = [&](double k2, cplx kt2v) {
        MatrixXc X = 0.5 * blkdiag_scale(etai, CpHD);
        X -= 0.25 * kt2v * (Min * eta.asDiagonal());
        X.noalias() -= (0.5 / N) * u3 * onesr;
        X.noalias() += (cplx(0.0, 1.0) * kt2v / (4.0 * N)) * etai * v4.transpose();
        X.noalias() += (cplx(0.0, 0.5) / double(N)) * etai * onesr;
        X += 0.25 * k2 * blkdiag_scale(etai, G2HD);
        X += 0.125 * k2 * kt2v * blkdiag_scale(etai, G3HDm1);
        X.noalias() += (0.25 * k2) * etai.cwiseProduct(u8) * onesr;
        return X;
    };
    MatrixXc Xs = x_block(ks2, kst2);
    MatrixXc Xp = x_block(kp2, kpt2);

    MatrixXc PB11 = blkdiag_scale(etai, MHD);
    MatrixXc PB12 = blkdiag_scale(etai, MD);
    MatrixXc P11 = PB11 + Pdp;
    MatrixXc P12 = PB12 + Xs;
    MatrixXc P21 = PB12 + Xp;
    MatrixXc P22 = -PB11 - Pds;

    SystemMatrix sm;
    sm.N = N;
    sm.kind = ParamKind::Analytic;
    sm.regularized = regularized;
    sm.prm = prm;

    if (!regularized) {
        sm.M.resize(2 * N, 2 * N);
        put_blocks(sm.M, N, P11 + S11, P12 + S12, P21 + S21, P22 + S22);
        sm.frames = std::move(fr);
        return sm;
    }

    // Exact symbolic realization of (eta^{-1} B0)^2; every remaining product
    // has at least one bounded factor.
    MatrixXc MDHD = multiplier_matrix(
        [](int n) { return cplx(0.0, -double(n) * std::abs(double(n))); }, N);
    MatrixXc MD2 = multiplier_matrix(
        [](int n) { return cplx(-double(n) * double(n)); }, N);
    MatrixXc G11 = -blkdiag_scale(etai, Cpm * MDHD) - CMw * MHD;
    MatrixXc G12 = -blkdiag_scale(etai, Cpm * MD2) - CMw * MD;

    MatrixXc Rlow11 = 0.5 * kst2 * MHDm1eta;
    Rlow11.noalias() += (1.0 / N) * VectorXc::Ones(N) * eta.transpose();
    MatrixXc Rlow22 = -0.5 * kpt2 * MHDm1eta;
    Rlow22.noalias() += (1.0 / N) * VectorXc::Ones(N) * eta.transpose();

    MatrixXc Rm = assemble_R(prm, fr, N, false);

    MatrixXc M11 = blkdiag_scale(etai, G11) + P11 * Rlow11 + Pdp * PB11 + Xs * PB12 +
                   S11 * Rm.block(0, 0, N, N) + S12 * Rm.block(N, 0, N, N);
    MatrixXc M12 = blkdiag_scale(etai, G12) + P12 * Rlow22 + Pdp * PB12 - Xs * PB11 +
                   S11 * Rm.block(0, N, N, N) + S12 * Rm.block(N, N, N, N);
    MatrixXc M21 = -blkdiag_scale(etai, G12) + P21 * Rlow11 + Xp * PB11 - Pds * PB12 +
                   S21 * Rm.block(0, 0, N, N) + S22 * Rm.block(N, 0, N, N);
    MatrixXc M22 = blkdiag_scale(etai, G11) + P22 * Rlow22 + Xp * PB12 + Pds * PB11 +
                   S21 * Rm.block(0, N, N, N) + S22 * Rm.block(N, N, N, N);

    sm.M.resize(2 * N, 2 * N);
    put_blocks(sm.M, N, M11, M12, M21, M22);
    sm.frames = std::move(fr);
    sm.principal = [prm](int n) {
        return multiplier_block_symbol(BlockName::Hps, n, prm);
    };
    return sm;
}

void dump_system(const SystemMatrix& sm, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw ConfigError("dump_system: cannot open " + path);
    os.write("ELBIESYS", 8);
    write_u32(os, 1);
    write_u32(os, std::uint32_t(sm.N));
    std::uint32_t kind = (sm.kind == ParamKind::ArcResampled ? 0u : 1u);
    if (!sm.regularized) kind |= 2u;
    write_u32(os, kind);
    write_f64(os, sm.prm.omega);
    write_f64(os, sm.prm.lambda);
    write_f64(os, sm.prm.mu);
    write_f64(os, sm.prm.eps_p);
    const int n = 2 * sm.N;
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            write_f64(os, sm.M(r, c).real());
            write_f64(os, sm.M(r, c).imag());
        }
    if (!os) throw ConfigError("dump_system: write failed for " + path);
}

SystemMatrix load_system(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw ConfigError("load_system: cannot open " + path);
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, "ELBIESYS", 8) != 0)
        throw ConfigError("load_system: bad magic in " + path);
    std::uint32_t version = read_u32(is);
    if (version != 1) throw ConfigError("load_system: unsupported version");
    SystemMatrix sm;
    sm.N = int(read_u32(is));
    std::uint32_t kind = read_u32(is);
    sm.kind = (kind & 1u) ? ParamKind::Analytic : ParamKind::ArcResampled;
    sm.regularized = (kind & 2u) == 0;
    double omega = read_f64(is);
    double lambda = read_f64(is);
    double mu = read_f64(is);
    double eps = read_f64(is);
    sm.prm = make_params(omega, lambda, mu);
    if (std::fabs(sm.prm.eps_p - eps) > 1e-12 * std::max(1.0, std::fabs(eps)))
        sm.prm = make_params(omega, lambda, mu, eps);
    const int n = 2 * sm.N;
    if (sm.N < 2 || sm.N > (1 << 20)) throw ConfigError("load_system: bad size");
    sm.M.resize(n, n);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) {
            double re = read_f64(is);
            double im = read_f64(is);
            sm.M(r, c) = cplx(re, im);
        }
    if (!is) throw ConfigError("load_system: truncated file " + path);
    return sm;
}

} // namespace elbie
