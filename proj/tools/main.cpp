// Command-line front end: experiment manifests in, CSV tables out.
// Subcommands mirror the study types (single solve sweep, convergence table,
// GMRES iteration counts, eigenvalue distribution, condition numbers).

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "elbie/assembly.hpp"
#include "elbie/config.hpp"
#include "elbie/curve.hpp"
#include "elbie/fields.hpp"
#include "elbie/params.hpp"
#include "elbie/solve.hpp"
#include "elbie/types.hpp"

using namespace elbie;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Whole-file atomic write: temp file in the same directory, then rename.
void write_text(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp);
        if (!os) throw ConfigError("cannot open output file " + tmp);
        os << content;
    }
    std::filesystem::rename(tmp, path);
}

template <class F>
auto stage(const char* name, F&& f) {
    try {
        return f();
    } catch (const ConfigError& e) {
        throw ConfigError(std::string("[") + name + "] " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(std::string("[") + name + "] " + e.what());
    }
}

// Curve, wavenumbers and source in solver coordinates. A custom curve of
// length L is shrunk to length 2 pi with the wavenumbers and the source
// location transformed covariantly, so the physical problem is unchanged.
struct Resolved {
    Curve curve;
    ProblemParams prm;
    NavierPointSource src;
};

Resolved resolve(const ExperimentConfig& cfg) {
    Resolved r;
    if (cfg.geometry_is_file) {
        std::ifstream is(cfg.geometry);
        if (!is) throw ConfigError("cannot open curve file " + cfg.geometry);
        std::string text((std::istreambuf_iterator<char>(is)),
                         std::istreambuf_iterator<char>());
        r.curve = curve_from_json(text);
    } else {
        try {
            r.curve = builtin_curve(cfg.geometry);
        } catch (const ConfigError&) {
            throw ConfigError("unknown geometry '" + cfg.geometry +
                              "'; valid: ellipse, kite, cavity, or --geometry <curve.json>");
        }
    }
    r.prm = config_params(cfg);
    r.src.x0 = cfg.source;
    r.src.polarization = cfg.polarization;
    if (r.curve.needs_rescale()) {
        double L = r.curve.length();
        r.curve.scale *= TWO_PI / L;
        r.curve.finalize();
        r.prm = rescale_wavenumbers(r.prm, L);
        r.src.x0 *= TWO_PI / L;
    }
    r.src.prm = r.prm;
    if (cfg.kind == ParamKind::ArcResampled)
        r.curve = arclength_reparametrize(r.curve);
    return r;
}

std::vector<Vec2> probe_ring(int count) {
    std::vector<Vec2> pts;
    pts.reserve(size_t(count));
    for (int j = 0; j < count; ++j) {
        double a = TWO_PI * j / count;
        pts.emplace_back(4.0 * std::cos(a), 4.0 * std::sin(a));
    }
    return pts;
}

SystemMatrix assemble(const Resolved& r, const ExperimentConfig& cfg, int N) {
    bool arc = cfg.kind == ParamKind::ArcResampled;
    return stage("assemble", [&] {
        return arc ? assemble_system_arclength(r.prm, r.curve, N, cfg.regularized)
                   : assemble_system_general(r.prm, r.curve, N, cfg.regularized);
    });
}

struct RowResult {
    int N = 0;
    SolveReport rep;
    double err = 0.0;
    double assemble_ms = 0.0, solve_ms = 0.0;
    ExteriorField field;
};

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0).count();
}

RowResult run_once(const Resolved& r, const ExperimentConfig& cfg, int N) {
    bool arc = cfg.kind == ParamKind::ArcResampled;
    RowResult row;
    row.N = N;

    auto t0 = std::chrono::steady_clock::now();
    SystemMatrix sm = assemble(r, cfg, N);
    row.assemble_ms = ms_since(t0);

    BoundaryData bd = stage("data", [&] { return boundary_data(r.curve, r.src, N); });

    t0 = std::chrono::steady_clock::now();
    row.rep = stage("solve", [&] {
        return cfg.solver == "gmres" ? solve_gmres(sm.M, bd.stacked(), cfg.tol)
                                     : solve_direct(sm.M, bd.stacked());
    });
    row.solve_ms = ms_since(t0);

    Densities dens = stage("recover", [&] {
        MatrixXc R = cfg.regularized ? assemble_R(r.prm, sm.frames, N, arc)
                                     : MatrixXc(MatrixXc::Identity(2 * N, 2 * N));
        return recover_densities(row.rep, R);
    });

    row.field = stage("evaluate", [&] {
        MatrixXc Yp = assemble_Y(r.prm, sm.frames, N, arc, WaveKind::P);
        MatrixXc Ys = assemble_Y(r.prm, sm.frames, N, arc, WaveKind::S);
        return evaluate_field(r.curve, r.prm, dens.phi_p, dens.phi_s, Yp, Ys,
                              probe_ring(cfg.probes));
    });
    row.err = farfield_error(row.field, r.src);
    return row;
}

std::string kind_name(ParamKind k) {
    return k == ParamKind::ArcResampled ? "arc" : "natural";
}

std::string result_header() {
    return "N,kind,omega,solver,iterations,residual,farfield_error,assemble_ms,solve_ms\n";
}

std::string result_row(const ExperimentConfig& cfg, const RowResult& row) {
    return std::to_string(row.N) + "," + kind_name(cfg.kind) + "," + fmt(cfg.omega) +
           "," + cfg.solver + "," + std::to_string(row.rep.iterations) + "," +
           fmt(row.rep.residual) + "," + fmt(row.err) + "," + fmt(row.assemble_ms) +
           "," + fmt(row.solve_ms) + "\n";
}

void ensure_outdir(const ExperimentConfig& cfg) {
    std::error_code ec;
    std::filesystem::create_directories(cfg.out_dir, ec);
    if (ec) throw ConfigError("cannot create output directory " + cfg.out_dir);
}

int cmd_solve(const ExperimentConfig& cfg) {
    ensure_outdir(cfg);
    Resolved r = resolve(cfg);
    std::string csv = result_header();
    for (int N : cfg.N_list) {
        RowResult row = run_once(r, cfg, N);
        csv += result_row(cfg, row);
        write_field_csv(row.field,
                        cfg.out_dir + "/field_N" + std::to_string(N) + ".csv");
        std::printf("N=%5d  far-field error %.17g  (%s, %d iterations)\n", N,
                    row.err, cfg.solver.c_str(), row.rep.iterations);
    }
    write_text(cfg.out_dir + "/solve.csv", csv);
    return 0;
}

int cmd_convergence(const ExperimentConfig& cfg) {
    ensure_outdir(cfg);
    Resolved r = resolve(cfg);
    std::string csv =
        "N,kind,omega,solver,iterations,residual,farfield_error,assemble_ms,"
        "solve_ms,slope,plateau\n";
    double prev_err = 0.0;
    int prev_n = 0;
    std::printf("%8s %14s %10s  plateau\n", "N", "error", "slope");
    for (int N : cfg.N_list) {
        RowResult row = run_once(r, cfg, N);
        bool plateau = row.err < 1e-12;
        double slope = 0.0;
        if (prev_n != 0 && !plateau && prev_err > 1e-12 && row.err > 0.0)
            slope = std::log(prev_err / row.err) / std::log(double(N) / prev_n);
        csv += result_row(cfg, row);
        csv.pop_back();  // reuse the base row, append the two extra columns
        csv += "," + fmt(slope) + "," + (plateau ? std::string("1") : std::string("0")) +
               "\n";
        std::printf("%8d %14.6e %10.2f  %s\n", N, row.err, slope,
                    plateau ? "yes" : "no");
        prev_err = row.err;
        prev_n = N;
    }
    write_text(cfg.out_dir + "/convergence.csv", csv);
    return 0;
}

int cmd_gmres_study(const ExperimentConfig& cfg) {
    ensure_outdir(cfg);
    Resolved r = resolve(cfg);
    std::string csv = "N,iterations,residual,plateau\n";
    std::vector<int> counts;
    for (int N : cfg.N_list) {
        SystemMatrix sm = assemble(r, cfg, N);
        BoundaryData bd = stage("data", [&] { return boundary_data(r.curve, r.src, N); });
        SolveReport rep = stage("solve", [&] { return solve_gmres(sm.M, bd.stacked(), cfg.tol); });
        counts.push_back(rep.iterations);
        bool plateau = false;
        if (counts.size() >= 3) {
            int a = counts[counts.size() - 3], b = counts[counts.size() - 2],
                c = counts.back();
            int lo = std::min(a, std::min(b, c)), hi = std::max(a, std::max(b, c));
            plateau = hi - lo <= 3;
        }
        csv += std::to_string(N) + "," + std::to_string(rep.iterations) + "," +
               fmt(rep.residual) + "," + (plateau ? "1" : "0") + "\n";
        std::printf("N=%5d  %4d iterations  residual %.3e%s\n", N, rep.iterations,
                    rep.residual, plateau ? "  [plateau]" : "");
    }
    write_text(cfg.out_dir + "/gmres.csv", csv);
    return 0;
}

int cmd_spectrum(const ExperimentConfig& cfg) {
    ensure_outdir(cfg);
    Resolved r = resolve(cfg);
    int N = cfg.N_list.front();
    SystemMatrix sm = assemble(r, cfg, N);
    std::vector<cplx> eigs = stage("solve", [&] { return spectrum(sm.M); });

    // accumulation points: the two eigenvalues of the constant principal
    // block (multiplicity N each in the limit operator)
    CMat2 H = multiplier_block_symbol(BlockName::Hps, 0, r.prm);
    Eigen::ComplexEigenSolver<CMat2> es(H);
    cplx c1 = es.eigenvalues()(0), c2 = es.eigenvalues()(1);

    int inside = 0;
    std::string csv = "re,im\n";
    for (cplx l : eigs) {
        csv += fmt(l.real()) + "," + fmt(l.imag()) + "\n";
        double r1 = std::max(1.0, 0.05 * std::abs(c1));
        double r2 = std::max(1.0, 0.05 * std::abs(c2));
        if (std::abs(l - c1) <= r1 || std::abs(l - c2) <= r2) ++inside;
    }
    double fraction = double(inside) / double(eigs.size());
    write_text(cfg.out_dir + "/spectrum_N" + std::to_string(N) + ".csv", csv);
    write_text(cfg.out_dir + "/spectrum_stats.csv",
               "c1_re,c1_im,c2_re,c2_im,fraction\n" + fmt(c1.real()) + "," +
                   fmt(c1.imag()) + "," + fmt(c2.real()) + "," + fmt(c2.imag()) +
                   "," + fmt(fraction) + "\n");
    std::printf("N=%d: %zu eigenvalues, cluster points %.6g%+.6gi and %.6g%+.6gi, "
                "in-cluster fraction %.4f\n",
                N, eigs.size(), c1.real(), c1.imag(), c2.real(), c2.imag(), fraction);
    return 0;
}

int cmd_condition(const ExperimentConfig& cfg) {
    ensure_outdir(cfg);
    Resolved r = resolve(cfg);
    bool arc = cfg.kind == ParamKind::ArcResampled;
    std::string csv = "N,cond_regularized,cond_unregularized\n";
    for (int N : cfg.N_list) {
        auto build = [&](bool reg) {
            return arc ? assemble_system_arclength(r.prm, r.curve, N, reg)
                       : assemble_system_general(r.prm, r.curve, N, reg);
        };
        double creg = stage("solve", [&] { return condition_number(build(true).M); });
        double cunr = stage("solve", [&] { return condition_number(build(false).M); });
        csv += std::to_string(N) + "," + fmt(creg) + "," + fmt(cunr) + "\n";
        std::printf("N=%5d  cond regularized %.6e  unregularized %.6e\n", N, creg,
                    cunr);
    }
    write_text(cfg.out_dir + "/condition.csv", csv);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exterior elastic scattering by regularized boundary integral equations"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path, geometry, param_kind, n_list, solver, out_dir;
    double omega = 0.0, tol = 0.0, eps = -1.0;
    bool unregularized = false;

    app.add_option("--config", config_path, "experiment manifest file");
    app.add_option("--geometry", geometry, "builtin name (ellipse|kite|cavity) or curve JSON path");
    app.add_option("--param-kind", param_kind, "parametrization: arc | natural");
    app.add_option("--omega", omega, "angular frequency");
    app.add_option("--N", n_list, "comma-separated grid sizes");
    app.add_option("--solver", solver, "direct | gmres");
    app.add_option("--tol", tol, "GMRES relative tolerance");
    app.add_option("--out", out_dir, "output directory");
    app.add_flag("--unregularized", unregularized, "solve the plain combined-field system");
    app.add_option("--eps", eps, "wavenumber complexification offset (both waves)");

    auto* sub_solve = app.add_subcommand("solve", "run the pipeline for each N");
    auto* sub_conv = app.add_subcommand("convergence", "error-vs-N table with slopes");
    auto* sub_gmres = app.add_subcommand("gmres-study", "GMRES iteration counts per N");
    auto* sub_spec = app.add_subcommand("spectrum", "eigenvalue distribution and clustering");
    auto* sub_cond = app.add_subcommand("condition", "condition numbers, both formulations");
    for (auto* s : {sub_solve, sub_conv, sub_gmres, sub_spec, sub_cond}) s->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg = parse_config_file(config_path);
        if (app.count("--geometry")) {
            cfg.geometry = geometry;
            cfg.geometry_is_file = std::filesystem::is_regular_file(geometry);
        }
        if (app.count("--param-kind")) {
            if (param_kind == "arc") cfg.kind = ParamKind::ArcResampled;
            else if (param_kind == "natural") cfg.kind = ParamKind::Analytic;
            else throw ConfigError("--param-kind must be 'arc' or 'natural'");
        }
        if (app.count("--omega")) cfg.omega = omega;
        if (app.count("--N")) cfg.N_list = parse_N_list(n_list);
        if (app.count("--solver")) cfg.solver = solver;
        if (app.count("--tol")) cfg.tol = tol;
        if (app.count("--out")) cfg.out_dir = out_dir;
        if (unregularized) cfg.regularized = false;
        if (eps >= 0.0) cfg.eps_p = cfg.eps_s = eps;
        validate_config(cfg);

        if (sub_solve->parsed()) return cmd_solve(cfg);
        if (sub_conv->parsed()) return cmd_convergence(cfg);
        if (sub_gmres->parsed()) return cmd_gmres_study(cfg);
        if (sub_spec->parsed()) return cmd_spectrum(cfg);
        return cmd_condition(cfg);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
}
