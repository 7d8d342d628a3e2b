#pragma once

#include <string>
#include <vector>

#include "elbie/curve.hpp"
#include "elbie/params.hpp"
#include "elbie/types.hpp"

namespace elbie {

// One experiment manifest: which curve, which parametrization, which
// frequencies and grids, how to solve, where to write. Parsed from a
// sectioned key = value file; command-line flags override single fields
// afterwards. All numeric fields are validated together by
// validate_config so overrides cannot bypass the checks.
struct ExperimentConfig {
    // [geometry]
    std::string geometry = "ellipse";  // builtin name, or path of a curve JSON
    bool geometry_is_file = false;
    ParamKind kind = ParamKind::Analytic;

    // [problem]
    double omega = 10.0;
    double lambda = 2.0;
    double mu = 3.0;
    double eps_p = -1.0;  // < 0: default offset 0.4 k^{1/3}
    double eps_s = -1.0;

    // [discretization]
    std::vector<int> N_list{64};
    bool regularized = true;

    // [solver]
    std::string solver = "direct";  // direct | gmres
    double tol = 1e-9;

    // [source]
    Vec2 source{0.1, 0.0};
    Vec2 polarization{1.0, 1.0};

    // [output]
    std::string out_dir = ".";
    int probes = 1024;
};

// Parse a manifest file. Unknown sections or keys, malformed lines and
// unreadable files all throw ConfigError with file:line diagnostics.
ExperimentConfig parse_config_file(const std::string& path);

// Apply one dotted override, e.g. "solver.tol" = "1e-8". Same key set as
// the file parser; unknown keys throw ConfigError.
void apply_override(ExperimentConfig& cfg, const std::string& dotted_key,
                    const std::string& value);

// Comma-separated even grid sizes, e.g. "32,64,128".
std::vector<int> parse_N_list(const std::string& text);

// Cross-field validation: N even and >= 16, tol in (0, 1e-3], positive
// frequency and moduli, nonnegative offsets, known solver. Throws
// ConfigError naming the offending field.
void validate_config(const ExperimentConfig& cfg);

// Problem parameters implied by the config (wavenumbers from omega and the
// Lame constants, offsets defaulted when negative).
ProblemParams config_params(const ExperimentConfig& cfg);

} // namespace elbie
