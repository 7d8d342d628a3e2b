#include "elbie/config.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace elbie {
namespace {

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& where, const std::string& v) {
    char* end = nullptr;
    double x = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || *end != '\0')
        throw ConfigError(where + ": expected a number, got '" + v + "'");
    return x;
}

bool parse_bool(const std::string& where, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(where + ": expected true/false, got '" + v + "'");
}

ParamKind parse_kind(const std::string& where, const std::string& v) {
    if (v == "natural" || v == "analytic") return ParamKind::Analytic;
    if (v == "arc" || v == "arclength") return ParamKind::ArcResampled;
    throw ConfigError(where + ": parametrization must be 'natural' or 'arc', got '" + v + "'");
}

// One section.key assignment; `where` prefixes diagnostics (file:line or
// the flag name).
void assign(ExperimentConfig& c, const std::string& where,
            const std::string& section, const std::string& key,
            const std::string& value) {
    if (section == "geometry") {
        if (key == "name") {
            c.geometry = value;
            c.geometry_is_file = false;
            return;
        }
        if (key == "file") {
            c.geometry = value;
            c.geometry_is_file = true;
            return;
        }
        if (key == "parametrization") {
            c.kind = parse_kind(where, value);
            return;
        }
    } else if (section == "problem") {
        if (key == "omega") { c.omega = parse_double(where, value); return; }
        if (key == "lambda") { c.lambda = parse_double(where, value); return; }
        if (key == "mu") { c.mu = parse_double(where, value); return; }
        if (key == "eps_p") { c.eps_p = parse_double(where, value); return; }
        if (key == "eps_s") { c.eps_s = parse_double(where, value); return; }
        if (key == "eps") {
            c.eps_p = c.eps_s = parse_double(where, value);
            return;
        }
    } else if (section == "discretization") {
        if (key == "N") { c.N_list = parse_N_list(value); return; }
        if (key == "regularized") { c.regularized = parse_bool(where, value); return; }
    } else if (section == "solver") {
        if (key == "method") { c.solver = value; return; }
        if (key == "tol") { c.tol = parse_double(where, value); return; }
    } else if (section == "source") {
        if (key == "x") { c.source.x() = parse_double(where, value); return; }
        if (key == "y") { c.source.y() = parse_double(where, value); return; }
        if (key == "pol_x") { c.polarization.x() = parse_double(where, value); return; }
        if (key == "pol_y") { c.polarization.y() = parse_double(where, value); return; }
    } else if (section == "output") {
        if (key == "dir") { c.out_dir = value; return; }
        if (key == "probes") {
            c.probes = int(parse_double(where, value));
            return;
        }
    } else {
        throw ConfigError(where + ": unknown section [" + section + "]");
    }
    throw ConfigError(where + ": unknown key '" + key + "' in section [" + section + "]");
}

} // namespace

std::vector<int> parse_N_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        char* end = nullptr;
        long v = std::strtol(item.c_str(), &end, 10);
        if (end == item.c_str() || *end != '\0')
            throw ConfigError("grid list: expected an integer, got '" + item + "'");
        out.push_back(int(v));
    }
    if (out.empty()) throw ConfigError("grid list: no N values given");
    return out;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file " + path);
    ExperimentConfig cfg;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::string where = path + ":" + std::to_string(lineno);
        size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(where + ": malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(where + ": expected key = value, got '" + line + "'");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(where + ": empty key");
        if (section.empty())
            throw ConfigError(where + ": key '" + key + "' outside any section");
        assign(cfg, where, section, key, value);
    }
    return cfg;
}

void apply_override(ExperimentConfig& cfg, const std::string& dotted_key,
                    const std::string& value) {
    size_t dot = dotted_key.find('.');
    if (dot == std::string::npos)
        throw ConfigError("override key '" + dotted_key + "' must be section.key");
    assign(cfg, "override " + dotted_key, dotted_key.substr(0, dot),
           dotted_key.substr(dot + 1), value);
}

void validate_config(const ExperimentConfig& cfg) {
    if (cfg.N_list.empty()) throw ConfigError("N list is empty");
    for (int n : cfg.N_list)
        if (n < 16 || n % 2 != 0)
            throw ConfigError("N values must be even and >= 16, got " + std::to_string(n));
    if (!(cfg.tol > 0.0) || cfg.tol > 1e-3)
        throw ConfigError("solver tolerance must lie in (0, 1e-3]");
    if (cfg.omega <= 0.0) throw ConfigError("omega must be positive");
    if (cfg.mu <= 0.0 || cfg.lambda + 2.0 * cfg.mu <= 0.0)
        throw ConfigError("need mu > 0 and lambda + 2 mu > 0");
    if (cfg.solver != "direct" && cfg.solver != "gmres")
        throw ConfigError("solver must be 'direct' or 'gmres', got '" + cfg.solver + "'");
    if (cfg.probes < 1) throw ConfigError("probe count must be positive");
}

ProblemParams config_params(const ExperimentConfig& cfg) {
    ProblemParams p = make_params(cfg.omega, cfg.lambda, cfg.mu);
    if (cfg.eps_p >= 0.0) p.eps_p = cfg.eps_p;
    if (cfg.eps_s >= 0.0) p.eps_s = cfg.eps_s;
    return p;
}

} // namespace elbie
