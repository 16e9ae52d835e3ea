#include "rydent/run_config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>

#include "rydent/errors.hpp"

namespace rydent {

namespace {

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size() || !std::isfinite(v)) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw validation_error("config: bad numeric value '" + value + "' for " + key);
    }
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
    std::int64_t v = 0;
    const auto* first = value.data();
    const auto* last = first + value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw validation_error("config: bad integer value '" + value + "' for " + key);
    return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto* first = value.data();
    const auto* last = first + value.size();
    const auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc{} || res.ptr != last)
        throw validation_error("config: bad unsigned value '" + value + "' for " + key);
    return v;
}

} // namespace

void apply_config_kv(RunConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "n_rungs")
        cfg.n_rungs = static_cast<int>(parse_int(key, value));
    else if (key == "rb_over_a")
        cfg.rb_over_a = parse_double(key, value);
    else if (key == "delta_over_omega")
        cfg.delta_over_omega = parse_double(key, value);
    else if (key == "size_a")
        cfg.size_a = static_cast<int>(parse_int(key, value));
    else if (key == "grid_min_exp")
        cfg.grid_min_exp = parse_double(key, value);
    else if (key == "grid_max_exp")
        cfg.grid_max_exp = parse_double(key, value);
    else if (key == "grid_points")
        cfg.grid_points = static_cast<int>(parse_int(key, value));
    else if (key == "shots")
        cfg.shots = parse_uint(key, value);
    else if (key == "seed")
        cfg.seed = parse_uint(key, value);
    else if (key == "tol")
        cfg.tol = parse_double(key, value);
    else if (key == "max_iterations")
        cfg.max_iterations = static_cast<int>(parse_int(key, value));
    else if (key == "max_atoms")
        cfg.max_atoms = static_cast<int>(parse_int(key, value));
    else if (key == "max_basis_mb")
        cfg.max_basis_mb = parse_uint(key, value);
    else if (key == "state_file")
        cfg.state_file = value;
    else if (key == "output_json")
        cfg.output_json = value;
    else if (key == "output_csv")
        cfg.output_csv = value;
    else
        throw validation_error("config: unknown key '" + key + "'");
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open config file " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        const std::size_t eq = line.find('=', start);
        if (eq == std::string::npos)
            throw validation_error(path + ": line " + std::to_string(line_no) +
                                   ": expected key=value");
        auto strip = [](std::string s) {
            const std::size_t a = s.find_first_not_of(" \t");
            const std::size_t b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = strip(line.substr(start, eq - start));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            throw validation_error(path + ": line " + std::to_string(line_no) + ": empty key");
        apply_config_kv(base, key, value);
    }
    return base;
}

int resolved_size_a(const RunConfig& cfg) {
    return cfg.size_a < 0 ? cfg.n_rungs : cfg.size_a;
}

void validate_config(const RunConfig& cfg) {
    if (cfg.n_rungs < 1) throw validation_error("config: n_rungs must be >= 1");
    if (!(cfg.rb_over_a > 0.0)) throw validation_error("config: rb_over_a must be positive");
    const int n_atoms = 2 * cfg.n_rungs;
    const int size_a = resolved_size_a(cfg);
    if (size_a < 1 || size_a > n_atoms - 1)
        throw validation_error("config: size_a must lie in [1, n_atoms-1]");
    if (!(cfg.tol > 0.0)) throw validation_error("config: tol must be positive");
    if (cfg.max_iterations < 1) throw validation_error("config: max_iterations must be >= 1");
    if (cfg.grid_points < 2) throw validation_error("config: grid_points must be >= 2");
    if (!(cfg.grid_min_exp < cfg.grid_max_exp))
        throw validation_error("config: grid_min_exp must be < grid_max_exp");
    if (cfg.grid_max_exp > 0.0) throw validation_error("config: grid_max_exp must be <= 0");
    if (cfg.max_atoms < 2) throw validation_error("config: max_atoms must be >= 2");
    if (n_atoms > cfg.max_atoms)
        throw capability_error("config: " + std::to_string(n_atoms) + " atoms exceed the exact-" +
                               "solve ceiling of " + std::to_string(cfg.max_atoms) +
                               "; raise max_atoms to acknowledge the memory cost");
}

} // namespace rydent
