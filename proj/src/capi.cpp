#include "rydent.h"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "rydent/bipartition.hpp"
#include "rydent/entanglement.hpp"
#include "rydent/errors.hpp"
#include "rydent/pipeline.hpp"
#include "rydent/run_config.hpp"
#include "rydent/shot_io.hpp"
#include "rydent/state_io.hpp"
#include "rydent/version.hpp"

struct rydent_config {
    rydent::RunConfig cfg;
};

struct rydent_state {
    rydent::GroundState state;
};

namespace {

thread_local std::string t_last_error;

int fail(int code, const char* what) {
    t_last_error = what;
    return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        t_last_error.clear();
        return RYDENT_OK;
    } catch (const rydent::capability_error& e) {
        return fail(RYDENT_ERROR_CAPABILITY, e.what());
    } catch (const rydent::numerical_error& e) {
        return fail(RYDENT_ERROR_NUMERICAL, e.what());
    } catch (const rydent::io_error& e) {
        return fail(RYDENT_ERROR_VALIDATION, e.what());
    } catch (const rydent::validation_error& e) {
        return fail(RYDENT_ERROR_VALIDATION, e.what());
    } catch (const std::bad_alloc&) {
        return fail(RYDENT_ERROR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(RYDENT_ERROR_INTERNAL, e.what());
    } catch (...) {
        return fail(RYDENT_ERROR_INTERNAL, "unknown error");
    }
}

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out == nullptr) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

template <typename Fn>
int run_to_json(char** out_json, Fn&& produce) {
    if (out_json == nullptr) return fail(RYDENT_ERROR_VALIDATION, "out_json is null");
    *out_json = nullptr;
    return guarded([&] { *out_json = dup_string(produce().dump(2) + "\n"); });
}

int require(const void* p, const char* what) {
    if (p != nullptr) return RYDENT_OK;
    return fail(RYDENT_ERROR_VALIDATION, what);
}

} // namespace

extern "C" {

const char* rydent_version(void) { return rydent::kVersion; }

const char* rydent_last_error(void) { return t_last_error.c_str(); }

rydent_config* rydent_config_create(void) { return new (std::nothrow) rydent_config(); }

int rydent_config_set(rydent_config* cfg, const char* key, const char* value) {
    if (int rc = require(cfg, "config is null")) return rc;
    if (int rc = require(key, "key is null")) return rc;
    if (int rc = require(value, "value is null")) return rc;
    return guarded([&] { rydent::apply_config_kv(cfg->cfg, key, value); });
}

int rydent_config_load_file(rydent_config* cfg, const char* path) {
    if (int rc = require(cfg, "config is null")) return rc;
    if (int rc = require(path, "path is null")) return rc;
    return guarded([&] { cfg->cfg = rydent::load_config_file(path, cfg->cfg); });
}

void rydent_config_destroy(rydent_config* cfg) { delete cfg; }

int rydent_run_ground_state(const rydent_config* cfg, char** out_json) {
    if (int rc = require(cfg, "config is null")) return rc;
    return run_to_json(out_json, [&] { return rydent::run_ground_state(cfg->cfg); });
}

int rydent_run_estimate(const rydent_config* cfg, char** out_json) {
    if (int rc = require(cfg, "config is null")) return rc;
    return run_to_json(out_json, [&] { return rydent::run_estimate(cfg->cfg); });
}

int rydent_run_sweep_volume(const rydent_config* cfg, const int* rungs, size_t n_rungs,
                            char** out_json) {
    if (int rc = require(cfg, "config is null")) return rc;
    if (int rc = require(rungs, "rung list is null")) return rc;
    const std::vector<int> list(rungs, rungs + n_rungs);
    return run_to_json(out_json, [&] { return rydent::run_sweep_volume(cfg->cfg, list); });
}

int rydent_run_sweep_spacing(const rydent_config* cfg, const double* rb_values, size_t n_values,
                             char** out_json) {
    if (int rc = require(cfg, "config is null")) return rc;
    if (int rc = require(rb_values, "rb_over_a list is null")) return rc;
    const std::vector<double> list(rb_values, rb_values + n_values);
    return run_to_json(out_json, [&] { return rydent::run_sweep_spacing(cfg->cfg, list); });
}

int rydent_run_sweep_bipartition(const rydent_config* cfg, const int* sizes, size_t n_sizes,
                                 char** out_json) {
    if (int rc = require(cfg, "config is null")) return rc;
    if (int rc = require(sizes, "size_a list is null")) return rc;
    const std::vector<int> list(sizes, sizes + n_sizes);
    return run_to_json(out_json, [&] { return rydent::run_sweep_bipartition(cfg->cfg, list); });
}

int rydent_run_phase_scan(const rydent_config* cfg, const double* rb_grid, size_t n_rb,
                          const double* delta_grid, size_t n_delta, char** out_json) {
    if (int rc = require(cfg, "config is null")) return rc;
    if (int rc = require(rb_grid, "rb grid is null")) return rc;
    if (int rc = require(delta_grid, "delta grid is null")) return rc;
    const std::vector<double> rbs(rb_grid, rb_grid + n_rb);
    const std::vector<double> deltas(delta_grid, delta_grid + n_delta);
    return run_to_json(out_json, [&] { return rydent::run_phase_scan(cfg->cfg, rbs, deltas); });
}

int rydent_run_ingest(const rydent_config* cfg, const char* input_path, const char* format,
                      char** out_json) {
    if (int rc = require(cfg, "config is null")) return rc;
    if (int rc = require(input_path, "input path is null")) return rc;
    if (int rc = require(format, "format is null")) return rc;
    return run_to_json(out_json, [&] {
        return rydent::run_ingest(cfg->cfg, input_path, rydent::shot_format_from_name(format));
    });
}

int rydent_run_sample(const rydent_config* cfg, const char* output_path, const char* format,
                      char** out_json) {
    if (int rc = require(cfg, "config is null")) return rc;
    if (int rc = require(output_path, "output path is null")) return rc;
    if (int rc = require(format, "format is null")) return rc;
    return run_to_json(out_json, [&] {
        return rydent::run_sample(cfg->cfg, output_path, rydent::shot_format_from_name(format));
    });
}

void rydent_string_free(char* s) { std::free(s); }

int rydent_state_solve(const rydent_config* cfg, rydent_state** out_state) {
    if (int rc = require(cfg, "config is null")) return rc;
    if (int rc = require(out_state, "out_state is null")) return rc;
    *out_state = nullptr;
    return guarded([&] {
        rydent::validate_config(cfg->cfg);
        rydent::RunConfig c = cfg->cfg;
        c.state_file.clear(); // a plain solve never touches the cache
        auto holder = std::make_unique<rydent_state>();
        holder->state = rydent::solve_or_load(c);
        *out_state = holder.release();
    });
}

int rydent_state_load(const char* path, rydent_state** out_state) {
    if (int rc = require(path, "path is null")) return rc;
    if (int rc = require(out_state, "out_state is null")) return rc;
    *out_state = nullptr;
    return guarded([&] {
        auto holder = std::make_unique<rydent_state>();
        holder->state = rydent::load_state(path);
        *out_state = holder.release();
    });
}

int rydent_state_save(const rydent_state* state, const char* path) {
    if (int rc = require(state, "state is null")) return rc;
    if (int rc = require(path, "path is null")) return rc;
    return guarded([&] { rydent::save_state(state->state, path); });
}

int rydent_state_n_atoms(const rydent_state* state) {
    return state == nullptr ? 0 : state->state.n_atoms;
}

double rydent_state_energy(const rydent_state* state) {
    return state == nullptr ? std::numeric_limits<double>::quiet_NaN() : state->state.energy;
}

double rydent_state_gap(const rydent_state* state) {
    return state == nullptr ? std::numeric_limits<double>::quiet_NaN() : state->state.gap;
}

int rydent_state_svn(const rydent_state* state, int size_a, double* out_svn) {
    if (int rc = require(state, "state is null")) return rc;
    if (int rc = require(out_svn, "out_svn is null")) return rc;
    return guarded([&] {
        const rydent::Bipartition part = rydent::make_bipartition(state->state.n_atoms, size_a);
        *out_svn = rydent::von_neumann_entropy(rydent::schmidt_spectrum(state->state, part));
    });
}

int rydent_state_amplitudes(const rydent_state* state, const double** out_data, size_t* out_len) {
    if (int rc = require(state, "state is null")) return rc;
    if (int rc = require(out_data, "out_data is null")) return rc;
    if (int rc = require(out_len, "out_len is null")) return rc;
    *out_data = state->state.amplitudes.data();
    *out_len = state->state.amplitudes.size();
    t_last_error.clear();
    return RYDENT_OK;
}

void rydent_state_destroy(rydent_state* state) { delete state; }

} // extern "C"
