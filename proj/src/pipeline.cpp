#include "rydent/pipeline.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <thread>
#include <utility>

#include "rydent/distribution.hpp"
#include "rydent/entanglement.hpp"
#include "rydent/errors.hpp"
#include "rydent/estimator.hpp"
#include "rydent/filtering.hpp"
#include "rydent/hamiltonian.hpp"
#include "rydent/lattice.hpp"
#include "rydent/state_io.hpp"
#include "rydent/version.hpp"

namespace rydent {

namespace {

HamiltonianSpec spec_for(const RunConfig& cfg) {
    LadderGeometry geom = build_ladder(cfg.n_rungs);
    CouplingTable coup = couplings(geom, cfg.rb_over_a);
    return make_hamiltonian(std::move(geom), std::move(coup), cfg.delta_over_omega);
}

SolverOptions solver_options(const RunConfig& cfg) {
    SolverOptions opts;
    opts.tol = cfg.tol;
    opts.max_iterations = cfg.max_iterations;
    opts.seed = cfg.seed;
    opts.max_basis_mb = cfg.max_basis_mb;
    return opts;
}

ordered_json geometry_json(const RunConfig& cfg) {
    ordered_json g;
    g["n_rungs"] = cfg.n_rungs;
    g["n_atoms"] = 2 * cfg.n_rungs;
    g["rung_length_over_a"] = 2.0;
    g["boundary"] = "open";
    return g;
}

std::string generator_string() { return std::string("rydent ") + kVersion; }

// Independent runs on a small worker pool; slot i always holds run i, and the
// first failure by index is the one reported, so aggregation is deterministic
// regardless of scheduling.
template <typename Fn>
std::vector<std::invoke_result_t<Fn, std::size_t>> run_indexed(std::size_t n, Fn&& fn) {
    using T = std::invoke_result_t<Fn, std::size_t>;
    std::vector<T> out(n);
    if (n == 0) return out;
    const unsigned hw = std::thread::hardware_concurrency();
    const std::size_t workers = std::min<std::size_t>({n, hw == 0 ? 1 : hw, 4});
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
        return out;
    }
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto body = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                out[i] = fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

void attach_outputs_and_write(const RunConfig& cfg, ordered_json& doc,
                              const std::string* csv_text) {
    ordered_json outs;
    outs["json"] = cfg.output_json.empty() ? ordered_json(nullptr) : ordered_json(cfg.output_json);
    outs["csv"] = (csv_text != nullptr && !cfg.output_csv.empty()) ? ordered_json(cfg.output_csv)
                                                                   : ordered_json(nullptr);
    doc["outputs"] = std::move(outs);
    if (csv_text != nullptr && !cfg.output_csv.empty()) write_text_atomic(cfg.output_csv, *csv_text);
    if (!cfg.output_json.empty()) write_text_atomic(cfg.output_json, doc.dump(2) + "\n");
}

std::string csv_cell(const ordered_json& j) {
    if (j.is_null()) return "";
    if (j.is_boolean()) return j.get<bool>() ? "1" : "0";
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
    if (j.is_number_integer()) return std::to_string(j.get<std::int64_t>());
    return format_double(j.get<double>());
}

struct CoreResult {
    ordered_json doc;
    std::string csv;
};

// One full analysis at a fixed configuration: solve (or reuse), build the
// distribution, sweep, fit.
CoreResult estimate_core(const RunConfig& cfg) {
    bool cache_hit = false;
    GroundState state = solve_or_load(cfg, &cache_hit);
    const Bipartition part = make_bipartition(state.n_atoms, resolved_size_a(cfg));
    const std::vector<double> grid =
        make_pmin_grid(cfg.grid_min_exp, cfg.grid_max_exp, cfg.grid_points);

    EstimateReport rep;
    std::string source;
    if (cfg.shots == 0) {
        const BitstringDistribution dist = exact_distribution(state);
        rep = estimate(dist, part, grid, &state);
        source = "exact";
    } else {
        const BitstringDistribution exact = exact_distribution(state);
        const auto counts = sample_shots(exact, cfg.shots, cfg.seed);
        const BitstringDistribution dist = empirical_distribution(counts, state.n_atoms);
        rep = estimate(dist, part, grid, nullptr);
        rep.reference_svn = von_neumann_entropy(schmidt_spectrum(state, part));
        source = "sampled";
    }

    CoreResult res;
    res.doc["config"] = config_to_json(cfg);
    res.doc["geometry"] = geometry_json(cfg);
    res.doc["state"] = state_to_json(state);
    res.doc["cache_hit"] = cache_hit;
    res.doc["source"] = source;
    res.doc["report"] = report_to_json(rep);
    res.csv = curve_csv(rep.curve);
    return res;
}

const char* kSweepCsvHeader = "n_rungs,rb_over_a,size_a,shots,energy,gap,reference_svn,"
                              "i_unfiltered,p_star,i_at_inflection,i_at_inflection_alt,"
                              "fit_method,fit_converged\n";

void append_sweep_row(std::string& csv, const ordered_json& run) {
    const ordered_json& c = run.at("config");
    const ordered_json& st = run.at("state");
    const ordered_json& rep = run.at("report");
    const ordered_json& fit = rep.at("fit");
    csv += csv_cell(c.at("n_rungs"));
    csv += ',';
    csv += csv_cell(c.at("rb_over_a"));
    csv += ',';
    csv += csv_cell(c.at("size_a"));
    csv += ',';
    csv += csv_cell(c.at("shots"));
    csv += ',';
    csv += csv_cell(st.at("energy"));
    csv += ',';
    csv += csv_cell(st.at("gap"));
    csv += ',';
    csv += csv_cell(rep.at("reference_svn"));
    csv += ',';
    csv += csv_cell(rep.at("i_unfiltered"));
    csv += ',';
    csv += csv_cell(rep.at("p_star"));
    csv += ',';
    csv += csv_cell(rep.at("i_at_inflection"));
    csv += ',';
    csv += csv_cell(rep.at("i_at_inflection_alt"));
    csv += ',';
    csv += fit.is_null() ? "" : csv_cell(fit.at("method"));
    csv += ',';
    csv += fit.is_null() ? "" : csv_cell(fit.at("converged"));
    csv += '\n';
}

ordered_json sweep_doc(const char* command, const RunConfig& base,
                       const std::vector<CoreResult>& runs) {
    ordered_json doc;
    doc["command"] = command;
    doc["generator"] = generator_string();
    doc["config"] = config_to_json(base);
    ordered_json arr = ordered_json::array();
    std::string csv = kSweepCsvHeader;
    for (const auto& r : runs) {
        append_sweep_row(csv, r.doc);
        arr.push_back(r.doc);
    }
    doc["runs"] = std::move(arr);
    attach_outputs_and_write(base, doc, &csv);
    return doc;
}

} // namespace

GroundState solve_or_load(const RunConfig& cfg, bool* cache_hit) {
    if (cache_hit) *cache_hit = false;
    if (!cfg.state_file.empty() && std::filesystem::exists(cfg.state_file)) {
        GroundState state = load_state(cfg.state_file);
        const int n_atoms = 2 * cfg.n_rungs;
        if (state.n_atoms != n_atoms)
            throw validation_error("state cache " + cfg.state_file + " holds " +
                                   std::to_string(state.n_atoms) + " atoms, configuration needs " +
                                   std::to_string(n_atoms));
        const HamiltonianSpec spec = spec_for(cfg);
        const HamiltonianOperator op(spec);
        std::vector<double> hv(state.amplitudes.size());
        op.apply(state.amplitudes.data(), hv.data());
        double energy = 0.0;
        for (std::size_t i = 0; i < hv.size(); ++i) energy += state.amplitudes[i] * hv[i];
        double res2 = 0.0;
        for (std::size_t i = 0; i < hv.size(); ++i) {
            const double r = hv[i] - energy * state.amplitudes[i];
            res2 += r * r;
        }
        state.energy = energy;
        state.residual_norm = std::sqrt(res2);
        if (!(state.residual_norm <= 1e-6))
            throw validation_error("state cache " + cfg.state_file +
                                   " is not an eigenstate of the configured Hamiltonian "
                                   "(residual " +
                                   format_double(state.residual_norm) +
                                   "); delete it or match the configuration it was built with");
        if (cache_hit) *cache_hit = true;
        return state;
    }
    GroundState state = ground_state(spec_for(cfg), solver_options(cfg));
    if (!cfg.state_file.empty()) save_state(state, cfg.state_file);
    return state;
}

ordered_json run_ground_state(const RunConfig& cfg) {
    validate_config(cfg);
    const GroundState state = ground_state(spec_for(cfg), solver_options(cfg));
    if (!cfg.state_file.empty()) save_state(state, cfg.state_file);
    const Bipartition part = make_bipartition(state.n_atoms, resolved_size_a(cfg));
    const double svn = von_neumann_entropy(schmidt_spectrum(state, part));

    ordered_json doc;
    doc["command"] = "ground-state";
    doc["generator"] = generator_string();
    doc["config"] = config_to_json(cfg);
    doc["geometry"] = geometry_json(cfg);
    doc["state"] = state_to_json(state);
    doc["bipartition"] = ordered_json{{"size_a", part.size_a}, {"size_b", part.size_b}};
    doc["svn"] = svn;
    doc["state_saved"] = !cfg.state_file.empty();

    std::string csv = "n_rungs,rb_over_a,delta_over_omega,size_a,energy,gap,svn,"
                      "residual_norm,converged,degenerate\n";
    csv += std::to_string(cfg.n_rungs) + ',' + format_double(cfg.rb_over_a) + ',' +
           format_double(cfg.delta_over_omega) + ',' + std::to_string(part.size_a) + ',' +
           format_double(state.energy) + ',' + format_double(state.gap) + ',' +
           format_double(svn) + ',' + format_double(state.residual_norm) + ',' +
           (state.converged ? "1" : "0") + ',' + (state.degenerate ? "1" : "0") + '\n';
    attach_outputs_and_write(cfg, doc, &csv);
    return doc;
}

ordered_json run_estimate(const RunConfig& cfg) {
    validate_config(cfg);
    CoreResult core = estimate_core(cfg);
    ordered_json doc;
    doc["command"] = "estimate";
    doc["generator"] = generator_string();
    for (auto& [key, value] : core.doc.items()) doc[key] = std::move(value);
    attach_outputs_and_write(cfg, doc, &core.csv);
    return doc;
}

ordered_json run_sweep_volume(const RunConfig& cfg, const std::vector<int>& rungs) {
    if (rungs.empty()) throw validation_error("sweep-volume: empty rung list");
    std::vector<RunConfig> cfgs;
    cfgs.reserve(rungs.size());
    for (int r : rungs) {
        RunConfig c = cfg;
        c.n_rungs = r;
        c.state_file.clear(); // a shared cache path cannot serve several sizes
        c.output_json.clear();
        c.output_csv.clear();
        validate_config(c);
        cfgs.push_back(std::move(c));
    }
    const auto runs = run_indexed(cfgs.size(), [&](std::size_t i) { return estimate_core(cfgs[i]); });
    return sweep_doc("sweep-volume", cfg, runs);
}

ordered_json run_sweep_spacing(const RunConfig& cfg, const std::vector<double>& rb_values) {
    if (rb_values.empty()) throw validation_error("sweep-spacing: empty rb_over_a list");
    std::vector<RunConfig> cfgs;
    cfgs.reserve(rb_values.size());
    for (double rb : rb_values) {
        RunConfig c = cfg;
        c.rb_over_a = rb;
        c.state_file.clear();
        c.output_json.clear();
        c.output_csv.clear();
        validate_config(c);
        cfgs.push_back(std::move(c));
    }
    const auto runs = run_indexed(cfgs.size(), [&](std::size_t i) { return estimate_core(cfgs[i]); });
    return sweep_doc("sweep-spacing", cfg, runs);
}

ordered_json run_sweep_bipartition(const RunConfig& cfg, const std::vector<int>& sizes) {
    if (sizes.empty()) throw validation_error("sweep-bipartition: empty size_a list");
    validate_config(cfg);
    const int n_atoms = 2 * cfg.n_rungs;
    std::vector<RunConfig> cfgs;
    cfgs.reserve(sizes.size());
    for (int s : sizes) {
        RunConfig c = cfg;
        c.size_a = s;
        c.output_json.clear();
        c.output_csv.clear();
        validate_config(c);
        cfgs.push_back(std::move(c));
    }

    // One solve and one shot sample serve every cut.
    bool cache_hit = false;
    GroundState state = solve_or_load(cfg, &cache_hit);
    const std::vector<double> grid =
        make_pmin_grid(cfg.grid_min_exp, cfg.grid_max_exp, cfg.grid_points);
    const BitstringDistribution exact = exact_distribution(state);
    BitstringDistribution dist;
    std::string source;
    if (cfg.shots == 0) {
        dist = exact;
        source = "exact";
    } else {
        const auto counts = sample_shots(exact, cfg.shots, cfg.seed);
        dist = empirical_distribution(counts, state.n_atoms);
        source = "sampled";
    }

    const auto runs = run_indexed(cfgs.size(), [&](std::size_t i) {
        const Bipartition part = make_bipartition(n_atoms, resolved_size_a(cfgs[i]));
        EstimateReport rep;
        if (cfg.shots == 0) {
            rep = estimate(dist, part, grid, &state);
        } else {
            rep = estimate(dist, part, grid, nullptr);
            rep.reference_svn = von_neumann_entropy(schmidt_spectrum(state, part));
        }
        CoreResult res;
        res.doc["config"] = config_to_json(cfgs[i]);
        res.doc["geometry"] = geometry_json(cfgs[i]);
        res.doc["state"] = state_to_json(state);
        res.doc["cache_hit"] = cache_hit;
        res.doc["source"] = source;
        res.doc["report"] = report_to_json(rep);
        res.csv = curve_csv(rep.curve);
        return res;
    });
    return sweep_doc("sweep-bipartition", cfg, runs);
}

ordered_json run_phase_scan(const RunConfig& cfg, const std::vector<double>& rb_grid,
                            const std::vector<double>& delta_grid) {
    if (rb_grid.empty() || delta_grid.empty())
        throw validation_error("phase-scan: both grids must be non-empty");
    std::vector<RunConfig> cfgs;
    cfgs.reserve(rb_grid.size() * delta_grid.size());
    for (double rb : rb_grid) {
        for (double delta : delta_grid) {
            RunConfig c = cfg;
            c.rb_over_a = rb;
            c.delta_over_omega = delta;
            c.state_file.clear();
            c.output_json.clear();
            c.output_csv.clear();
            validate_config(c);
            cfgs.push_back(std::move(c));
        }
    }

    const auto cells = run_indexed(cfgs.size(), [&](std::size_t i) {
        const RunConfig& c = cfgs[i];
        const GroundState state = ground_state(spec_for(c), solver_options(c));
        const Bipartition part = make_bipartition(state.n_atoms, resolved_size_a(c));
        const double svn = von_neumann_entropy(schmidt_spectrum(state, part));
        const EntropySummary summary = entropy_summary(exact_distribution(state), part);
        ordered_json cell;
        cell["rb_over_a"] = c.rb_over_a;
        cell["delta_over_omega"] = c.delta_over_omega;
        cell["energy"] = state.energy;
        cell["gap"] = state.gap;
        cell["converged"] = state.converged;
        cell["degenerate"] = state.degenerate;
        cell["svn"] = svn;
        cell["summary"] = summary_to_json(summary);
        return cell;
    });

    ordered_json doc;
    doc["command"] = "phase-scan";
    doc["generator"] = generator_string();
    doc["config"] = config_to_json(cfg);
    doc["rb_grid"] = rb_grid;
    doc["delta_grid"] = delta_grid;
    doc["bipartition"] =
        ordered_json{{"size_a", resolved_size_a(cfg)},
                     {"size_b", 2 * cfg.n_rungs - resolved_size_a(cfg)}};
    ordered_json arr = ordered_json::array();
    std::string csv = "rb_over_a,delta_over_omega,energy,gap,svn,s_ab,s_a,s_b,"
                      "mutual_information\n";
    for (const auto& cell : cells) {
        csv += csv_cell(cell.at("rb_over_a")) + ',' + csv_cell(cell.at("delta_over_omega")) + ',' +
               csv_cell(cell.at("energy")) + ',' + csv_cell(cell.at("gap")) + ',' +
               csv_cell(cell.at("svn")) + ',' + csv_cell(cell.at("summary").at("s_ab")) + ',' +
               csv_cell(cell.at("summary").at("s_a")) + ',' +
               csv_cell(cell.at("summary").at("s_b")) + ',' +
               csv_cell(cell.at("summary").at("mutual_information")) + '\n';
        arr.push_back(cell);
    }
    doc["cells"] = std::move(arr);
    attach_outputs_and_write(cfg, doc, &csv);
    return doc;
}

ordered_json run_ingest(const RunConfig& cfg, const std::string& input_path, ShotFormat format) {
    validate_config(cfg);
    const int n_atoms = 2 * cfg.n_rungs;
    const ShotData shots = read_shot_file(input_path, format, n_atoms);
    const BitstringDistribution dist = empirical_distribution(shots.counts, n_atoms);
    const Bipartition part = make_bipartition(n_atoms, resolved_size_a(cfg));
    const std::vector<double> grid =
        make_pmin_grid(cfg.grid_min_exp, cfg.grid_max_exp, cfg.grid_points);
    const EstimateReport rep = estimate(dist, part, grid, nullptr);

    ordered_json doc;
    doc["command"] = "ingest";
    doc["generator"] = generator_string();
    doc["config"] = config_to_json(cfg);
    doc["geometry"] = geometry_json(cfg);
    doc["input"] = input_path;
    doc["format"] = format == ShotFormat::lines ? "lines" : "csv";
    doc["n_shots"] = dist.n_shots;
    doc["distinct_bitstrings"] = dist.entries.size();
    doc["source"] = "ingested";
    doc["report"] = report_to_json(rep);
    std::string csv = curve_csv(rep.curve);
    attach_outputs_and_write(cfg, doc, &csv);
    return doc;
}

ordered_json run_sample(const RunConfig& cfg, const std::string& output_path, ShotFormat format) {
    validate_config(cfg);
    if (cfg.shots < 1) throw validation_error("sample: shots must be >= 1");
    bool cache_hit = false;
    const GroundState state = solve_or_load(cfg, &cache_hit);
    const BitstringDistribution dist = exact_distribution(state);
    const auto counts = sample_shots(dist, cfg.shots, cfg.seed);
    write_shot_file(output_path, counts, state.n_atoms, format);

    ordered_json doc;
    doc["command"] = "sample";
    doc["generator"] = generator_string();
    doc["config"] = config_to_json(cfg);
    doc["geometry"] = geometry_json(cfg);
    doc["state"] = state_to_json(state);
    doc["cache_hit"] = cache_hit;
    doc["output"] = output_path;
    doc["format"] = format == ShotFormat::lines ? "lines" : "csv";
    doc["n_shots"] = cfg.shots;
    doc["distinct_bitstrings"] = counts.size();
    attach_outputs_and_write(cfg, doc, nullptr);
    return doc;
}

} // namespace rydent
