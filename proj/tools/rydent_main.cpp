// rydent: ground states of two-leg Rydberg ladders and entanglement-entropy
// estimates from filtered classical mutual information. Pure client of the
// rydent C API.

#include <cstdio>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rydent.h"

namespace {

using nlohmann::json;

struct ConfigKey {
    const char* name;
    const char* help;
};

const std::vector<ConfigKey>& config_keys() {
    static const std::vector<ConfigKey> keys = {
        {"n_rungs", "ladder rungs (atoms = 2 * rungs)"},
        {"rb_over_a", "blockade radius over rung spacing"},
        {"delta_over_omega", "detuning over Rabi frequency"},
        {"size_a", "atoms in subsystem A (-1: half cut)"},
        {"grid_min_exp", "log10 of the smallest nonzero p_min"},
        {"grid_max_exp", "log10 of the largest p_min"},
        {"grid_points", "nonzero p_min grid points"},
        {"shots", "bitstring samples to draw (0: analyze exactly)"},
        {"seed", "RNG seed for sampling and the solver"},
        {"tol", "solver residual tolerance"},
        {"max_iterations", "solver matrix-vector product budget"},
        {"max_atoms", "exact-solve ceiling; raising it acknowledges the memory cost"},
        {"max_basis_mb", "Krylov basis memory cap in MiB"},
        {"state_file", "ground-state cache path"},
        {"output_json", "write the full JSON report here"},
        {"output_csv", "write plot-ready CSV here"},
    };
    return keys;
}

struct CommandOpts {
    CLI::App* sub = nullptr;
    std::map<std::string, std::string> kv;
    std::string config_path;
    bool print_json = false;
};

CommandOpts* add_command(CLI::App& app, std::vector<std::unique_ptr<CommandOpts>>& store,
                         const std::string& name, const std::string& desc) {
    auto opts = std::make_unique<CommandOpts>();
    opts->sub = app.add_subcommand(name, desc);
    opts->sub->add_option("--config", opts->config_path, "key=value config file (flags override)");
    opts->sub->add_flag("--print-json", opts->print_json, "dump the full JSON report to stdout");
    for (const auto& key : config_keys())
        opts->sub->add_option("--" + std::string(key.name), opts->kv[key.name], key.help);
    store.push_back(std::move(opts));
    return store.back().get();
}

using ConfigPtr = std::unique_ptr<rydent_config, decltype(&rydent_config_destroy)>;

int report_error(int status) {
    std::fprintf(stderr, "error: %s\n", rydent_last_error());
    return status;
}

// 0 on success; otherwise the failing status (message already printed).
int build_config(const CommandOpts& opts, ConfigPtr& out) {
    ConfigPtr cfg(rydent_config_create(), &rydent_config_destroy);
    if (!cfg) {
        std::fprintf(stderr, "error: out of memory\n");
        return RYDENT_ERROR_INTERNAL;
    }
    if (!opts.config_path.empty()) {
        if (int rc = rydent_config_load_file(cfg.get(), opts.config_path.c_str()))
            return report_error(rc);
    }
    for (const auto& key : config_keys()) {
        if (opts.sub->count("--" + std::string(key.name)) == 0) continue;
        if (int rc = rydent_config_set(cfg.get(), key.name, opts.kv.at(key.name).c_str()))
            return report_error(rc);
    }
    out = std::move(cfg);
    return 0;
}

void print_kv(const char* key, const std::string& value) {
    std::printf("%-20s %s\n", key, value.c_str());
}

std::string num(const json& j) { return j.is_null() ? "n/a" : j.dump(); }

void print_state(const json& st) {
    print_kv("energy", num(st.at("energy")));
    print_kv("gap", num(st.at("gap")));
    print_kv("residual_norm", num(st.at("residual_norm")));
    print_kv("converged", st.at("converged").get<bool>() ? "yes" : "no");
    if (st.at("degenerate").get<bool>())
        std::fprintf(stderr, "warning: gap within the degeneracy threshold; the entanglement "
                             "of a degenerate ground space depends on the chosen state\n");
}

void print_report(const json& rep) {
    print_kv("i_unfiltered", num(rep.at("i_unfiltered")));
    if (!rep.at("reference_svn").is_null())
        print_kv("reference_svn", num(rep.at("reference_svn")));
    if (rep.at("fit_failed").get<bool>()) {
        print_kv("fit", "failed: " + rep.at("fit_failure").get<std::string>());
    } else {
        const json& fit = rep.at("fit");
        print_kv("p_star", num(rep.at("p_star")));
        print_kv("i_at_inflection", num(rep.at("i_at_inflection")));
        print_kv("fit", fit.at("method").get<std::string>() +
                            (fit.at("converged").get<bool>() ? " (converged)" : " (not converged)"));
    }
    if (!rep.at("i_at_inflection_alt").is_null())
        print_kv("i_at_inflection_alt", num(rep.at("i_at_inflection_alt")));
}

void print_outputs(const json& doc) {
    const json& outs = doc.at("outputs");
    if (!outs.at("json").is_null()) print_kv("json_file", outs.at("json").get<std::string>());
    if (!outs.at("csv").is_null()) print_kv("csv_file", outs.at("csv").get<std::string>());
}

void print_sweep_runs(const json& doc, const char* key) {
    for (const json& run : doc.at("runs")) {
        const json& rep = run.at("report");
        std::string line = std::string(key) + " " + num(run.at("config").at(key));
        line += "  i_unfiltered " + num(rep.at("i_unfiltered"));
        line += "  i_at_inflection " + num(rep.at("i_at_inflection"));
        if (!rep.at("reference_svn").is_null())
            line += "  reference_svn " + num(rep.at("reference_svn"));
        std::printf("%s\n", line.c_str());
    }
}

int finish(const CommandOpts& opts, char* json_text, const char* kind) {
    std::unique_ptr<char, decltype(&rydent_string_free)> guard(json_text, &rydent_string_free);
    json doc = json::parse(json_text);
    if (std::string(kind) == "ground-state") {
        print_state(doc.at("state"));
        print_kv("svn", num(doc.at("svn")));
    } else if (std::string(kind) == "estimate" || std::string(kind) == "ingest") {
        if (doc.contains("n_shots")) print_kv("n_shots", num(doc.at("n_shots")));
        print_kv("source", doc.at("source").get<std::string>());
        print_report(doc.at("report"));
    } else if (std::string(kind) == "sweep-volume") {
        print_sweep_runs(doc, "n_rungs");
    } else if (std::string(kind) == "sweep-spacing") {
        print_sweep_runs(doc, "rb_over_a");
    } else if (std::string(kind) == "sweep-bipartition") {
        print_sweep_runs(doc, "size_a");
    } else if (std::string(kind) == "phase-scan") {
        for (const json& cell : doc.at("cells")) {
            std::printf("rb_over_a %s  delta_over_omega %s  svn %s  mutual_information %s\n",
                        num(cell.at("rb_over_a")).c_str(),
                        num(cell.at("delta_over_omega")).c_str(), num(cell.at("svn")).c_str(),
                        num(cell.at("summary").at("mutual_information")).c_str());
        }
    } else if (std::string(kind) == "sample") {
        print_kv("n_shots", num(doc.at("n_shots")));
        print_kv("distinct_bitstrings", num(doc.at("distinct_bitstrings")));
        print_kv("shot_file", doc.at("output").get<std::string>());
    }
    print_outputs(doc);
    if (opts.print_json) std::printf("%s", json_text);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rydberg-ladder ground states and filtered mutual-information "
                 "entanglement estimates"};
    app.set_version_flag("--version", rydent_version());
    app.require_subcommand(1);

    std::vector<std::unique_ptr<CommandOpts>> store;
    CommandOpts* ground =
        add_command(app, store, "ground-state", "Solve the ground state; print energy, gap, S^vN");
    CommandOpts* estimate = add_command(
        app, store, "estimate", "Filtered mutual-information estimate of S^vN (exact or sampled)");
    CommandOpts* volume =
        add_command(app, store, "sweep-volume", "Estimates across ladder sizes");
    CommandOpts* spacing =
        add_command(app, store, "sweep-spacing", "Estimates across rb_over_a values");
    CommandOpts* bipart = add_command(app, store, "sweep-bipartition",
                                      "Estimates across cut positions (single solve)");
    CommandOpts* phase = add_command(app, store, "phase-scan",
                                     "S^vN and classical entropies over an rb/delta grid");
    CommandOpts* ingest = add_command(app, store, "ingest", "Analyze an existing shot file");
    CommandOpts* sample = add_command(app, store, "sample",
                                      "Draw bitstring shots from the exact distribution");

    std::vector<int> rung_list;
    volume->sub->add_option("--rungs", rung_list, "comma-separated rung counts")
        ->required()
        ->delimiter(',');
    std::vector<double> rb_list;
    spacing->sub->add_option("--rb_list", rb_list, "comma-separated rb_over_a values")
        ->required()
        ->delimiter(',');
    std::vector<int> size_list;
    bipart->sub->add_option("--sizes", size_list, "comma-separated size_a values")
        ->required()
        ->delimiter(',');
    std::vector<double> rb_grid, delta_grid;
    phase->sub->add_option("--rb_grid", rb_grid, "comma-separated rb_over_a grid")
        ->required()
        ->delimiter(',');
    phase->sub->add_option("--delta_grid", delta_grid, "comma-separated delta_over_omega grid")
        ->required()
        ->delimiter(',');
    std::string ingest_path, ingest_format = "lines";
    ingest->sub->add_option("--input", ingest_path, "shot file to analyze")->required();
    ingest->sub->add_option("--format", ingest_format, "lines | csv");
    std::string sample_path, sample_format = "lines";
    sample->sub->add_option("--output", sample_path, "where to write the shots")->required();
    sample->sub->add_option("--format", sample_format, "lines | csv");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : RYDENT_ERROR_VALIDATION;
    }

    CommandOpts* active = nullptr;
    for (auto& opts : store)
        if (opts->sub->parsed()) active = opts.get();
    if (active == nullptr) {
        std::fprintf(stderr, "error: no command selected\n");
        return RYDENT_ERROR_VALIDATION;
    }

    ConfigPtr cfg(nullptr, &rydent_config_destroy);
    if (int rc = build_config(*active, cfg)) return rc;

    char* out = nullptr;
    int rc = RYDENT_OK;
    const char* kind = active->sub->get_name().c_str();
    if (active == ground) {
        rc = rydent_run_ground_state(cfg.get(), &out);
    } else if (active == estimate) {
        rc = rydent_run_estimate(cfg.get(), &out);
    } else if (active == volume) {
        rc = rydent_run_sweep_volume(cfg.get(), rung_list.data(), rung_list.size(), &out);
    } else if (active == spacing) {
        rc = rydent_run_sweep_spacing(cfg.get(), rb_list.data(), rb_list.size(), &out);
    } else if (active == bipart) {
        rc = rydent_run_sweep_bipartition(cfg.get(), size_list.data(), size_list.size(), &out);
    } else if (active == phase) {
        rc = rydent_run_phase_scan(cfg.get(), rb_grid.data(), rb_grid.size(), delta_grid.data(),
                                   delta_grid.size(), &out);
    } else if (active == ingest) {
        rc = rydent_run_ingest(cfg.get(), ingest_path.c_str(), ingest_format.c_str(), &out);
    } else if (active == sample) {
        rc = rydent_run_sample(cfg.get(), sample_path.c_str(), sample_format.c_str(), &out);
    }
    if (rc != RYDENT_OK) return report_error(rc);
    return finish(*active, out, kind);
}
