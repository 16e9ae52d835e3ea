#include "rydent/reports.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "rydent/errors.hpp"

namespace rydent {

namespace {

ordered_json json_number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

const char* method_name(FitMethod m) {
    return m == FitMethod::least_squares ? "least_squares" : "half_reduction_fallback";
}

} // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const std::string& path, const std::string& text) {
    const std::filesystem::path target(path);
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw io_error("cannot open " + tmp.string() + " for writing");
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw io_error("write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, target, ec);
    if (ec) throw io_error("rename to " + path + " failed: " + ec.message());
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

ordered_json config_to_json(const RunConfig& cfg) {
    ordered_json j;
    j["n_rungs"] = cfg.n_rungs;
    j["rb_over_a"] = cfg.rb_over_a;
    j["delta_over_omega"] = cfg.delta_over_omega;
    j["size_a"] = resolved_size_a(cfg);
    j["grid_min_exp"] = cfg.grid_min_exp;
    j["grid_max_exp"] = cfg.grid_max_exp;
    j["grid_points"] = cfg.grid_points;
    j["shots"] = cfg.shots;
    j["seed"] = cfg.seed;
    j["tol"] = cfg.tol;
    j["max_iterations"] = cfg.max_iterations;
    j["max_atoms"] = cfg.max_atoms;
    j["max_basis_mb"] = cfg.max_basis_mb;
    j["state_file"] = cfg.state_file;
    j["output_json"] = cfg.output_json;
    j["output_csv"] = cfg.output_csv;
    return j;
}

ordered_json summary_to_json(const EntropySummary& s) {
    ordered_json j;
    j["s_ab"] = s.s_ab;
    j["s_a"] = s.s_a;
    j["s_b"] = s.s_b;
    j["s_a_given_b"] = s.s_a_given_b;
    j["s_b_given_a"] = s.s_b_given_a;
    j["mutual_information"] = s.mutual_information;
    return j;
}

ordered_json fit_to_json(const SigmoidFit& fit) {
    ordered_json j;
    j["d"] = fit.d;
    j["l"] = fit.l;
    j["k"] = fit.k;
    j["x0"] = fit.x0;
    j["residual_rms"] = fit.residual_rms;
    j["converged"] = fit.converged;
    j["method"] = method_name(fit.method);
    return j;
}

ordered_json state_to_json(const GroundState& state) {
    ordered_json j;
    j["n_atoms"] = state.n_atoms;
    j["energy"] = json_number(state.energy);
    j["gap"] = json_number(state.gap);
    j["residual_norm"] = json_number(state.residual_norm);
    j["converged"] = state.converged;
    j["degenerate"] = state.degenerate;
    return j;
}

ordered_json curve_to_json(const FilterCurve& curve) {
    ordered_json j;
    j["n_atoms"] = curve.n_atoms;
    j["size_a"] = curve.part.size_a;
    j["size_b"] = curve.part.size_b;
    j["source"] = curve.source == Source::exact ? "exact" : "empirical";
    j["n_shots"] = curve.n_shots;
    if (curve.cutoff_p_min)
        j["cutoff_p_min"] = *curve.cutoff_p_min;
    else
        j["cutoff_p_min"] = nullptr;
    ordered_json pts = ordered_json::array();
    for (const auto& pt : curve.points) {
        ordered_json p;
        p["p_min"] = pt.p_min;
        p["kept_states"] = pt.kept_states;
        p["kept_mass"] = pt.kept_mass;
        p["summary"] = summary_to_json(pt.summary);
        if (pt.filtered_svn)
            p["filtered_svn"] = *pt.filtered_svn;
        else
            p["filtered_svn"] = nullptr;
        pts.push_back(std::move(p));
    }
    j["points"] = std::move(pts);
    return j;
}

ordered_json report_to_json(const EstimateReport& rep) {
    ordered_json j;
    j["i_unfiltered"] = rep.i_unfiltered;
    j["unfiltered"] = summary_to_json(rep.unfiltered);
    j["p_star"] = rep.p_star ? ordered_json(*rep.p_star) : ordered_json(nullptr);
    j["i_at_inflection"] =
        rep.i_at_inflection ? ordered_json(*rep.i_at_inflection) : ordered_json(nullptr);
    j["i_at_inflection_alt"] =
        rep.i_at_inflection_alt ? ordered_json(*rep.i_at_inflection_alt) : ordered_json(nullptr);
    j["conditional_curve_used"] =
        rep.conditional_curve_used == CondSide::a_given_b ? "a_given_b" : "b_given_a";
    j["fit"] = rep.fit ? fit_to_json(*rep.fit) : ordered_json(nullptr);
    j["fit_alt"] = rep.fit_alt ? fit_to_json(*rep.fit_alt) : ordered_json(nullptr);
    j["reference_svn"] =
        rep.reference_svn ? ordered_json(*rep.reference_svn) : ordered_json(nullptr);
    j["fit_failed"] = rep.fit_failed;
    j["fit_failure"] = rep.fit_failure;
    j["curve"] = curve_to_json(rep.curve);
    return j;
}

std::string curve_csv(const FilterCurve& curve) {
    std::string out = "p_min,kept_states,kept_mass,s_ab,s_a,s_b,s_a_given_b,s_b_given_a,"
                      "mutual_information,filtered_svn\n";
    for (const auto& pt : curve.points) {
        out += format_double(pt.p_min);
        out += ',';
        out += std::to_string(pt.kept_states);
        out += ',';
        out += format_double(pt.kept_mass);
        out += ',';
        out += format_double(pt.summary.s_ab);
        out += ',';
        out += format_double(pt.summary.s_a);
        out += ',';
        out += format_double(pt.summary.s_b);
        out += ',';
        out += format_double(pt.summary.s_a_given_b);
        out += ',';
        out += format_double(pt.summary.s_b_given_a);
        out += ',';
        out += format_double(pt.summary.mutual_information);
        out += ',';
        if (pt.filtered_svn) out += format_double(*pt.filtered_svn);
        out += '\n';
    }
    return out;
}

} // namespace rydent
