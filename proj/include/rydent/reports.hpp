#pragma once

#include <string>

#include <json.hpp>

#include "rydent/estimator.hpp"
#include "rydent/run_config.hpp"

namespace rydent {

using ordered_json = nlohmann::ordered_json;

// Shortest decimal that round-trips the double exactly.
std::string format_double(double v);

// Temp file + rename so readers never observe a partial file.
void write_text_atomic(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

ordered_json config_to_json(const RunConfig& cfg);
ordered_json summary_to_json(const EntropySummary& s);
ordered_json fit_to_json(const SigmoidFit& fit);
ordered_json state_to_json(const GroundState& state); // scalars only
ordered_json curve_to_json(const FilterCurve& curve);
ordered_json report_to_json(const EstimateReport& rep);

// Columns: p_min, kept_states, kept_mass, s_ab, s_a, s_b, s_a_given_b,
// s_b_given_a, mutual_information, filtered_svn (empty cell when absent).
std::string curve_csv(const FilterCurve& curve);

} // namespace rydent
