#pragma once

#include "eclimb/scenario_sim.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace eclimb {

/// All numeric output uses six significant digits.
[[nodiscard]] std::string format_number(double value);

/// Rounds to the nearest second and prints [-]m:ss.
[[nodiscard]] std::string format_mmss(double seconds);

/// Value rounded to six significant digits, for machine-readable records.
[[nodiscard]] double round_sig6(double value);

[[nodiscard]] std::string ci_max_mode_name(CiMaxSpec::Mode mode);

/// Human-readable plan summary.
[[nodiscard]] std::string render_plan_text(const ScenarioResult& result);

/// Machine-readable plan summary.
[[nodiscard]] nlohmann::json plan_record(const ScenarioResult& result);

/// Header t_s,x_m,h_m,v_ms,ci_Cs,q_C,e_J[,v_track_ms] and one row per sample.
void write_profile_csv(std::ostream& out, const ScenarioResult& result);

/// Header v_kmh,v_ms,tau_s,curve,J_C,argmin and one row per (v, curve).
void write_sweep_csv(std::ostream& out, const SweepTable& table);

}  // namespace eclimb
