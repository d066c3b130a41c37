#pragma once

#include "eclimb/scenario_sim.hpp"

#include <json.hpp>

#include <array>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eclimb {

/// Malformed or semantically invalid scenario configuration. key() is the
/// dotted path of the offending entry when known.
class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
    [[nodiscard]] const std::string& key() const { return key_; }

private:
    std::string key_;
};

/// Scenario file contents in file units (km, km/h). Kept separate from
/// Scenario so that parse -> serialise is exact.
struct ScenarioConfig {
    struct Aircraft {
        double wing_area_m2 = 0.0;
        double mass_kg = 0.0;
        double cd0 = 0.0;
        double cd2 = 0.0;
        double vmax_kmh = 0.0;
        double voltage_v = 0.0;
        double efficiency = 0.0;
        double gravity_ms2 = 9.80665;
    } aircraft;

    struct Path {
        std::array<double, 2> origin_km{};
        std::array<double, 2> cruise_km{};
        double q0_coulombs = 0.0;
        double h_dot_bar_ms = 0.0;
        double sim_step_s = 0.1;
        double atmosphere_step_m = 1.0;
        std::string density_window = "climb";
        bool track_econ_speed = true;
    } scenario;

    struct Event {
        std::optional<std::array<double, 2>> waypoint_km;
        std::optional<double> time_s;
        std::optional<double> ci_in_fraction;
        std::optional<double> ci_in_cs;
    };

    struct CostIndex {
        std::optional<double> ci0_fraction;
        std::optional<double> ci0_value_cs;
        std::string ci_max_mode = "vmax";
        std::optional<double> ci_max_target_v0_kmh;
        std::optional<double> ci_max_value_cs;
        std::string tau_mode = "fraction_of_tc0";
        std::optional<double> tau_factor;
        std::optional<double> tau_value_s;
        std::vector<Event> events;
    } cost_index;

    struct Solver {
        double v_lo_ms = 5.0;
        double rel_tol = 1e-10;
        unsigned max_iterations = 200;
        unsigned scan_points = 50;
    } solver;

    /// Throws ConfigError for unknown keys, missing keys, wrong types or
    /// out-of-range values.
    [[nodiscard]] static ScenarioConfig from_json(const nlohmann::json& j);
    [[nodiscard]] nlohmann::json to_json() const;

    /// Unit conversion into the simulator's SI scenario.
    [[nodiscard]] Scenario to_scenario() const;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads variables from the process environment.
[[nodiscard]] EnvLookup process_environment();

/// Overrides every scalar or array leaf of j from an environment variable
/// named PREFIX_<PATH>, where PATH joins the object keys with '_' in upper
/// case (cost_index.tau.factor -> ECLIMB_COST_INDEX_TAU_FACTOR). Values are
/// parsed as JSON, falling back to a plain string.
void apply_env_overrides(nlohmann::json& j, const EnvLookup& lookup, const std::string& prefix = "ECLIMB");

/// Reads, overrides from the environment and validates a scenario file.
/// Throws ConfigError (parse diagnostics carry line and column) or
/// std::system_error when the file cannot be read.
[[nodiscard]] ScenarioConfig load_config(const std::filesystem::path& path,
                                         const EnvLookup& lookup = process_environment());

}  // namespace eclimb
