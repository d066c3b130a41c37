#include "eclimb/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <system_error>

namespace eclimb {

using nlohmann::json;

namespace {

std::string join(const std::string& parent, const std::string& key) {
    return parent.empty() ? key : parent + "." + key;
}

// Typed access to one JSON object, tracking its dotted path.
class Reader {
public:
    Reader(const json& j, std::string path, std::set<std::string> allowed) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError(path_, "expected an object");
        }
        for (const auto& [key, value] : j_.items()) {
            if (!allowed.count(key)) {
                throw ConfigError(join(path_, key), "unknown key");
            }
        }
    }

    [[nodiscard]] bool has(const std::string& key) const { return j_.contains(key); }

    [[nodiscard]] const json& at(const std::string& key) const {
        if (!has(key)) {
            throw ConfigError(join(path_, key), "missing required key");
        }
        return j_.at(key);
    }

    [[nodiscard]] double number(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_number()) {
            throw ConfigError(join(path_, key), "expected a number");
        }
        return v.get<double>();
    }

    [[nodiscard]] double number(const std::string& key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    [[nodiscard]] std::optional<double> optional_number(const std::string& key) const {
        return has(key) ? std::optional<double>(number(key)) : std::nullopt;
    }

    [[nodiscard]] double positive(const std::string& key) const {
        const double v = number(key);
        if (!(v > 0.0)) throw ConfigError(join(path_, key), "must be positive");
        return v;
    }

    [[nodiscard]] double fraction(const std::string& key) const {
        const double v = number(key);
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(join(path_, key), "fraction must lie in [0, 1]");
        return v;
    }

    [[nodiscard]] unsigned count(const std::string& key, unsigned fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_number_unsigned() || v.get<unsigned>() == 0) {
            throw ConfigError(join(path_, key), "expected a positive integer");
        }
        return v.get<unsigned>();
    }

    [[nodiscard]] std::string text(const std::string& key, const std::set<std::string>& choices,
                                   const std::string& fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_string() || !choices.count(v.get<std::string>())) {
            std::string list;
            for (const auto& c : choices) list += (list.empty() ? "" : ", ") + c;
            throw ConfigError(join(path_, key), "expected one of: " + list);
        }
        return v.get<std::string>();
    }

    [[nodiscard]] bool flag(const std::string& key, bool fallback) const {
        if (!has(key)) return fallback;
        const json& v = at(key);
        if (!v.is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
        return v.get<bool>();
    }

    [[nodiscard]] std::array<double, 2> point(const std::string& key) const {
        const json& v = at(key);
        if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
            throw ConfigError(join(path_, key), "expected [x_km, h_km]");
        }
        return {v[0].get<double>(), v[1].get<double>()};
    }

    [[nodiscard]] Reader child(const std::string& key, std::set<std::string> allowed) const {
        return Reader(at(key), join(path_, key), std::move(allowed));
    }

    [[nodiscard]] const std::string& path() const { return path_; }

private:
    const json& j_;
    std::string path_;
};

Waypoint to_waypoint(const std::array<double, 2>& km) { return {km[0] * 1000.0, km[1] * 1000.0}; }

CiValue ci_value(const std::optional<double>& fraction, const std::optional<double>& cs) {
    if (fraction) return {CiValue::Unit::FractionOfMax, *fraction};
    return {CiValue::Unit::CoulombsPerSecond, *cs};
}

}  // namespace

ScenarioConfig ScenarioConfig::from_json(const json& j) {
    ScenarioConfig cfg;
    const Reader root(j, "", {"aircraft", "scenario", "cost_index", "solver"});

    const Reader a = root.child("aircraft", {"wing_area_m2", "mass_kg", "cd0", "cd2", "vmax_kmh", "voltage_v",
                                             "efficiency", "gravity_ms2"});
    cfg.aircraft.wing_area_m2 = a.positive("wing_area_m2");
    cfg.aircraft.mass_kg = a.positive("mass_kg");
    cfg.aircraft.cd0 = a.positive("cd0");
    cfg.aircraft.cd2 = a.positive("cd2");
    cfg.aircraft.vmax_kmh = a.positive("vmax_kmh");
    cfg.aircraft.voltage_v = a.positive("voltage_v");
    cfg.aircraft.efficiency = a.fraction("efficiency");
    if (cfg.aircraft.efficiency == 0.0) throw ConfigError("aircraft.efficiency", "must be positive");
    cfg.aircraft.gravity_ms2 = a.number("gravity_ms2", cfg.aircraft.gravity_ms2);
    if (!(cfg.aircraft.gravity_ms2 > 0.0)) throw ConfigError("aircraft.gravity_ms2", "must be positive");

    const Reader s = root.child("scenario", {"origin_km", "cruise_km", "q0_coulombs", "h_dot_bar_ms", "sim_step_s",
                                             "atmosphere_step_m", "density_window", "track_econ_speed"});
    cfg.scenario.origin_km = s.point("origin_km");
    cfg.scenario.cruise_km = s.point("cruise_km");
    cfg.scenario.q0_coulombs = s.number("q0_coulombs");
    if (cfg.scenario.q0_coulombs < 0.0) throw ConfigError("scenario.q0_coulombs", "must be non-negative");
    cfg.scenario.h_dot_bar_ms = s.number("h_dot_bar_ms");
    if (cfg.scenario.h_dot_bar_ms < 0.0) throw ConfigError("scenario.h_dot_bar_ms", "must be non-negative");
    if (s.has("sim_step_s")) cfg.scenario.sim_step_s = s.positive("sim_step_s");
    if (s.has("atmosphere_step_m")) cfg.scenario.atmosphere_step_m = s.positive("atmosphere_step_m");
    cfg.scenario.density_window = s.text("density_window", {"climb", "segment"}, cfg.scenario.density_window);
    cfg.scenario.track_econ_speed = s.flag("track_econ_speed", cfg.scenario.track_econ_speed);

    const Reader c = root.child("cost_index", {"ci0_fraction", "ci0_value_cs", "ci_max", "tau", "events"});
    if (c.has("ci0_fraction") == c.has("ci0_value_cs")) {
        throw ConfigError("cost_index", "exactly one of ci0_fraction or ci0_value_cs is required");
    }
    if (c.has("ci0_fraction")) cfg.cost_index.ci0_fraction = c.fraction("ci0_fraction");
    if (c.has("ci0_value_cs")) {
        cfg.cost_index.ci0_value_cs = c.number("ci0_value_cs");
        if (*cfg.cost_index.ci0_value_cs < 0.0) throw ConfigError("cost_index.ci0_value_cs", "must be non-negative");
    }

    const Reader m = c.child("ci_max", {"mode", "target_v0_kmh", "value_cs"});
    cfg.cost_index.ci_max_mode = m.text("mode", {"vmax", "calibrated", "explicit"}, "");
    if (cfg.cost_index.ci_max_mode.empty()) throw ConfigError("cost_index.ci_max.mode", "missing required key");
    if (m.has("target_v0_kmh")) cfg.cost_index.ci_max_target_v0_kmh = m.positive("target_v0_kmh");
    if (m.has("value_cs")) cfg.cost_index.ci_max_value_cs = m.positive("value_cs");
    if (cfg.cost_index.ci_max_mode == "calibrated" && !cfg.cost_index.ci_max_target_v0_kmh) {
        throw ConfigError("cost_index.ci_max.target_v0_kmh", "required for mode \"calibrated\"");
    }
    if (cfg.cost_index.ci_max_mode == "calibrated" && !cfg.cost_index.ci0_fraction) {
        throw ConfigError("cost_index.ci0_fraction", "required for ci_max mode \"calibrated\"");
    }
    if (cfg.cost_index.ci_max_mode == "explicit" && !cfg.cost_index.ci_max_value_cs) {
        throw ConfigError("cost_index.ci_max.value_cs", "required for mode \"explicit\"");
    }

    const Reader t = c.child("tau", {"mode", "factor", "value_s"});
    cfg.cost_index.tau_mode = t.text("mode", {"fraction_of_tc0", "seconds", "infinite"}, "");
    if (cfg.cost_index.tau_mode.empty()) throw ConfigError("cost_index.tau.mode", "missing required key");
    if (t.has("factor")) cfg.cost_index.tau_factor = t.positive("factor");
    if (t.has("value_s")) cfg.cost_index.tau_value_s = t.positive("value_s");
    if (cfg.cost_index.tau_mode == "seconds" && !cfg.cost_index.tau_value_s) {
        throw ConfigError("cost_index.tau.value_s", "required for mode \"seconds\"");
    }

    if (c.has("events")) {
        const json& events = c.at("events");
        if (!events.is_array()) throw ConfigError("cost_index.events", "expected a list");
        for (std::size_t i = 0; i < events.size(); ++i) {
            const Reader e(events[i], "cost_index.events[" + std::to_string(i) + "]",
                           {"waypoint_km", "time_s", "ci_in_fraction", "ci_in_cs"});
            Event ev;
            if (e.has("waypoint_km") == e.has("time_s")) {
                throw ConfigError(e.path(), "exactly one of waypoint_km or time_s is required");
            }
            if (e.has("ci_in_fraction") == e.has("ci_in_cs")) {
                throw ConfigError(e.path(), "exactly one of ci_in_fraction or ci_in_cs is required");
            }
            if (e.has("waypoint_km")) ev.waypoint_km = e.point("waypoint_km");
            if (e.has("time_s")) ev.time_s = e.positive("time_s");
            if (e.has("ci_in_fraction")) ev.ci_in_fraction = e.fraction("ci_in_fraction");
            if (e.has("ci_in_cs")) {
                ev.ci_in_cs = e.number("ci_in_cs");
                if (*ev.ci_in_cs < 0.0) throw ConfigError(join(e.path(), "ci_in_cs"), "must be non-negative");
            }
            cfg.cost_index.events.push_back(ev);
        }
    }

    if (root.has("solver")) {
        const Reader v = root.child("solver", {"v_lo_ms", "rel_tol", "max_iterations", "scan_points"});
        if (v.has("v_lo_ms")) cfg.solver.v_lo_ms = v.positive("v_lo_ms");
        if (v.has("rel_tol")) cfg.solver.rel_tol = v.positive("rel_tol");
        cfg.solver.max_iterations = v.count("max_iterations", cfg.solver.max_iterations);
        cfg.solver.scan_points = v.count("scan_points", cfg.solver.scan_points);
    }
    return cfg;
}

json ScenarioConfig::to_json() const {
    json j;
    j["aircraft"] = {{"wing_area_m2", aircraft.wing_area_m2}, {"mass_kg", aircraft.mass_kg},
                     {"cd0", aircraft.cd0},                   {"cd2", aircraft.cd2},
                     {"vmax_kmh", aircraft.vmax_kmh},         {"voltage_v", aircraft.voltage_v},
                     {"efficiency", aircraft.efficiency},     {"gravity_ms2", aircraft.gravity_ms2}};
    j["scenario"] = {{"origin_km", scenario.origin_km},
                     {"cruise_km", scenario.cruise_km},
                     {"q0_coulombs", scenario.q0_coulombs},
                     {"h_dot_bar_ms", scenario.h_dot_bar_ms},
                     {"sim_step_s", scenario.sim_step_s},
                     {"atmosphere_step_m", scenario.atmosphere_step_m},
                     {"density_window", scenario.density_window},
                     {"track_econ_speed", scenario.track_econ_speed}};

    json& c = j["cost_index"];
    if (cost_index.ci0_fraction) c["ci0_fraction"] = *cost_index.ci0_fraction;
    if (cost_index.ci0_value_cs) c["ci0_value_cs"] = *cost_index.ci0_value_cs;
    c["ci_max"] = {{"mode", cost_index.ci_max_mode}};
    if (cost_index.ci_max_target_v0_kmh) c["ci_max"]["target_v0_kmh"] = *cost_index.ci_max_target_v0_kmh;
    if (cost_index.ci_max_value_cs) c["ci_max"]["value_cs"] = *cost_index.ci_max_value_cs;
    c["tau"] = {{"mode", cost_index.tau_mode}};
    if (cost_index.tau_factor) c["tau"]["factor"] = *cost_index.tau_factor;
    if (cost_index.tau_value_s) c["tau"]["value_s"] = *cost_index.tau_value_s;
    c["events"] = json::array();
    for (const auto& ev : cost_index.events) {
        json e;
        if (ev.waypoint_km) e["waypoint_km"] = *ev.waypoint_km;
        if (ev.time_s) e["time_s"] = *ev.time_s;
        if (ev.ci_in_fraction) e["ci_in_fraction"] = *ev.ci_in_fraction;
        if (ev.ci_in_cs) e["ci_in_cs"] = *ev.ci_in_cs;
        c["events"].push_back(e);
    }

    j["solver"] = {{"v_lo_ms", solver.v_lo_ms},
                   {"rel_tol", solver.rel_tol},
                   {"max_iterations", solver.max_iterations},
                   {"scan_points", solver.scan_points}};
    return j;
}

Scenario ScenarioConfig::to_scenario() const {
    Scenario scn;
    scn.aircraft.wing_area = aircraft.wing_area_m2;
    scn.aircraft.mass = aircraft.mass_kg;
    scn.aircraft.cd0 = aircraft.cd0;
    scn.aircraft.cd2 = aircraft.cd2;
    scn.aircraft.v_max = aircraft.vmax_kmh / 3.6;
    scn.aircraft.voltage = aircraft.voltage_v;
    scn.aircraft.efficiency = aircraft.efficiency;
    scn.aircraft.gravity = aircraft.gravity_ms2;

    scn.origin = to_waypoint(scenario.origin_km);
    scn.cruise = to_waypoint(scenario.cruise_km);
    scn.q0 = scenario.q0_coulombs;
    scn.climb_rate = scenario.h_dot_bar_ms;
    scn.sim_step = scenario.sim_step_s;
    scn.altitude_step = scenario.atmosphere_step_m;
    scn.density_window = scenario.density_window == "segment" ? DensityWindow::Segment : DensityWindow::Climb;
    scn.track_econ_speed = scenario.track_econ_speed;

    scn.ci0 = ci_value(cost_index.ci0_fraction, cost_index.ci0_value_cs);
    if (cost_index.ci_max_mode == "calibrated") {
        scn.ci_max.mode = CiMaxSpec::Mode::Calibrated;
        scn.ci_max.target_v0 = *cost_index.ci_max_target_v0_kmh / 3.6;
    } else if (cost_index.ci_max_mode == "explicit") {
        scn.ci_max.mode = CiMaxSpec::Mode::Explicit;
        scn.ci_max.value = *cost_index.ci_max_value_cs;
    } else {
        scn.ci_max.mode = CiMaxSpec::Mode::Vmax;
    }

    if (cost_index.tau_mode == "seconds") {
        scn.tau = {TauSpec::Mode::Seconds, *cost_index.tau_value_s};
    } else if (cost_index.tau_mode == "infinite") {
        scn.tau = {TauSpec::Mode::Infinite, 0.0};
    } else {
        scn.tau = {TauSpec::Mode::FractionOfTc0, cost_index.tau_factor.value_or(0.01)};
    }

    for (const auto& ev : cost_index.events) {
        EventSpec spec;
        if (ev.waypoint_km) {
            spec.trigger = WaypointTrigger{to_waypoint(*ev.waypoint_km)};
        } else {
            spec.trigger = TimeTrigger{*ev.time_s};
        }
        spec.ci_in = ci_value(ev.ci_in_fraction, ev.ci_in_cs);
        scn.events.push_back(spec);
    }

    scn.solver.v_lo = solver.v_lo_ms;
    scn.solver.rel_tol = solver.rel_tol;
    scn.solver.max_iterations = solver.max_iterations;
    scn.solver.scan_points = solver.scan_points;
    return scn;
}

EnvLookup process_environment() {
    return [](const std::string& name) -> std::optional<std::string> {
        if (const char* v = std::getenv(name.c_str())) return std::string(v);
        return std::nullopt;
    };
}

void apply_env_overrides(json& j, const EnvLookup& lookup, const std::string& prefix) {
    if (!j.is_object()) return;
    for (auto& [key, value] : j.items()) {
        std::string name = prefix + "_";
        for (char ch : key) name += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (value.is_object()) {
            apply_env_overrides(value, lookup, name);
            continue;
        }
        if (const auto override_text = lookup(name)) {
            json parsed = json::parse(*override_text, nullptr, false);
            value = parsed.is_discarded() ? json(*override_text) : parsed;
        }
    }
}

ScenarioConfig load_config(const std::filesystem::path& path, const EnvLookup& lookup) {
    std::ifstream in(path);
    if (!in) {
        throw std::system_error(errno ? errno : ENOENT, std::generic_category(),
                                "cannot read config " + path.string());
    }
    json raw;
    try {
        raw = json::parse(in);
    } catch (const json::parse_error& e) {
        // nlohmann reports "line L, column C" in the message.
        throw ConfigError("", path.string() + ": " + e.what());
    }
    // Normalise first so that defaulted keys can be overridden too.
    json canonical = ScenarioConfig::from_json(raw).to_json();
    apply_env_overrides(canonical, lookup);
    return ScenarioConfig::from_json(canonical);
}

}  // namespace eclimb
