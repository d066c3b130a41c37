// eclimb: constant-airspeed ECON climb planner for all-electric aircraft.
//
// Exit codes: 0 ok, 2 configuration/usage, 3 solver, 4 I/O.

#include "eclimb/config.hpp"
#include "eclimb/report.hpp"
#include "eclimb/scenario_sim.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <system_error>
#include <vector>

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitSolver = 3;
constexpr int kExitIo = 4;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string config;
    std::string out;
    bool no_event = false;
    std::optional<double> sim_step;
    std::optional<double> atmo_step;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool out_required) {
    cmd->add_option("--config", opts.config, "Scenario file (JSON)")->required();
    auto* out = cmd->add_option("--out", opts.out, "Output path");
    if (out_required) out->required();
    cmd->add_flag("--no-event", opts.no_event, "Ignore ATC cost-index events");
    cmd->add_option("--sim-step", opts.sim_step, "Integration step [s]")->check(CLI::PositiveNumber);
    cmd->add_option("--atmo-step", opts.atmo_step, "Density averaging grid [m]")->check(CLI::PositiveNumber);
}

eclimb::ScenarioConfig load(const CommonOptions& opts) {
    eclimb::ScenarioConfig cfg;
    try {
        cfg = eclimb::load_config(opts.config);
    } catch (const std::system_error& e) {
        throw eclimb::ConfigError("", e.what());
    }
    if (opts.no_event) cfg.cost_index.events.clear();
    if (opts.sim_step) cfg.scenario.sim_step_s = *opts.sim_step;
    if (opts.atmo_step) cfg.scenario.atmosphere_step_m = *opts.atmo_step;
    return cfg;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw IoError("write failed: " + path);
}

void write_record(const std::string& path, const nlohmann::json& record) {
    auto out = open_output(path);
    out << record.dump(2) << '\n';
    finish_output(out, path);
}

int cmd_plan(const CommonOptions& opts) {
    const auto result = eclimb::run_scenario(load(opts).to_scenario());
    std::cout << eclimb::render_plan_text(result);
    if (!opts.out.empty()) write_record(opts.out, eclimb::plan_record(result));
    return EXIT_SUCCESS;
}

int cmd_profile(const CommonOptions& opts) {
    const auto result = eclimb::run_scenario(load(opts).to_scenario());
    auto out = open_output(opts.out);
    eclimb::write_profile_csv(out, result);
    finish_output(out, opts.out);
    write_record(opts.out + ".summary.json", eclimb::plan_record(result));
    std::cout << "wrote " << result.samples.size() << " samples to " << opts.out << '\n';
    return EXIT_SUCCESS;
}

// "inf", "<x>tc0" (fraction of the FMS climbing time) or "<x>" seconds.
eclimb::TimeConstant parse_tau(const std::string& token, double t_c0) {
    if (token == "inf" || token == "infinite") return eclimb::TimeConstant::infinite();
    std::string number = token;
    double scale = 1.0;
    if (token.size() > 3 && token.compare(token.size() - 3, 3, "tc0") == 0) {
        number = token.substr(0, token.size() - 3);
        scale = t_c0;
    }
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(number, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != number.size() || !(value > 0.0)) {
        throw eclimb::ConfigError("--tau", "invalid time constant \"" + token + "\"");
    }
    return eclimb::TimeConstant::seconds(value * scale);
}

struct SweepOptions {
    double v_min_kmh = 60.0;
    std::optional<double> v_max_kmh;
    double v_step_kmh = 0.5;
    std::vector<std::string> taus{"0.001tc0", "0.01tc0", "0.1tc0", "1tc0"};
};

int cmd_sweep(const CommonOptions& opts, const SweepOptions& sweep) {
    auto scn = load(opts).to_scenario();
    scn.track_econ_speed = false;
    const auto result = eclimb::run_scenario(scn);
    const double ci_start = result.schedule.ci0;
    const double ci_in =
        scn.events.empty() ? ci_start : scn.events.front().ci_in.resolve(result.schedule.ci_max);

    const double v_max_kmh = std::min(sweep.v_max_kmh.value_or(scn.aircraft.v_max * 3.6), scn.aircraft.v_max * 3.6);
    if (!(sweep.v_step_kmh > 0.0) || !(sweep.v_min_kmh > 0.0) || sweep.v_min_kmh > v_max_kmh) {
        throw eclimb::ConfigError("--v-min-kmh/--v-max-kmh/--v-step-kmh", "empty airspeed grid");
    }
    std::vector<double> grid;
    const auto n = static_cast<std::size_t>(std::floor((v_max_kmh - sweep.v_min_kmh) / sweep.v_step_kmh + 1e-9));
    for (std::size_t i = 0; i <= n; ++i) {
        grid.push_back(std::min((sweep.v_min_kmh + static_cast<double>(i) * sweep.v_step_kmh) / 3.6, scn.aircraft.v_max));
    }
    std::vector<eclimb::TimeConstant> taus;
    for (const auto& token : sweep.taus) taus.push_back(parse_tau(token, result.baseline.t_c_star));

    const auto table = eclimb::sweep_cost(result.segments.front().segment, ci_start, ci_in, scn.q0, scn.aircraft,
                                          grid, taus);
    auto out = open_output(opts.out);
    eclimb::write_sweep_csv(out, table);
    finish_output(out, opts.out);
    for (const auto& curve : table.curves) {
        std::cout << (curve.constant_ci ? "constant ci" : "tau " + (curve.tau.is_infinite()
                                                                         ? std::string("inf")
                                                                         : eclimb::format_number(curve.tau.value())) +
                                                              " s")
                  << ": argmin " << eclimb::format_number(table.v[curve.argmin] * 3.6) << " km/h\n";
    }
    return EXIT_SUCCESS;
}

int cmd_calibrate(const CommonOptions& opts, std::optional<double> target_kmh) {
    const auto cfg = load(opts);
    auto scn = cfg.to_scenario();
    if (!cfg.cost_index.ci0_fraction) {
        throw eclimb::ConfigError("cost_index.ci0_fraction", "calibration needs ci0 as a fraction of ci_max");
    }
    if (!target_kmh) target_kmh = cfg.cost_index.ci_max_target_v0_kmh;
    if (!target_kmh) {
        throw eclimb::ConfigError("cost_index.ci_max.target_v0_kmh", "required (or pass --target-v0-kmh)");
    }
    const double fraction = *cfg.cost_index.ci0_fraction;
    const eclimb::TroposphereAtmosphere atmosphere;
    scn.validate(atmosphere);
    const auto seg =
        eclimb::make_segment(scn.origin, scn.cruise, scn.climb_rate, atmosphere, scn.altitude_step);
    const auto& p = scn.aircraft;

    const double ci_vmax = eclimb::calibrate_ci_max(p, seg);
    const double ci_cal = eclimb::calibrate_ci_max_to_speed(p, seg, fraction, *target_kmh / 3.6, scn.solver);
    const auto speed_kmh = [&](double ci) {
        return eclimb::fms_initial_speed(seg, ci, scn.q0, p, scn.solver).v_star * 3.6;
    };
    using eclimb::format_number;
    std::cout << "mode vmax: ci_max " << format_number(ci_vmax) << " C/s ("
              << format_number(eclimb::ci_to_kilowatts(ci_vmax, p.voltage)) << " kJ/s), v* at ci_max "
              << format_number(speed_kmh(ci_vmax)) << " km/h, v0* at " << format_number(fraction) << " ci_max "
              << format_number(speed_kmh(fraction * ci_vmax)) << " km/h\n";
    std::cout << "mode calibrated: ci_max " << format_number(ci_cal) << " C/s ("
              << format_number(eclimb::ci_to_kilowatts(ci_cal, p.voltage)) << " kJ/s), v0* at "
              << format_number(fraction) << " ci_max " << format_number(speed_kmh(fraction * ci_cal))
              << " km/h (target " << format_number(*target_kmh) << " km/h)\n";
    std::cout << "chosen mode: " << cfg.cost_index.ci_max_mode << '\n';
    if (!opts.out.empty()) {
        write_record(opts.out, {{"vmax", {{"ci_max_cs", eclimb::round_sig6(ci_vmax)},
                                          {"v0_star_kmh", eclimb::round_sig6(speed_kmh(fraction * ci_vmax))}}},
                                {"calibrated", {{"ci_max_cs", eclimb::round_sig6(ci_cal)},
                                                {"v0_star_kmh", eclimb::round_sig6(speed_kmh(fraction * ci_cal))},
                                                {"target_v0_kmh", eclimb::round_sig6(*target_kmh)}}},
                                {"chosen_mode", cfg.cost_index.ci_max_mode}});
    }
    return EXIT_SUCCESS;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Constant-airspeed ECON climb planner for all-electric aircraft"};
    app.require_subcommand(1);

    CommonOptions plan_opts, profile_opts, sweep_opts, calibrate_opts;
    SweepOptions sweep;
    std::optional<double> target_kmh;

    auto* plan = app.add_subcommand("plan", "Optimal climb airspeed and time per segment");
    add_common(plan, plan_opts, false);
    auto* profile = app.add_subcommand("profile", "Time series of the simulated climb (CSV)");
    add_common(profile, profile_opts, true);
    auto* sweep_cmd = app.add_subcommand("sweep", "Total cost J(v) for several filter time constants (CSV)");
    add_common(sweep_cmd, sweep_opts, true);
    sweep_cmd->add_option("--v-min-kmh", sweep.v_min_kmh, "Lowest airspeed [km/h]");
    sweep_cmd->add_option("--v-max-kmh", sweep.v_max_kmh, "Highest airspeed [km/h] (default v_max)");
    sweep_cmd->add_option("--v-step-kmh", sweep.v_step_kmh, "Grid spacing [km/h]");
    sweep_cmd->add_option("--tau", sweep.taus, "Time constants: seconds, <x>tc0 or inf");
    auto* calibrate = app.add_subcommand("calibrate", "ci_max under both calibration modes");
    add_common(calibrate, calibrate_opts, false);
    calibrate->add_option("--target-v0-kmh", target_kmh, "FMS speed the calibrated mode must reproduce");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*plan) return cmd_plan(plan_opts);
        if (*profile) return cmd_profile(profile_opts);
        if (*sweep_cmd) return cmd_sweep(sweep_opts, sweep);
        return cmd_calibrate(calibrate_opts, target_kmh);
    } catch (const eclimb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const eclimb::ScenarioError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const eclimb::OptimizerError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return kExitSolver;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::logic_error& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return EXIT_FAILURE;
    }
}
