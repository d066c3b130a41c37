#pragma once

#include "eclimb/atmosphere.hpp"
#include "eclimb/climb_optimizer.hpp"
#include "eclimb/cost_index.hpp"
#include "eclimb/vehicle.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace eclimb {

/// Altitude window used for the mean densities of a re-planned segment.
enum class DensityWindow {
    Climb,    // whole climb, origin altitude to cruise altitude
    Segment,  // remaining segment only
};

/// A cost index given either as a fraction of ci_max or in C/s.
struct CiValue {
    enum class Unit { FractionOfMax, CoulombsPerSecond };
    Unit unit = Unit::FractionOfMax;
    double value = 0.0;

    [[nodiscard]] double resolve(double ci_max) const {
        return unit == Unit::FractionOfMax ? value * ci_max : value;
    }
    friend bool operator==(const CiValue&, const CiValue&) = default;
};

struct CiMaxSpec {
    enum class Mode {
        Vmax,        // constant-CI ECON speed at ci_max equals v_max
        Calibrated,  // ECON speed at ci0 equals target_v0
        Explicit,
    };
    Mode mode = Mode::Vmax;
    double target_v0 = 0.0;  // [m/s], Calibrated only
    double value = 0.0;      // [C/s], Explicit only
    friend bool operator==(const CiMaxSpec&, const CiMaxSpec&) = default;
};

struct TauSpec {
    enum class Mode { FractionOfTc0, Seconds, Infinite };
    Mode mode = Mode::FractionOfTc0;
    double value = 0.01;  // factor or seconds

    [[nodiscard]] TimeConstant resolve(double t_c0) const;
    friend bool operator==(const TauSpec&, const TauSpec&) = default;
};

struct EventSpec {
    EventTrigger trigger;
    CiValue ci_in;
};

/// One climb from origin to the ATC cruise waypoint along a straight path.
/// Waypoint-triggered events must name fixes on that path.
struct Scenario {
    AircraftParams aircraft = AircraftParams::e430();
    Waypoint origin;
    Waypoint cruise;
    double q0 = 0.0;             // initial charge [C]
    double climb_rate = 0.0;     // mean climb rate [m/s]
    double sim_step = 0.1;       // [s]
    double altitude_step = 1.0;  // density averaging grid [m]
    DensityWindow density_window = DensityWindow::Climb;

    CiValue ci0;
    CiMaxSpec ci_max;
    TauSpec tau;
    std::vector<EventSpec> events;

    SolverOptions solver;
    bool track_econ_speed = true;

    void validate(const Atmosphere& atmosphere) const;
};

/// One time step of the simulated climb.
struct ProfileSample {
    double t = 0.0;   // [s]
    double x = 0.0;   // [m]
    double h = 0.0;   // [m]
    double v = 0.0;   // planned airspeed [m/s]
    double ci = 0.0;  // [C/s]
    double q = 0.0;   // [C]
    double e = 0.0;   // [J]
    std::optional<double> v_track;  // constant-CI ECON speed for CI(t)
};

/// A constant-airspeed leg of the executed climb.
struct FlownSegment {
    ClimbSegment segment;  // geometry from the leg start to the cruise waypoint
    CostIndexInputs ci;
    ClimbPlan plan;
    double t_start = 0.0;
    double t_end = 0.0;          // when the leg was cut short or the climb ended
    double distance_start = 0.0; // along-path distance at t_start [m]
    double charge_used = 0.0;    // closed-form charge over [t_start, t_end] [C]
};

struct ScenarioSummary {
    double ci_max = 0.0;
    CiMaxSpec::Mode ci_max_mode = CiMaxSpec::Mode::Vmax;
    double ci0 = 0.0;
    TimeConstant tau = TimeConstant::infinite();
    double baseline_time = 0.0;     // t_c0 of the no-event plan [s]
    double total_time = 0.0;        // [s]
    double time_delta = 0.0;        // total_time - baseline_time [s]
    double charge_used = 0.0;       // closed form [C]
    double charge_used_integrated = 0.0;  // from the time-stepped profile [C]
    double final_charge = 0.0;      // [C]
    double final_energy = 0.0;      // [J]
    double energy_used = 0.0;       // integrated [J]
    bool depleted = false;
    bool altitude_reached = true;   // mean climb rate reaches cruise altitude in time
    std::size_t ignored_events = 0; // triggers after the climb ends
};

struct ScenarioResult {
    CostIndexSchedule schedule;
    ClimbPlan baseline;
    std::vector<FlownSegment> segments;
    std::vector<ProfileSample> samples;
    ScenarioSummary summary;
};

class ScenarioError : public std::runtime_error {
public:
    ScenarioError(std::size_t segment, const std::string& what)
        : std::runtime_error(what), segment_(segment) {}
    [[nodiscard]] std::size_t segment() const { return segment_; }

private:
    std::size_t segment_;
};

/// Plans the climb with the airline's ci0, replans the remaining path at
/// each ATC input and integrates the battery charge on a fixed step.
/// Deterministic for identical inputs.
[[nodiscard]] ScenarioResult run_scenario(const Scenario& scn, const Atmosphere& atmosphere);
[[nodiscard]] ScenarioResult run_scenario(const Scenario& scn);

struct SweepCurve {
    TimeConstant tau = TimeConstant::infinite();
    bool constant_ci = false;   // baseline with CI fixed at ci_start
    std::vector<double> cost;   // J per grid airspeed [C]
    std::size_t argmin = 0;
};

struct SweepTable {
    std::vector<double> v;  // [m/s]
    std::vector<SweepCurve> curves;
};

/// Total cost over v_grid for each tau, followed by the constant-CI
/// baseline curve.
[[nodiscard]] SweepTable sweep_cost(const ClimbSegment& seg, double ci_start, double ci_in, double q0,
                                    const AircraftParams& p, const std::vector<double>& v_grid,
                                    const std::vector<TimeConstant>& taus);

/// Relative gap |closed-form dQ - integrated dQ| / |integrated dQ| for a
/// constant-airspeed climb whose altitude rises at the segment's mean climb
/// rate until the end altitude and then holds.
[[nodiscard]] double mvt_crosscheck(const ClimbSegment& seg, double v, const AircraftParams& p,
                                    const Atmosphere& atmosphere, double step);

}  // namespace eclimb
