#pragma once

#include "eclimb/climb_segment.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace eclimb {

/// Filter time constant. Infinite means the cost index never leaves its
/// initial value (constant-CI mode).
class TimeConstant {
public:
    [[nodiscard]] static TimeConstant seconds(double tau);
    [[nodiscard]] static TimeConstant infinite() { return TimeConstant{}; }

    [[nodiscard]] bool is_infinite() const { return !tau_.has_value(); }
    /// Throws std::logic_error when infinite.
    [[nodiscard]] double value() const;

    friend bool operator==(const TimeConstant&, const TimeConstant&) = default;

private:
    TimeConstant() = default;
    std::optional<double> tau_;
};

/// Cost index t seconds after the forcing term switched to ci_in, starting
/// from ci_start: exp(-t/tau)*(ci_start - ci_in) + ci_in.
[[nodiscard]] double ci_at(double t, double ci_start, double ci_in, TimeConstant tau);

/// Integrates tau*dCI/dt = -CI + ci_in with classic RK4 at step tau/100 and
/// returns the largest deviation from ci_at over [0, horizon].
[[nodiscard]] double ci_ode_check(double ci_start, double ci_in, TimeConstant tau, double horizon);

/// ATC input fired after a fixed elapsed time since departure.
struct TimeTrigger {
    double t = 0.0;  // [s]
    friend bool operator==(const TimeTrigger&, const TimeTrigger&) = default;
};

/// ATC input fired when the aircraft crosses a fix on the climb path.
struct WaypointTrigger {
    Waypoint fix;
    friend bool operator==(const WaypointTrigger&, const WaypointTrigger&) = default;
};

using EventTrigger = std::variant<TimeTrigger, WaypointTrigger>;

struct AtcEvent {
    EventTrigger trigger;
    double ci_in = 0.0;  // [C/s]
};

/// Airline initial cost index, envelope ceiling, filter time constant and the
/// ATC inputs received during the climb. Cost indices are in C/s so they can
/// be subtracted from dQ/dt directly; see ci_to_kilowatts.
struct CostIndexSchedule {
    double ci0 = 0.0;
    double ci_max = 0.0;
    TimeConstant tau = TimeConstant::infinite();
    std::vector<AtcEvent> events;

    /// Range checks on ci0/ci_in against [0, ci_max]. Event ordering is
    /// checked once triggers are resolved to times (see scenario_sim).
    void validate() const;
};

/// CI [C/s] expressed as power [kJ/s] on a battery at voltage [V].
[[nodiscard]] inline double ci_to_kilowatts(double ci, double voltage) { return ci * voltage / 1000.0; }

}  // namespace eclimb
