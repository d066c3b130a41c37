#pragma once

#include "eclimb/scenario_sim.hpp"

namespace eclimb::testing {

// Departure climb (0, 0) -> (30, 1) km with an ATC input at (15, 0.5) km.
inline Scenario yul_scenario(bool with_event = true) {
    Scenario s;
    s.aircraft = AircraftParams::e430();
    s.origin = {0.0, 0.0};
    s.cruise = {30000.0, 1000.0};
    s.q0 = 4e5;
    s.climb_rate = 1.65;
    s.ci0 = {CiValue::Unit::FractionOfMax, 0.6};
    s.ci_max = {CiMaxSpec::Mode::Calibrated, 140.19 / 3.6, 0.0};
    s.tau = {TauSpec::Mode::FractionOfTc0, 0.01};
    if (with_event) {
        s.events.push_back({WaypointTrigger{{15000.0, 500.0}}, {CiValue::Unit::FractionOfMax, 0.9}});
    }
    return s;
}

}  // namespace eclimb::testing
