#pragma once

#include "eclimb/climb_segment.hpp"

namespace eclimb {

/// Airframe and powertrain constants. Mass is constant in flight.
struct AircraftParams {
    double wing_area = 0.0;    // S [m^2]
    double mass = 0.0;         // [kg]
    double cd0 = 0.0;          // zero-lift drag coefficient
    double cd2 = 0.0;          // induced drag coefficient
    double v_max = 0.0;        // [m/s]
    double voltage = 0.0;      // U [V]
    double efficiency = 0.0;   // eta, electrical-to-mechanical
    double gravity = 9.80665;  // [m/s^2]

    [[nodiscard]] double weight() const { return mass * gravity; }

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;

    /// Yuneec E430 two-seater.
    [[nodiscard]] static AircraftParams e430();
};

/// Ideal constant-voltage battery.
struct BatteryState {
    double charge = 0.0;   // Q [C]
    double voltage = 0.0;  // U [V]

    [[nodiscard]] double energy() const { return charge * voltage; }
};

/// Drag polar: 0.5*rho*S*cd0*v^2 + 2*cd2*W^2/(rho*S*v^2).
[[nodiscard]] double drag(double v, double rho, const AircraftParams& p);

/// Thrust for a steady climb at climb rate h_dot: W*h_dot/v + D.
[[nodiscard]] double thrust_for_climb(double v, double h_dot, double rho, const AircraftParams& p);

/// Battery charge rate dQ/dt [C/s] = -T*v/(eta*U). Negative while discharging.
[[nodiscard]] double charge_rate(double v, double h_dot, double rho, const AircraftParams& p);

struct FinalCharge {
    double charge = 0.0;   // Q_f [C]
    bool depleted = false; // Q_f < 0: the plan cannot be flown on q0
};

/// Closed-form end-of-segment charge using the segment's mean climb rate
/// and mean densities.
[[nodiscard]] FinalCharge final_charge(double q0, double v, const ClimbSegment& seg,
                                       const AircraftParams& p);

/// Charge consumed over the segment, q0 - Q_f. Independent of q0.
[[nodiscard]] double charge_used(double v, const ClimbSegment& seg, const AircraftParams& p);

/// dQ_f/dv of final_charge.
[[nodiscard]] double final_charge_sensitivity(double v, const ClimbSegment& seg,
                                              const AircraftParams& p);

}  // namespace eclimb
