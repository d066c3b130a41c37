#pragma once

#include "eclimb/atmosphere.hpp"

namespace eclimb {

/// Horizontal position and altitude, both in metres.
struct Waypoint {
    double x = 0.0;
    double h = 0.0;

    friend bool operator==(const Waypoint&, const Waypoint&) = default;
};

/// Straight constant-airspeed climb between two waypoints, reduced to the
/// scalars the closed-form energy model needs.
struct ClimbSegment {
    Waypoint start;
    Waypoint end;
    double distance = 0.0;       // slant distance d [m]
    double climb_rate = 0.0;     // mean climb rate [m/s]
    double mean_rho = 0.0;       // [kg/m^3]
    double mean_inv_rho = 0.0;   // [m^3/kg]
};

[[nodiscard]] double slant_distance(const Waypoint& a, const Waypoint& b);

/// Builds a segment whose mean densities are averaged over [start.h, end.h].
[[nodiscard]] ClimbSegment make_segment(const Waypoint& start, const Waypoint& end, double climb_rate,
                                        const Atmosphere& atmosphere, double altitude_step);

/// Builds a segment whose mean densities are averaged over an explicit
/// altitude window [window_h0, window_hc] instead of the segment's own span.
[[nodiscard]] ClimbSegment make_segment(const Waypoint& start, const Waypoint& end, double climb_rate,
                                        const Atmosphere& atmosphere, double altitude_step,
                                        double window_h0, double window_hc);

/// Segment with caller-supplied mean densities (level flight, stubs).
[[nodiscard]] ClimbSegment make_segment(const Waypoint& start, const Waypoint& end, double climb_rate,
                                        double mean_rho, double mean_inv_rho);

}  // namespace eclimb
