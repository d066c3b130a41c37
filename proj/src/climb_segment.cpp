#include "eclimb/climb_segment.hpp"

#include <cmath>
#include <stdexcept>

namespace eclimb {

double slant_distance(const Waypoint& a, const Waypoint& b) {
    return std::hypot(b.x - a.x, b.h - a.h);
}

ClimbSegment make_segment(const Waypoint& start, const Waypoint& end, double climb_rate,
                          double mean_rho, double mean_inv_rho) {
    if (end.h < start.h) {
        throw std::invalid_argument("climb segment must not descend");
    }
    if (!(climb_rate >= 0.0)) {
        throw std::invalid_argument("mean climb rate must be non-negative");
    }
    if (!(mean_rho > 0.0 && mean_inv_rho > 0.0)) {
        throw std::invalid_argument("mean densities must be positive");
    }
    ClimbSegment seg;
    seg.start = start;
    seg.end = end;
    seg.distance = slant_distance(start, end);
    if (!(seg.distance > 0.0)) {
        throw std::invalid_argument("climb segment has zero length");
    }
    seg.climb_rate = climb_rate;
    seg.mean_rho = mean_rho;
    seg.mean_inv_rho = mean_inv_rho;
    return seg;
}

ClimbSegment make_segment(const Waypoint& start, const Waypoint& end, double climb_rate,
                          const Atmosphere& atmosphere, double altitude_step, double window_h0,
                          double window_hc) {
    if (window_hc <= window_h0) {
        // Level leg: the window collapses to a single altitude.
        const double rho = atmosphere.density(window_h0);
        return make_segment(start, end, climb_rate, rho, 1.0 / rho);
    }
    return make_segment(start, end, climb_rate,
                        mean_density(atmosphere, window_h0, window_hc, altitude_step),
                        mean_inverse_density(atmosphere, window_h0, window_hc, altitude_step));
}

ClimbSegment make_segment(const Waypoint& start, const Waypoint& end, double climb_rate,
                          const Atmosphere& atmosphere, double altitude_step) {
    return make_segment(start, end, climb_rate, atmosphere, altitude_step, start.h, end.h);
}

}  // namespace eclimb
