#include "eclimb/scenario_sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <sstream>
#include <type_traits>

namespace eclimb {

namespace {

// Simpson's rule over [a, b].
template <typename F>
double simpson(F&& f, double a, double b) {
    return (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
}

struct PathGeometry {
    Waypoint origin;
    Waypoint cruise;
    double length;

    [[nodiscard]] Waypoint at(double s) const {
        const double f = s / length;
        return {origin.x + (cruise.x - origin.x) * f, origin.h + (cruise.h - origin.h) * f};
    }

    // Along-path distance of a fix; throws if the fix is off the path.
    [[nodiscard]] double locate(const Waypoint& fix, std::size_t event) const {
        const double dx = cruise.x - origin.x;
        const double dh = cruise.h - origin.h;
        const double s = ((fix.x - origin.x) * dx + (fix.h - origin.h) * dh) / length;
        const double offset = std::abs((fix.x - origin.x) * dh - (fix.h - origin.h) * dx) / length;
        if (offset > 1e-6 * length || s <= 0.0 || s >= length) {
            std::ostringstream msg;
            msg << "event " << event << ": fix (" << fix.x << ", " << fix.h
                << ") m is not strictly inside the climb path";
            throw std::invalid_argument(msg.str());
        }
        return s;
    }
};

double altitude_at(double t, const Waypoint& origin, const Waypoint& cruise, double climb_rate) {
    return std::min(origin.h + climb_rate * t, cruise.h);
}

}  // namespace

TimeConstant TauSpec::resolve(double t_c0) const {
    switch (mode) {
        case Mode::FractionOfTc0:
            return TimeConstant::seconds(value * t_c0);
        case Mode::Seconds:
            return TimeConstant::seconds(value);
        case Mode::Infinite:
            break;
    }
    return TimeConstant::infinite();
}

void Scenario::validate(const Atmosphere& atmosphere) const {
    aircraft.validate();
    const auto fail = [](const std::string& what) { throw std::invalid_argument(what); };
    if (!(cruise.x > origin.x)) fail("cruise waypoint must lie ahead of the origin");
    if (cruise.h < origin.h) fail("cruise altitude must not be below the origin altitude");
    if (origin.h < 0.0 || cruise.h > atmosphere.ceiling()) fail("climb leaves the atmosphere model's range");
    if (!(q0 >= 0.0)) fail("initial charge must be non-negative");
    if (!(climb_rate >= 0.0)) fail("mean climb rate must be non-negative");
    if (!(sim_step > 0.0)) fail("simulation step must be positive");
    if (!(altitude_step > 0.0)) fail("altitude step must be positive");
    const auto check_fraction = [&](const CiValue& ci, const char* what) {
        if (ci.unit == CiValue::Unit::FractionOfMax && !(ci.value >= 0.0 && ci.value <= 1.0)) {
            fail(std::string(what) + " fraction must lie in [0, 1]");
        }
        if (!(ci.value >= 0.0)) fail(std::string(what) + " must be non-negative");
    };
    check_fraction(ci0, "ci0");
    for (const auto& ev : events) check_fraction(ev.ci_in, "ci_in");
    if (ci_max.mode == CiMaxSpec::Mode::Calibrated) {
        if (ci0.unit != CiValue::Unit::FractionOfMax || !(ci0.value > 0.0)) {
            fail("calibrated ci_max needs ci0 given as a positive fraction");
        }
        if (!(ci_max.target_v0 > 0.0)) fail("calibrated ci_max needs a positive target speed");
    }
    if (ci_max.mode == CiMaxSpec::Mode::Explicit && !(ci_max.value > 0.0)) {
        fail("explicit ci_max must be positive");
    }
    if (tau.mode != TauSpec::Mode::Infinite && !(tau.value > 0.0)) fail("tau must be positive");
}

ScenarioResult run_scenario(const Scenario& scn) {
    static const TroposphereAtmosphere troposphere;
    return run_scenario(scn, troposphere);
}

ScenarioResult run_scenario(const Scenario& scn, const Atmosphere& atmosphere) {
    scn.validate(atmosphere);
    const AircraftParams& p = scn.aircraft;
    const PathGeometry path{scn.origin, scn.cruise, slant_distance(scn.origin, scn.cruise)};
    const ClimbSegment full =
        make_segment(scn.origin, scn.cruise, scn.climb_rate, atmosphere, scn.altitude_step);

    ScenarioResult out;
    CostIndexSchedule& schedule = out.schedule;
    try {
        switch (scn.ci_max.mode) {
            case CiMaxSpec::Mode::Vmax:
                schedule.ci_max = calibrate_ci_max(p, full);
                break;
            case CiMaxSpec::Mode::Calibrated:
                schedule.ci_max =
                    calibrate_ci_max_to_speed(p, full, scn.ci0.value, scn.ci_max.target_v0, scn.solver);
                break;
            case CiMaxSpec::Mode::Explicit:
                schedule.ci_max = scn.ci_max.value;
                break;
        }
        schedule.ci0 = scn.ci0.resolve(schedule.ci_max);
        out.baseline = fms_initial_speed(full, schedule.ci0, scn.q0, p, scn.solver);
    } catch (const OptimizerError& e) {
        throw ScenarioError(0, std::string("segment 0: ") + e.what());
    }
    schedule.tau = scn.tau.resolve(out.baseline.t_c_star);

    // Legs: the FMS plan, then one replan per ATC input received in flight.
    FlownSegment leg;
    leg.segment = full;
    leg.ci = CostIndexInputs::constant(schedule.ci0);
    leg.plan = out.baseline;
    double q_closed = scn.q0;
    double last_trigger = 0.0;
    for (std::size_t i = 0; i < scn.events.size(); ++i) {
        const EventSpec& spec = scn.events[i];
        const double v = leg.plan.v_star;
        const double leg_end = leg.t_start + (path.length - leg.distance_start) / v;
        double t_event = 0.0;
        if (const auto* tt = std::get_if<TimeTrigger>(&spec.trigger)) {
            t_event = tt->t;
        } else {
            const double s_fix = path.locate(std::get<WaypointTrigger>(spec.trigger).fix, i);
            if (s_fix <= leg.distance_start) {
                throw std::invalid_argument("event " + std::to_string(i) +
                                            ": fix already passed when the event is armed");
            }
            t_event = leg.t_start + (s_fix - leg.distance_start) / v;
        }
        if (!(t_event > last_trigger) && i > 0) {
            throw std::invalid_argument("event " + std::to_string(i) + ": triggers must be strictly ordered");
        }
        if (!(t_event > 0.0)) {
            throw std::invalid_argument("event " + std::to_string(i) + ": trigger must be after departure");
        }
        last_trigger = t_event;
        if (t_event >= leg_end) {
            ++out.summary.ignored_events;
            continue;
        }
        schedule.events.push_back({spec.trigger, spec.ci_in.resolve(schedule.ci_max)});

        const double s_event = leg.distance_start + v * (t_event - leg.t_start);
        leg.t_end = t_event;
        leg.charge_used = charge_used(v, leg.segment, p) * (s_event - leg.distance_start) / leg.segment.distance;
        q_closed -= leg.charge_used;
        const double ci_event = ci_at(t_event - leg.t_start, leg.ci.ci_start, leg.ci.ci_in, leg.ci.tau);
        out.segments.push_back(leg);

        const Waypoint start = path.at(s_event);
        const double window_h0 = scn.density_window == DensityWindow::Climb ? scn.origin.h : start.h;
        FlownSegment next;
        next.segment = make_segment(start, scn.cruise, scn.climb_rate, atmosphere, scn.altitude_step,
                                    window_h0, scn.cruise.h);
        next.ci = {ci_event, schedule.events.back().ci_in, schedule.tau};
        next.t_start = t_event;
        next.distance_start = s_event;
        try {
            next.plan = solve_optimal_speed(next.segment, next.ci, q_closed, p, scn.solver);
        } catch (const OptimizerError& e) {
            const std::size_t idx = out.segments.size();
            throw ScenarioError(idx, "segment " + std::to_string(idx) + ": " + e.what());
        }
        leg = next;
    }
    leg.t_end = leg.t_start + (path.length - leg.distance_start) / leg.plan.v_star;
    leg.charge_used = charge_used(leg.plan.v_star, leg.segment, p) *
                      (path.length - leg.distance_start) / leg.segment.distance;
    q_closed -= leg.charge_used;
    out.segments.push_back(leg);
    schedule.validate();

    // Time-stepped profile.
    const double total = out.segments.back().t_end;
    const auto segment_at = [&](double t) -> const FlownSegment& {
        for (std::size_t k = out.segments.size(); k-- > 1;) {
            if (t >= out.segments[k].t_start) return out.segments[k];
        }
        return out.segments.front();
    };
    const auto rate = [&](double v, double t) {
        const double h = altitude_at(t, scn.origin, scn.cruise, scn.climb_rate);
        return charge_rate(v, scn.climb_rate, atmosphere.density(h), p);
    };

    // The ECON speed for a given CI only changes when CI does.
    std::map<std::pair<std::size_t, double>, double> track_cache;
    const auto track = [&](std::size_t k, double ci) {
        const auto key = std::make_pair(k, ci);
        if (auto it = track_cache.find(key); it != track_cache.end()) return it->second;
        const double v = fms_initial_speed(out.segments[k].segment, ci, 0.0, p, scn.solver).v_star;
        track_cache.emplace(key, v);
        return v;
    };

    const auto steps = static_cast<std::size_t>(std::ceil(total / scn.sim_step - 1e-9));
    out.samples.reserve(steps + 1);
    double q = scn.q0;
    double t_prev = 0.0;
    for (std::size_t i = 0; i <= steps; ++i) {
        const double t = (i == steps) ? total : static_cast<double>(i) * scn.sim_step;
        // Integrate over (t_prev, t], splitting at leg boundaries.
        double a = t_prev;
        while (a < t) {
            const FlownSegment& seg = segment_at(a);
            const double b = std::min(t, seg.t_end);
            q += simpson([&](double s) { return rate(seg.plan.v_star, s); }, a, b);
            a = b;
        }
        t_prev = t;

        const FlownSegment& seg = segment_at(t);
        const auto k = static_cast<std::size_t>(&seg - out.segments.data());
        ProfileSample sample;
        sample.t = t;
        const double s = std::min(seg.distance_start + seg.plan.v_star * (t - seg.t_start), path.length);
        sample.x = path.at(s).x;
        sample.h = altitude_at(t, scn.origin, scn.cruise, scn.climb_rate);
        sample.v = seg.plan.v_star;
        sample.ci = ci_at(t - seg.t_start, seg.ci.ci_start, seg.ci.ci_in, seg.ci.tau);
        sample.q = q;
        sample.e = q * p.voltage;
        if (scn.track_econ_speed) {
            sample.v_track = track(k, sample.ci);
        }
        out.samples.push_back(sample);
    }

    ScenarioSummary& sum = out.summary;
    sum.ci_max = schedule.ci_max;
    sum.ci_max_mode = scn.ci_max.mode;
    sum.ci0 = schedule.ci0;
    sum.tau = schedule.tau;
    sum.baseline_time = out.baseline.t_c_star;
    sum.total_time = total;
    sum.time_delta = total - out.baseline.t_c_star;
    sum.charge_used = scn.q0 - q_closed;
    sum.charge_used_integrated = scn.q0 - q;
    sum.final_charge = q;
    sum.final_energy = q * p.voltage;
    sum.energy_used = sum.charge_used_integrated * p.voltage;
    sum.depleted = q < 0.0 || q_closed < 0.0;
    sum.altitude_reached = scn.origin.h + scn.climb_rate * total >= scn.cruise.h;
    return out;
}

SweepTable sweep_cost(const ClimbSegment& seg, double ci_start, double ci_in, double q0, const AircraftParams& p,
                      const std::vector<double>& v_grid, const std::vector<TimeConstant>& taus) {
    if (v_grid.empty()) {
        throw std::invalid_argument("airspeed grid is empty");
    }
    for (double v : v_grid) {
        if (!(v > 0.0 && v <= p.v_max)) {
            throw std::domain_error("sweep airspeeds must lie in (0, v_max]");
        }
    }
    SweepTable table;
    table.v = v_grid;
    const auto evaluate = [&](const CostIndexInputs& ci, bool constant) {
        SweepCurve curve;
        curve.tau = ci.tau;
        curve.constant_ci = constant;
        curve.cost.reserve(v_grid.size());
        for (double v : v_grid) curve.cost.push_back(total_cost(v, seg, ci, q0, p));
        curve.argmin = static_cast<std::size_t>(
            std::min_element(curve.cost.begin(), curve.cost.end()) - curve.cost.begin());
        return curve;
    };
    for (const TimeConstant& tau : taus) {
        table.curves.push_back(evaluate({ci_start, ci_in, tau}, false));
    }
    table.curves.push_back(evaluate(CostIndexInputs::constant(ci_start), true));
    return table;
}

double mvt_crosscheck(const ClimbSegment& seg, double v, const AircraftParams& p, const Atmosphere& atmosphere,
                      double step) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("integration step must be positive");
    }
    const double t_c = climbing_time(v, seg);
    const auto rate = [&](double t) {
        const double h = altitude_at(t, seg.start, seg.end, seg.climb_rate);
        return charge_rate(v, seg.climb_rate, atmosphere.density(h), p);
    };
    double dq = 0.0;
    const auto steps = static_cast<std::size_t>(std::ceil(t_c / step - 1e-9));
    for (std::size_t i = 0; i < steps; ++i) {
        const double a = static_cast<double>(i) * step;
        const double b = (i + 1 == steps) ? t_c : a + step;
        dq += simpson(rate, a, b);
    }
    const double closed = -charge_used(v, seg, p);
    return std::abs(closed - dq) / std::abs(dq);
}

}  // namespace eclimb
