#include "eclimb/climb_optimizer.hpp"

#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>
#include <vector>

namespace eclimb {

namespace {

void require_positive_speed(double v) {
    if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << "airspeed must be positive, got " << v << " m/s";
        throw std::domain_error(msg.str());
    }
}

// -d2Q_f/dv2 for the closed-form final charge.
double charge_curvature(double v, const ClimbSegment& seg, const AircraftParams& p) {
    const double w = p.weight();
    const double s = p.wing_area;
    const double v3 = v * v * v;
    const double bracket = 2.0 * w * seg.climb_rate / v3 + seg.mean_rho * s * p.cd0 +
                           12.0 * p.cd2 * w * w * seg.mean_inv_rho / (s * v3 * v);
    return seg.distance / (p.efficiency * p.voltage) * bracket;
}

struct RelativeTolerance {
    double rel;
    bool operator()(double a, double b) const {
        return std::abs(a - b) <= rel * std::min(std::abs(a), std::abs(b));
    }
};

const char* sign_name(double g) { return g < 0.0 ? "negative" : (g > 0.0 ? "positive" : "zero"); }

}  // namespace

double climbing_time(double v, const ClimbSegment& seg) {
    require_positive_speed(v);
    return seg.distance / v;
}

double total_cost(double v, const ClimbSegment& seg, const CostIndexInputs& ci, double q0,
                  const AircraftParams& p) {
    require_positive_speed(v);
    const double d = seg.distance;
    double time_cost = 0.0;
    if (ci.tau.is_infinite()) {
        time_cost = ci.ci_start * d / v;
    } else {
        const double tau = ci.tau.value();
        time_cost = -tau * (ci.ci_start - ci.ci_in) * std::expm1(-d / (tau * v)) + ci.ci_in * d / v;
    }
    return time_cost + q0 - final_charge(q0, v, seg, p).charge;
}

double cost_gradient(double v, const ClimbSegment& seg, const CostIndexInputs& ci, const AircraftParams& p) {
    require_positive_speed(v);
    const double d = seg.distance;
    const double v2 = v * v;
    double time_term = 0.0;
    if (ci.tau.is_infinite()) {
        time_term = -ci.ci_start * d / v2;
    } else {
        const double decay = std::exp(-d / (ci.tau.value() * v));
        time_term = -(ci.ci_start - ci.ci_in) * d * decay / v2 - ci.ci_in * d / v2;
    }
    return time_term - final_charge_sensitivity(v, seg, p);
}

double cost_curvature(double v, const ClimbSegment& seg, const CostIndexInputs& ci, const AircraftParams& p) {
    require_positive_speed(v);
    const double d = seg.distance;
    const double v3 = v * v * v;
    double time_term = 0.0;
    if (ci.tau.is_infinite()) {
        time_term = 2.0 * ci.ci_start * d / v3;
    } else {
        const double tau = ci.tau.value();
        const double decay = std::exp(-d / (tau * v));
        time_term = (ci.ci_start - ci.ci_in) * d * decay * (2.0 * v - d / tau) / (v3 * v) +
                    2.0 * ci.ci_in * d / v3;
    }
    return time_term + charge_curvature(v, seg, p);
}

ClimbPlan solve_optimal_speed(const ClimbSegment& seg, const CostIndexInputs& ci, double q0,
                              const AircraftParams& p, const SolverOptions& opts) {
    const double v_lo = opts.v_lo;
    const double v_hi = p.v_max;
    if (!(v_lo > 0.0 && v_lo < v_hi)) {
        throw std::invalid_argument("search bracket requires 0 < v_lo < v_max");
    }
    const unsigned n = std::max(opts.scan_points, 2U);
    const auto gradient = [&](double v) { return cost_gradient(v, seg, ci, p); };

    std::vector<double> grid(n);
    std::vector<double> g(n);
    for (unsigned i = 0; i < n; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(n - 1);
        grid[i] = (i + 1 == n) ? v_hi : v_lo * std::pow(v_hi / v_lo, frac);
        g[i] = gradient(grid[i]);
    }

    struct Candidate {
        double v;
        unsigned iterations;
        bool boundary;
    };
    std::vector<Candidate> candidates;
    for (unsigned i = 0; i + 1 < n; ++i) {
        if (!(g[i] < 0.0 && g[i + 1] >= 0.0)) {
            continue;
        }
        if (g[i + 1] == 0.0) {
            candidates.push_back({grid[i + 1], 0, false});
            continue;
        }
        std::uintmax_t iters = opts.max_iterations;
        const auto [a, b] = boost::math::tools::toms748_solve(gradient, grid[i], grid[i + 1], g[i], g[i + 1],
                                                              RelativeTolerance{opts.rel_tol}, iters);
        candidates.push_back({0.5 * (a + b), static_cast<unsigned>(iters), false});
    }
    if (g[n - 1] < 0.0) {
        candidates.push_back({v_hi, 0, true});
    }
    if (candidates.empty()) {
        std::ostringstream msg;
        msg << "no interior optimum in [" << v_lo << ", " << v_hi << "] m/s: gradient is "
            << sign_name(g.front()) << " at v_lo and " << sign_name(g.back()) << " at v_max";
        throw OptimizerError(OptimizerError::Kind::NoInteriorOptimum, msg.str(), g.front(), g.back());
    }

    const Candidate* best = nullptr;
    double best_cost = std::numeric_limits<double>::infinity();
    for (const auto& c : candidates) {
        const double j = total_cost(c.v, seg, ci, q0, p);
        if (j < best_cost) {
            best_cost = j;
            best = &c;
        }
    }

    ClimbPlan plan;
    plan.v_star = best->v;
    plan.t_c_star = climbing_time(best->v, seg);
    plan.j_star = best_cost;
    const FinalCharge qf = final_charge(q0, best->v, seg, p);
    plan.q_f = qf.charge;
    plan.depleted = qf.depleted;
    plan.curvature = cost_curvature(best->v, seg, ci, p);
    plan.at_speed_limit = best->boundary;
    plan.iterations = best->iterations;
    plan.sufficient_ok = plan.curvature > 0.0;
    if (!best->boundary && !plan.sufficient_ok) {
        std::ostringstream msg;
        msg << "stationary point at v = " << plan.v_star << " m/s is not a minimum (d2J/dv2 = "
            << plan.curvature << ")";
        throw OptimizerError(OptimizerError::Kind::SufficientConditionViolated, msg.str());
    }
    return plan;
}

ClimbPlan fms_initial_speed(const ClimbSegment& seg, double ci0, double q0, const AircraftParams& p,
                            const SolverOptions& opts) {
    return solve_optimal_speed(seg, CostIndexInputs::constant(ci0), q0, p, opts);
}

double calibrate_ci_max(const AircraftParams& p, const ClimbSegment& seg) {
    const double v = p.v_max;
    const double ci_max = -final_charge_sensitivity(v, seg, p) * v * v / seg.distance;
    if (!(ci_max > 0.0)) {
        std::ostringstream msg;
        msg << "v_max = " << v << " m/s is at or below the minimum-energy speed; no positive ci_max";
        throw OptimizerError(OptimizerError::Kind::CalibrationFailed, msg.str());
    }
    return ci_max;
}

double calibrate_ci_max_to_speed(const AircraftParams& p, const ClimbSegment& seg, double fraction,
                                 double target_v, const SolverOptions& opts) {
    if (!(fraction > 0.0 && fraction <= 1.0)) {
        throw std::invalid_argument("ci0 fraction must lie in (0, 1]");
    }
    const auto speed_for = [&](double ci_max) {
        return fms_initial_speed(seg, fraction * ci_max, 0.0, p, opts).v_star;
    };
    const double v_floor = speed_for(0.0);
    if (!(target_v > v_floor && target_v <= p.v_max)) {
        std::ostringstream msg;
        msg << "target speed " << target_v << " m/s not reachable: constant-CI ECON speeds span ["
            << v_floor << ", " << p.v_max << "] m/s";
        throw OptimizerError(OptimizerError::Kind::CalibrationFailed, msg.str());
    }
    // At this ci_max, fraction*ci_max already drives the ECON speed to v_max.
    const double hi = calibrate_ci_max(p, seg) / fraction;
    std::uintmax_t iters = opts.max_iterations;
    const auto [a, b] = boost::math::tools::bisect(
        [&](double c) { return speed_for(c) - target_v; }, 0.0, hi,
        [](double lo, double up) { return std::abs(up - lo) <= 1e-13 * std::abs(up); }, iters);
    if (iters >= opts.max_iterations) {
        throw OptimizerError(OptimizerError::Kind::CalibrationFailed, "ci_max bisection did not converge");
    }
    return 0.5 * (a + b);
}

}  // namespace eclimb
