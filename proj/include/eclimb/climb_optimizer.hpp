#pragma once

#include "eclimb/climb_segment.hpp"
#include "eclimb/cost_index.hpp"
#include "eclimb/vehicle.hpp"

#include <stdexcept>
#include <string>

namespace eclimb {

/// Cost-index forcing over one constant-airspeed segment: CI starts at
/// ci_start when the segment begins and relaxes toward ci_in with time
/// constant tau. An infinite tau keeps CI at ci_start.
struct CostIndexInputs {
    double ci_start = 0.0;
    double ci_in = 0.0;
    TimeConstant tau = TimeConstant::infinite();

    [[nodiscard]] static CostIndexInputs constant(double ci) {
        return {ci, ci, TimeConstant::infinite()};
    }
};

/// Direct operating cost over the segment divided by the energy price,
/// in coulombs:
///   J(v) = tau*(ci_start - ci_in)*(1 - exp(-d/(tau v))) + ci_in*d/v + q0 - Q_f(v)
/// For infinite tau the first two terms collapse to ci_start*d/v.
[[nodiscard]] double total_cost(double v, const ClimbSegment& seg, const CostIndexInputs& ci, double q0,
                                const AircraftParams& p);

/// dJ/dv.
[[nodiscard]] double cost_gradient(double v, const ClimbSegment& seg, const CostIndexInputs& ci,
                                   const AircraftParams& p);

/// d2J/dv2. Positive at a minimiser.
[[nodiscard]] double cost_curvature(double v, const ClimbSegment& seg, const CostIndexInputs& ci,
                                    const AircraftParams& p);

/// Climbing time d/v for a constant airspeed.
[[nodiscard]] double climbing_time(double v, const ClimbSegment& seg);

struct SolverOptions {
    double v_lo = 5.0;            // lower end of the search bracket [m/s]
    double rel_tol = 1e-10;       // relative tolerance on v
    unsigned max_iterations = 200;
    unsigned scan_points = 50;    // log-spaced sign scan before polishing
};

struct ClimbPlan {
    double v_star = 0.0;         // [m/s]
    double t_c_star = 0.0;       // [s]
    double j_star = 0.0;         // [C]
    double q_f = 0.0;            // [C]
    double curvature = 0.0;      // d2J/dv2 at v_star
    bool sufficient_ok = false;  // curvature > 0 (always true for interior optima)
    bool at_speed_limit = false; // unconstrained optimum lies above v_max
    bool depleted = false;       // q_f < 0
    unsigned iterations = 0;     // root-polishing iterations
};

class OptimizerError : public std::runtime_error {
public:
    enum class Kind { NoInteriorOptimum, SufficientConditionViolated, CalibrationFailed };

    OptimizerError(Kind kind, const std::string& what, double gradient_lo = 0.0, double gradient_hi = 0.0)
        : std::runtime_error(what), kind_(kind), gradient_lo_(gradient_lo), gradient_hi_(gradient_hi) {}

    [[nodiscard]] Kind kind() const { return kind_; }
    /// Gradient at the ends of the search bracket (NoInteriorOptimum only).
    [[nodiscard]] double gradient_lo() const { return gradient_lo_; }
    [[nodiscard]] double gradient_hi() const { return gradient_hi_; }

private:
    Kind kind_;
    double gradient_lo_;
    double gradient_hi_;
};

/// Minimises J over [opts.v_lo, v_max]. Interior minima are roots of
/// cost_gradient located by a sign scan and polished with TOMS 748; when the
/// gradient is still negative at v_max the plan is clipped there and
/// at_speed_limit is set. If several minima exist the lowest cost wins.
[[nodiscard]] ClimbPlan solve_optimal_speed(const ClimbSegment& seg, const CostIndexInputs& ci, double q0,
                                            const AircraftParams& p, const SolverOptions& opts = {});

/// Pre-departure ECON speed for a constant cost index ci0.
[[nodiscard]] ClimbPlan fms_initial_speed(const ClimbSegment& seg, double ci0, double q0,
                                          const AircraftParams& p, const SolverOptions& opts = {});

/// Cost index whose constant-CI ECON speed on seg is exactly v_max.
[[nodiscard]] double calibrate_ci_max(const AircraftParams& p, const ClimbSegment& seg);

/// ci_max such that fms_initial_speed(fraction*ci_max) returns target_v,
/// found by bisection. Throws OptimizerError(CalibrationFailed) when
/// target_v is not reachable inside [v(0), v_max].
[[nodiscard]] double calibrate_ci_max_to_speed(const AircraftParams& p, const ClimbSegment& seg,
                                               double fraction, double target_v,
                                               const SolverOptions& opts = {});

}  // namespace eclimb
