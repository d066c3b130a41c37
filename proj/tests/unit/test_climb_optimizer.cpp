#include "eclimb/climb_optimizer.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <chrono>
#include <cmath>
#include <random>

using namespace eclimb;

namespace {

const TroposphereAtmosphere kAtm;
const AircraftParams kE430 = AircraftParams::e430();

ClimbSegment yul_climb() { return make_segment({0, 0}, {30000, 1000}, 1.65, kAtm, 1.0); }

oracle::SegmentScalars scalars(const ClimbSegment& s) {
    return {s.distance, s.climb_rate, s.mean_rho, s.mean_inv_rho};
}

constexpr double kmh(double ms) { return ms * 3.6; }

}  // namespace

TEST_CASE("total cost matches the direct formula") {
    const auto seg = yul_climb();
    const auto o = oracle::e430();
    for (double v : {20.0, 35.0, 44.0}) {
        CHECK(total_cost(v, seg, {180, 270, TimeConstant::seconds(7.7)}, 4e5, kE430) ==
              doctest::Approx(oracle::total_cost(o, scalars(seg), 180, 270, 7.7, v)).epsilon(1e-12));
        // Equal forcing: the transient term vanishes.
        CHECK(total_cost(v, seg, {200, 200, TimeConstant::seconds(7.7)}, 4e5, kE430) ==
              doctest::Approx(oracle::total_cost(o, scalars(seg), 200, 200, 0, v)).epsilon(1e-12));
    }
}

TEST_CASE("total cost approaches the constant-CI cost as tau grows") {
    const auto seg = yul_climb();
    for (double v : {25.0, 40.0}) {
        const double limit = total_cost(v, seg, CostIndexInputs::constant(180), 0, kE430);
        CHECK(total_cost(v, seg, {180, 270, TimeConstant::seconds(1e12)}, 0, kE430) ==
              doctest::Approx(limit).epsilon(1e-9));
    }
}

TEST_CASE("total cost is convex with one interior minimum on the airspeed range") {
    const auto seg = yul_climb();
    const CostIndexInputs ci{180, 270, TimeConstant::seconds(7.7)};
    std::vector<double> j;
    for (double vk = 20.0; vk <= kmh(kE430.v_max) + 1e-9; vk += 0.1) j.push_back(total_cost(vk / 3.6, seg, ci, 0, kE430));
    int minima = 0;
    for (std::size_t i = 1; i + 1 < j.size(); ++i) {
        CHECK(j[i + 1] - 2 * j[i] + j[i - 1] > 0.0);
        if (j[i] < j[i - 1] && j[i] < j[i + 1]) ++minima;
    }
    CHECK(minima == 1);
}

TEST_CASE("gradient and curvature match finite differences") {
    const auto seg = yul_climb();
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> vd(15.0, kE430.v_max), cd(0.0, 330.0), td(1.0, 8000.0);
    for (int i = 0; i < 20; ++i) {
        const double v = vd(rng);
        const CostIndexInputs ci{cd(rng), cd(rng), TimeConstant::seconds(td(rng))};
        const auto j = [&](double x) { return total_cost(x, seg, ci, 0, kE430); };
        CHECK(oracle::relative_error(cost_gradient(v, seg, ci, kE430),
                                     oracle::central_difference(j, v, 1e-4 * v)) < 1e-6);
        CHECK(oracle::relative_error(cost_curvature(v, seg, ci, kE430),
                                     oracle::second_difference(j, v, 1e-3 * v)) < 1e-4);
    }
}

TEST_CASE("equal forcing gives the constant-CI gradient and a positive curvature") {
    const auto seg = yul_climb();
    for (double v = 5.0; v <= 60.0; v += 0.5) {
        const CostIndexInputs ci{150, 150, TimeConstant::seconds(20.0)};
        CHECK(cost_gradient(v, seg, ci, kE430) ==
              doctest::Approx(-150 * seg.distance / (v * v) - final_charge_sensitivity(v, seg, kE430)).epsilon(1e-12));
        CHECK(cost_curvature(v, seg, ci, kE430) > 0.0);
    }
}

TEST_CASE("climbing time") {
    const auto seg = yul_climb();
    CHECK(std::abs(climbing_time(140.19 / 3.6, seg) - 771.0) <= 1.0);
    const auto first_half = make_segment({0, 0}, {15000, 500}, 1.65, kAtm, 1.0);
    CHECK(std::abs(climbing_time(140.19 / 3.6, first_half) - 386.0) <= 1.0);
    CHECK(climbing_time(80.0, seg) == doctest::Approx(climbing_time(40.0, seg) / 2).epsilon(1e-15));
    CHECK_THROWS_AS((void)climbing_time(0.0, seg), std::domain_error);
}

TEST_CASE("ci_max from v_max puts the ECON speed at v_max") {
    const auto seg = yul_climb();
    const double ci_max = calibrate_ci_max(kE430, seg);
    CHECK(ci_max > 0.0);
    CHECK(fms_initial_speed(seg, ci_max, 0, kE430).v_star == doctest::Approx(kE430.v_max).epsilon(1e-8));
    // Initial ECON speed at 0.6 ci_max lands within 2 % of the reported 140.19 km/h.
    const double v0 = kmh(fms_initial_speed(seg, 0.6 * ci_max, 0, kE430).v_star);
    CHECK(std::abs(v0 - 140.19) / 140.19 < 0.02);
}

TEST_CASE("calibrated ci_max reproduces the reported FMS speed") {
    const auto seg = yul_climb();
    const double ci_max = calibrate_ci_max_to_speed(kE430, seg, 0.6, 140.19 / 3.6);
    CHECK(ci_max > 0.0);
    const auto plan = fms_initial_speed(seg, 0.6 * ci_max, 4e5, kE430);
    CHECK(std::abs(kmh(plan.v_star) - 140.19) < 0.01);
    CHECK(std::abs(plan.t_c_star - 771.0) <= 1.0);
    CHECK(plan.sufficient_ok);
    CHECK_FALSE(plan.at_speed_limit);
    CHECK_THROWS_AS((void)calibrate_ci_max_to_speed(kE430, seg, 0.6, 50.0), OptimizerError);
    CHECK_THROWS_AS((void)calibrate_ci_max_to_speed(kE430, seg, 0.6, 20.0), OptimizerError);
}

TEST_CASE("replanned speed after the ATC input") {
    const auto seg = yul_climb();
    const double ci_max = calibrate_ci_max_to_speed(kE430, seg, 0.6, 140.19 / 3.6);
    const double t_c0 = fms_initial_speed(seg, 0.6 * ci_max, 0, kE430).t_c_star;
    // Remaining geometry, densities averaged over the whole climb.
    const auto rest = make_segment({15000, 500}, {30000, 1000}, 1.65, kAtm, 1.0, 0.0, 1000.0);
    const auto plan =
        solve_optimal_speed(rest, {0.6 * ci_max, 0.9 * ci_max, TimeConstant::seconds(0.01 * t_c0)}, 0, kE430);
    CHECK(std::abs(kmh(plan.v_star) - 154.13) <= 0.2);
    CHECK(plan.curvature > 0.0);
    CHECK(std::abs(cost_gradient(plan.v_star, rest, {0.6 * ci_max, 0.9 * ci_max, TimeConstant::seconds(0.01 * t_c0)},
                                 kE430)) < 1e-6 * seg.distance / (plan.v_star * plan.v_star));
}

TEST_CASE("solver optimum agrees with a brute-force grid argmin") {
    const auto seg = yul_climb();
    const auto o = oracle::e430();
    const double step = 0.01 / 3.6;
    for (const auto& [a, b, tau] : {std::tuple{180.0, 270.0, 7.7}, std::tuple{270.0, 60.0, 400.0},
                                    std::tuple{0.0, 300.0, 2000.0}}) {
        const auto plan = solve_optimal_speed(seg, {a, b, TimeConstant::seconds(tau)}, 0, kE430);
        const auto best = oracle::grid_minimum(
            [&](double v) { return oracle::total_cost(o, scalars(seg), a, b, tau, v); }, 5.0, kE430.v_max, step);
        CHECK(std::abs(plan.v_star - best.x) <= step);
    }
}

TEST_CASE("zero cost index flies the minimum-charge speed") {
    const auto seg = yul_climb();
    const auto plan = fms_initial_speed(seg, 0.0, 0, kE430);
    const double root =
        oracle::bisect([&](double v) { return final_charge_sensitivity(v, seg, kE430); }, 5.0, kE430.v_max);
    CHECK(plan.v_star == doctest::Approx(root).epsilon(1e-8));
}

TEST_CASE("very slow filter agrees with the FMS initialisation") {
    const auto seg = yul_climb();
    for (double ci : {50.0, 180.0, 300.0}) {
        const auto slow = solve_optimal_speed(seg, {ci, 0.5 * ci, TimeConstant::seconds(1e9)}, 0, kE430);
        const auto fms = fms_initial_speed(seg, ci, 0, kE430);
        CHECK(std::abs(kmh(slow.v_star) - kmh(fms.v_star)) < 0.01);
    }
}

TEST_CASE("ECON speed is nondecreasing in a constant cost index") {
    const auto seg = yul_climb();
    const double ci_max = calibrate_ci_max(kE430, seg);
    double prev = 0.0;
    for (double f = 0.0; f <= 1.0; f += 0.05) {
        const double v = fms_initial_speed(seg, f * ci_max, 0, kE430).v_star;
        CHECK(v >= prev);
        prev = v;
    }
}

TEST_CASE("faster filters raise the speed when the commanded CI is higher") {
    const auto seg = yul_climb();
    const double ci_max = calibrate_ci_max(kE430, seg);
    double prev = kE430.v_max + 1.0;
    for (double tau : {1.0, 10.0, 100.0, 1000.0, 10000.0}) {
        const double v =
            solve_optimal_speed(seg, {0.3 * ci_max, 0.9 * ci_max, TimeConstant::seconds(tau)}, 0, kE430).v_star;
        CHECK(v <= prev);
        prev = v;
    }
}

TEST_CASE("cost index beyond the envelope clips at v_max") {
    const auto seg = yul_climb();
    const double ci_max = calibrate_ci_max(kE430, seg);
    const auto plan = fms_initial_speed(seg, 3.0 * ci_max, 0, kE430);
    CHECK(plan.at_speed_limit);
    CHECK(plan.v_star == kE430.v_max);
    CHECK(plan.t_c_star == doctest::Approx(seg.distance / kE430.v_max));
}

TEST_CASE("optimum below the bracket is reported with gradient signs") {
    const auto seg = yul_climb();
    SolverOptions opts;
    opts.v_lo = 43.0;  // above the zero-CI optimum
    try {
        (void)fms_initial_speed(seg, 0.0, 0, kE430, opts);
        FAIL("expected OptimizerError");
    } catch (const OptimizerError& e) {
        CHECK(e.kind() == OptimizerError::Kind::NoInteriorOptimum);
        CHECK(e.gradient_lo() > 0.0);
        CHECK(e.gradient_hi() > 0.0);
        CHECK(std::string(e.what()).find("positive at v_lo") != std::string::npos);
    }
}

TEST_CASE("level flight reduces the optimality condition to the cruise equation") {
    const double rho = 1.0;
    const auto seg = make_segment({0, 1000}, {30000, 1000}, 0.0, rho, 1.0 / rho);
    const auto o = oracle::e430();
    const double W = o.W();
    for (int k = 0; k < 10; ++k) {
        const double v = 15.0 + 3.0 * k;
        // Cruise: dJ/dv = -CI d/v^2 + (d/(eta U)) dD/dv, D from the drag polar at fixed rho.
        const double d_drag = rho * o.S * o.cd0 * v - 4 * o.cd2 * W * W / (rho * o.S * v * v * v);
        const double cruise = -120.0 * seg.distance / (v * v) + seg.distance / (o.eta * o.U) * d_drag;
        CHECK(cost_gradient(v, seg, CostIndexInputs::constant(120.0), kE430) == doctest::Approx(cruise).epsilon(1e-12));
    }
}

TEST_CASE("a single solve is fast") {
    const auto seg = yul_climb();
    const auto t0 = std::chrono::steady_clock::now();
    const double ci_max = calibrate_ci_max_to_speed(kE430, seg, 0.6, 140.19 / 3.6);
    (void)fms_initial_speed(seg, 0.6 * ci_max, 0, kE430);
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    CHECK(dt.count() < 1.0);
}
