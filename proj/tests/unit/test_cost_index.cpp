#include "eclimb/cost_index.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

using namespace eclimb;

TEST_CASE("filter solution at landmark times") {
    const auto tau = TimeConstant::seconds(8.0);
    CHECK(ci_at(0.0, 200.0, 300.0, tau) == 200.0);
    CHECK(ci_at(8.0, 200.0, 300.0, tau) == doctest::Approx(300.0 - 100.0 * std::exp(-1.0)).epsilon(1e-15));
    CHECK(ci_at(1e4, 200.0, 300.0, tau) == doctest::Approx(300.0).epsilon(1e-15));
    CHECK(ci_at(50.0, 200.0, 300.0, TimeConstant::infinite()) == 200.0);
    CHECK_THROWS_AS((void)ci_at(-1.0, 200.0, 300.0, tau), std::domain_error);
}

TEST_CASE("time constant construction") {
    CHECK(TimeConstant::seconds(3.0).value() == 3.0);
    CHECK(TimeConstant::seconds(INFINITY).is_infinite());
    CHECK_THROWS_AS((void)TimeConstant::seconds(0.0), std::invalid_argument);
    CHECK_THROWS_AS((void)TimeConstant::seconds(-2.0), std::invalid_argument);
    CHECK_THROWS_AS((void)TimeConstant::infinite().value(), std::logic_error);
}

TEST_CASE("analytic filter matches RK4 integration") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> ci(0.0, 350.0), td(0.5, 500.0);
    for (int i = 0; i < 50; ++i) {
        const double a = ci(rng), b = ci(rng), tau = td(rng);
        const auto tc = TimeConstant::seconds(tau);
        CHECK(ci_ode_check(a, b, tc, 10 * tau) <= 1e-6 * std::abs(a - b));
        // Independent integrator.
        const auto path = oracle::integrate_filter(a, b, tau, tau / 100, 1000);
        double worst = 0.0;
        for (std::size_t k = 0; k < path.size(); ++k) {
            worst = std::max(worst, std::abs(path[k] - ci_at(static_cast<double>(k) * tau / 100, a, b, tc)));
        }
        CHECK(worst <= 1e-6 * std::abs(a - b));
    }
}

TEST_CASE("filter at equilibrium stays constant") {
    const auto tau = TimeConstant::seconds(5.0);
    CHECK(ci_ode_check(150.0, 150.0, tau, 50.0) == 0.0);
    for (double t = 0.0; t < 50.0; t += 1.0) CHECK(ci_at(t, 150.0, 150.0, tau) == 150.0);
}

TEST_CASE("slower filters stay farther from the commanded value") {
    for (double t = 0.5; t < 60.0; t += 0.5) {
        const double fast = ci_at(t, 200.0, 300.0, TimeConstant::seconds(5.0));
        const double slow = ci_at(t, 200.0, 300.0, TimeConstant::seconds(10.0));
        CHECK(std::abs(slow - 300.0) > std::abs(fast - 300.0));
    }
}

TEST_CASE("filter properties on random inputs") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> ci(0.0, 350.0), td(0.1, 100.0), tt(0.0, 300.0);
    for (int i = 0; i < 300; ++i) {
        const double a = ci(rng), b = ci(rng);
        const auto tau = TimeConstant::seconds(td(rng));
        const double t1 = tt(rng), t2 = tt(rng);
        // Semigroup.
        CHECK(ci_at(t1 + t2, a, b, tau) ==
              doctest::Approx(ci_at(t2, ci_at(t1, a, b, tau), b, tau)).epsilon(1e-12));
        // Range and monotone approach.
        const double lo = std::min(a, b), hi = std::max(a, b);
        const double c1 = ci_at(std::min(t1, t2), a, b, tau);
        const double c2 = ci_at(std::max(t1, t2), a, b, tau);
        CHECK(c1 >= lo - 1e-12);
        CHECK(c1 <= hi + 1e-12);
        CHECK(std::abs(c2 - b) <= std::abs(c1 - b) + 1e-12);
    }
}

TEST_CASE("schedule range checks") {
    CostIndexSchedule s;
    s.ci_max = 300.0;
    s.ci0 = 180.0;
    s.events.push_back({TimeTrigger{100.0}, 270.0});
    CHECK_NOTHROW(s.validate());
    s.events.push_back({TimeTrigger{200.0}, 301.0});
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.events.pop_back();
    s.ci0 = -1.0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    CHECK(ci_to_kilowatts(100.0, 133.2) == doctest::Approx(13.32));
}
