#pragma once

// Independent reference computations for the test suites. Nothing here may
// call into the code paths it is used to check.

#include <cmath>
#include <cstddef>
#include <functional>
#include <random>
#include <vector>

namespace eclimb::oracle {

// Troposphere power law evaluated in long double.
inline long double troposphere_density(long double h) {
    return 4.1748e-11L * std::pow(288.14L - 0.00649L * h, 4.256L);
}

struct DensityMeans {
    double rho_bar;
    double inv_rho_bar;
};

// Brute-force inclusive-grid summation of rho and 1/rho.
inline DensityMeans brute_force_means(double h0, double hc, double step) {
    long double sum = 0.0L;
    long double inv = 0.0L;
    const auto n = static_cast<long>(std::llround((hc - h0) / step));
    for (long i = 0; i <= n; ++i) {
        const long double rho = troposphere_density(h0 + static_cast<long double>(i) * step);
        sum += rho;
        inv += 1.0L / rho;
    }
    return {static_cast<double>(sum / (n + 1)), static_cast<double>(inv / (n + 1))};
}

inline double central_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

inline double second_difference(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

inline double relative_error(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

// Plain bisection on a bracket with a sign change.
inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iterations = 200) {
    double flo = f(lo);
    for (int i = 0; i < iterations; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Index of the smallest value of f over the grid lo, lo+step, ..., <= hi.
struct GridMin {
    double x;
    double value;
};

inline GridMin grid_minimum(const std::function<double(double)>& f, double lo, double hi, double step) {
    GridMin best{lo, f(lo)};
    const auto n = static_cast<long>(std::floor((hi - lo) / step + 1e-9));
    for (long i = 1; i <= n; ++i) {
        const double x = lo + static_cast<double>(i) * step;
        const double v = f(x);
        if (v < best.value) best = {x, v};
    }
    return best;
}

// Fixed-step RK4 for tau*dCI/dt = -CI + ci_in, sampled at each step.
inline std::vector<double> integrate_filter(double ci_start, double ci_in, double tau, double step,
                                            std::size_t steps) {
    std::vector<double> out{ci_start};
    double ci = ci_start;
    const auto rhs = [&](double c) { return (ci_in - c) / tau; };
    for (std::size_t i = 0; i < steps; ++i) {
        const double k1 = rhs(ci);
        const double k2 = rhs(ci + 0.5 * step * k1);
        const double k3 = rhs(ci + 0.5 * step * k2);
        const double k4 = rhs(ci + step * k3);
        ci += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        out.push_back(ci);
    }
    return out;
}

struct Airframe {
    double S, mass, cd0, cd2, U, eta, g;
    [[nodiscard]] double W() const { return mass * g; }
};

inline Airframe e430() { return {11.37, 472.0, 0.035, 0.009, 133.2, 0.7, 9.80665}; }

// Charge drawn [C] by a constant-airspeed climb whose altitude rises at
// h_dot from h0 until hc and then holds, integrated by the trapezoid rule.
inline double integrated_charge(const Airframe& a, double v, double distance, double h_dot, double h0, double hc,
                                const std::function<double(double)>& rho_of_h, double step) {
    const double tc = distance / v;
    const double W = a.W();
    const auto current = [&](double t) {
        const double rho = rho_of_h(std::min(h0 + h_dot * t, hc));
        const double thrust = W * h_dot / v + 0.5 * rho * a.S * a.cd0 * v * v +
                              2.0 * a.cd2 * W * W / (rho * a.S * v * v);
        return thrust * v / (a.eta * a.U);
    };
    double q = 0.0;
    double t = 0.0;
    while (t < tc) {
        const double dt = std::min(step, tc - t);
        q += 0.5 * dt * (current(t) + current(t + dt));
        t += dt;
    }
    return q;
}

}  // namespace eclimb::oracle

namespace eclimb::oracle {

struct SegmentScalars {
    double d, h_dot, rho_bar, inv_rho_bar;
};

// Cost functional written out directly; tau <= 0 or inf means constant CI.
inline double total_cost(const Airframe& a, const SegmentScalars& s, double ci_start, double ci_in, double tau,
                         double v) {
    const double W = a.W();
    const double used = s.d / (a.eta * a.U) *
                        (W * s.h_dot / v + s.rho_bar * a.S * a.cd0 * v * v / 2 +
                         2 * a.cd2 * W * W * s.inv_rho_bar / (a.S * v * v));
    if (!(tau > 0.0) || std::isinf(tau)) return ci_start * s.d / v + used;
    return tau * (ci_start - ci_in) * (1 - std::exp(-s.d / (tau * v))) + ci_in * s.d / v + used;
}

}  // namespace eclimb::oracle
