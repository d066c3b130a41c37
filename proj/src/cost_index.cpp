#include "eclimb/cost_index.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace eclimb {

TimeConstant TimeConstant::seconds(double tau) {
    if (std::isinf(tau) && tau > 0.0) {
        return infinite();
    }
    if (!(tau > 0.0)) {
        throw std::invalid_argument("filter time constant must be positive");
    }
    TimeConstant out;
    out.tau_ = tau;
    return out;
}

double TimeConstant::value() const {
    if (!tau_) {
        throw std::logic_error("time constant is infinite");
    }
    return *tau_;
}

double ci_at(double t, double ci_start, double ci_in, TimeConstant tau) {
    if (!(t >= 0.0)) {
        throw std::domain_error("cost index queried at negative time");
    }
    if (tau.is_infinite()) {
        return ci_start;
    }
    return std::exp(-t / tau.value()) * (ci_start - ci_in) + ci_in;
}

double ci_ode_check(double ci_start, double ci_in, TimeConstant tau, double horizon) {
    if (!(horizon > 0.0)) {
        throw std::invalid_argument("integration horizon must be positive");
    }
    if (tau.is_infinite()) {
        return 0.0;  // dCI/dt == 0
    }
    const double tc = tau.value();
    const double h = tc / 100.0;
    const auto rhs = [&](double ci) { return (ci_in - ci) / tc; };

    double ci = ci_start;
    double t = 0.0;
    double worst = 0.0;
    while (t < horizon) {
        const double step = std::min(h, horizon - t);
        const double k1 = rhs(ci);
        const double k2 = rhs(ci + 0.5 * step * k1);
        const double k3 = rhs(ci + 0.5 * step * k2);
        const double k4 = rhs(ci + step * k3);
        ci += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        t += step;
        worst = std::max(worst, std::abs(ci - ci_at(t, ci_start, ci_in, tau)));
    }
    return worst;
}

void CostIndexSchedule::validate() const {
    if (!(ci_max > 0.0)) {
        throw std::invalid_argument("ci_max must be positive");
    }
    const auto in_envelope = [&](double ci) { return ci >= 0.0 && ci <= ci_max * (1.0 + 1e-12); };
    if (!in_envelope(ci0)) {
        std::ostringstream msg;
        msg << "ci0 = " << ci0 << " outside [0, ci_max = " << ci_max << "]";
        throw std::invalid_argument(msg.str());
    }
    for (std::size_t i = 0; i < events.size(); ++i) {
        if (!in_envelope(events[i].ci_in)) {
            std::ostringstream msg;
            msg << "event " << i << ": ci_in = " << events[i].ci_in << " outside [0, ci_max = " << ci_max
                << "]";
            throw std::invalid_argument(msg.str());
        }
    }
}

}  // namespace eclimb
