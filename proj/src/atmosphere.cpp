#include "eclimb/atmosphere.hpp"

#include <cmath>
#include <cstddef>
#include <sstream>
#include <stdexcept>

namespace eclimb {

namespace {

void check_altitude(double h, double h_max) {
    if (!(h >= 0.0 && h <= h_max)) {
        std::ostringstream msg;
        msg << "altitude " << h << " m outside valid interval [0, " << h_max << "] m";
        throw std::domain_error(msg.str());
    }
}

template <typename Sample>
double grid_mean(double h0, double hc, double step, Sample&& sample) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("altitude grid step must be positive");
    }
    if (!(hc > h0)) {
        std::ostringstream msg;
        msg << "degenerate climb segment: end altitude " << hc << " m must exceed start altitude "
            << h0 << " m";
        throw std::invalid_argument(msg.str());
    }
    // Intervals on the grid; the tolerance keeps exact multiples from
    // picking up a spurious extra sample through rounding.
    const auto intervals =
        static_cast<std::size_t>(std::ceil((hc - h0) / step - 1e-9));
    double sum = 0.0;
    for (std::size_t i = 0; i < intervals; ++i) {
        sum += sample(h0 + static_cast<double>(i) * step);
    }
    sum += sample(hc);
    return sum / static_cast<double>(intervals + 1);
}

}  // namespace

TroposphereAtmosphere::TroposphereAtmosphere(const Coefficients& coefficients) : k_(coefficients) {
    if (!(k_.c0 > 0.0 && k_.t0 > 0.0 && k_.lapse > 0.0 && k_.exponent > 0.0 && k_.h_max > 0.0) ||
        k_.t0 - k_.lapse * k_.h_max <= 0.0) {
        throw std::invalid_argument("troposphere coefficients must give positive density up to h_max");
    }
}

double TroposphereAtmosphere::density(double h) const {
    check_altitude(h, k_.h_max);
    return k_.c0 * std::pow(k_.t0 - k_.lapse * h, k_.exponent);
}

ConstantAtmosphere::ConstantAtmosphere(double rho, double h_max) : rho_(rho), h_max_(h_max) {
    if (!(rho > 0.0 && h_max > 0.0)) {
        throw std::invalid_argument("constant atmosphere needs positive density and ceiling");
    }
}

double ConstantAtmosphere::density(double h) const {
    check_altitude(h, h_max_);
    return rho_;
}

double mean_density(const Atmosphere& atmosphere, double h0, double hc, double step) {
    return grid_mean(h0, hc, step, [&](double h) { return atmosphere.density(h); });
}

double mean_inverse_density(const Atmosphere& atmosphere, double h0, double hc, double step) {
    return grid_mean(h0, hc, step, [&](double h) { return 1.0 / atmosphere.density(h); });
}

}  // namespace eclimb
