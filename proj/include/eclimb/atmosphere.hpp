#pragma once

namespace eclimb {

/// Air density as a function of altitude. Implementations are immutable.
class Atmosphere {
public:
    virtual ~Atmosphere() = default;

    /// Density [kg/m^3] at altitude h [m]. Throws std::domain_error outside
    /// [0, ceiling()].
    [[nodiscard]] virtual double density(double h) const = 0;

    /// Highest altitude [m] the model is valid for.
    [[nodiscard]] virtual double ceiling() const = 0;
};

/// Troposphere power law rho = c0 * (t0 - lapse*h)^exponent.
class TroposphereAtmosphere final : public Atmosphere {
public:
    struct Coefficients {
        double c0 = 4.1748e-11;   // kg m^-3 K^-4.256
        double t0 = 288.14;       // K
        double lapse = 0.00649;   // K/m
        double exponent = 4.256;
        double h_max = 11000.0;   // tropopause [m]
    };

    TroposphereAtmosphere() = default;
    explicit TroposphereAtmosphere(const Coefficients& coefficients);

    [[nodiscard]] double density(double h) const override;
    [[nodiscard]] double ceiling() const override { return k_.h_max; }
    [[nodiscard]] const Coefficients& coefficients() const { return k_; }

private:
    Coefficients k_{};
};

/// Altitude-independent density. Used for level-flight reductions and as a
/// stub in tests where the mean-value treatment must be exact.
class ConstantAtmosphere final : public Atmosphere {
public:
    explicit ConstantAtmosphere(double rho, double h_max = 11000.0);

    [[nodiscard]] double density(double h) const override;
    [[nodiscard]] double ceiling() const override { return h_max_; }

private:
    double rho_;
    double h_max_;
};

/// Arithmetic mean of density over the inclusive grid h0, h0+step, ..., hc.
/// When (hc-h0)/step is not an integer the last sample is placed at hc.
/// Throws std::invalid_argument when hc <= h0 or step <= 0.
[[nodiscard]] double mean_density(const Atmosphere& atmosphere, double h0, double hc, double step);

/// Same grid as mean_density, averaging 1/density.
[[nodiscard]] double mean_inverse_density(const Atmosphere& atmosphere, double h0, double hc,
                                          double step);

}  // namespace eclimb
