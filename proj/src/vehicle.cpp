#include "eclimb/vehicle.hpp"

#include <sstream>
#include <stdexcept>

namespace eclimb {

namespace {

void require_positive_speed(double v) {
    if (!(v > 0.0)) {
        std::ostringstream msg;
        msg << "airspeed must be positive, got " << v << " m/s";
        throw std::domain_error(msg.str());
    }
}

void require_positive_density(double rho) {
    if (!(rho > 0.0)) {
        std::ostringstream msg;
        msg << "air density must be positive, got " << rho << " kg/m^3";
        throw std::domain_error(msg.str());
    }
}

void require(bool ok, const char* field) {
    if (!ok) {
        throw std::invalid_argument(std::string("aircraft parameter out of range: ") + field);
    }
}

}  // namespace

void AircraftParams::validate() const {
    require(wing_area > 0.0, "wing_area");
    require(mass > 0.0, "mass");
    require(cd0 > 0.0, "cd0");
    require(cd2 > 0.0, "cd2");
    require(v_max > 0.0, "v_max");
    require(voltage > 0.0, "voltage");
    require(efficiency > 0.0 && efficiency <= 1.0, "efficiency");
    require(gravity > 0.0, "gravity");
}

AircraftParams AircraftParams::e430() {
    AircraftParams p;
    p.wing_area = 11.37;
    p.mass = 472.0;
    p.cd0 = 0.035;
    p.cd2 = 0.009;
    p.v_max = 161.0 / 3.6;
    p.voltage = 133.2;
    p.efficiency = 0.7;
    return p;
}

double drag(double v, double rho, const AircraftParams& p) {
    require_positive_speed(v);
    require_positive_density(rho);
    const double w = p.weight();
    return 0.5 * rho * p.wing_area * p.cd0 * v * v +
           2.0 * p.cd2 * w * w / (rho * p.wing_area * v * v);
}

double thrust_for_climb(double v, double h_dot, double rho, const AircraftParams& p) {
    require_positive_speed(v);
    return p.weight() * h_dot / v + drag(v, rho, p);
}

double charge_rate(double v, double h_dot, double rho, const AircraftParams& p) {
    require_positive_speed(v);
    require_positive_density(rho);
    const double w = p.weight();
    const double power = w * h_dot + 0.5 * rho * p.wing_area * p.cd0 * v * v * v +
                         2.0 * p.cd2 * w * w / (rho * p.wing_area * v);
    return -power / (p.efficiency * p.voltage);
}

double charge_used(double v, const ClimbSegment& seg, const AircraftParams& p) {
    require_positive_speed(v);
    const double w = p.weight();
    const double s = p.wing_area;
    const double bracket = w * seg.climb_rate / v + 0.5 * seg.mean_rho * s * p.cd0 * v * v +
                           2.0 * p.cd2 * w * w * seg.mean_inv_rho / (s * v * v);
    return seg.distance / (p.efficiency * p.voltage) * bracket;
}

FinalCharge final_charge(double q0, double v, const ClimbSegment& seg, const AircraftParams& p) {
    FinalCharge out;
    out.charge = q0 - charge_used(v, seg, p);
    out.depleted = out.charge < 0.0;
    return out;
}

double final_charge_sensitivity(double v, const ClimbSegment& seg, const AircraftParams& p) {
    require_positive_speed(v);
    const double w = p.weight();
    const double s = p.wing_area;
    const double bracket = -w * seg.climb_rate / (v * v) + seg.mean_rho * s * p.cd0 * v -
                           4.0 * p.cd2 * w * w * seg.mean_inv_rho / (s * v * v * v);
    return -seg.distance / (p.efficiency * p.voltage) * bracket;
}

}  // namespace eclimb
