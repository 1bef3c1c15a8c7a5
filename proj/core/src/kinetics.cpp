#include "solardry/kinetics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "solardry/errors.hpp"

namespace solardry {

DryingConstants drying_constants(double T_celsius, double rh_percent) {
    DryingConstants c;
    c.T_used = T_celsius;
    c.rh_used = rh_percent;
    c.A1 = -0.213788 + 0.0101640 * T_celsius - 0.001372 * rh_percent;
    c.B1 = 1.108816 - 0.0005210 * T_celsius - 0.000061 * rh_percent;
    c.extrapolated = T_celsius < kFitTminC || T_celsius > kFitTmaxC || rh_percent < kFitRhMin ||
                     rh_percent > kFitRhMax;
    if (!(c.A1 > 0.0)) {
        throw KineticsError("drying_constants: A1 = " + std::to_string(c.A1) + " <= 0 at T = " +
                            std::to_string(T_celsius) + " degC, rh = " +
                            std::to_string(rh_percent) + " %");
    }
    return c;
}

double moisture_ratio(double t_hours, const DryingConstants& c) {
    return std::exp(-c.A1 * std::pow(t_hours, c.B1));
}

double equilibrium_moisture(double T_celsius, double water_activity, const EmcCoefficients& c) {
    if (!(water_activity > 0.0 && water_activity < 1.0)) {
        throw RangeError("equilibrium_moisture: water activity " + std::to_string(water_activity) +
                         " outside (0, 1)");
    }
    const double scale = c.b0 + c.b1 * T_celsius;
    if (!(scale > 0.0)) {
        throw KineticsError("equilibrium_moisture: b0 + b1 T = " + std::to_string(scale) +
                            " <= 0 at T = " + std::to_string(T_celsius) + " degC");
    }
    return scale * std::pow(water_activity / (1.0 - water_activity), 1.0 / c.b2);
}

double water_activity(double M_e_percent, double T_celsius, const EmcCoefficients& c) {
    const double scale = c.b0 + c.b1 * T_celsius;
    return 1.0 / (1.0 + std::pow(scale / M_e_percent, c.b2));
}

MoistureStep step_moisture(double M, double M_e, double M_0, const DryingConstants& constants,
                           double dt_seconds) {
    MoistureStep out;
    if (M <= M_e) {
        out.M_new = M;
        out.at_equilibrium = true;
        return out;
    }
    if (!(M_0 > M_e)) {
        throw KineticsError("step_moisture: initial moisture " + std::to_string(M_0) +
                            " not above equilibrium " + std::to_string(M_e));
    }
    const double span = M_0 - M_e;
    const double mr = std::min(1.0, (M - M_e) / span);
    const double t_eq_h = std::pow(-std::log(mr) / constants.A1, 1.0 / constants.B1);
    const double t_new_h = t_eq_h + dt_seconds / 3600.0;
    const double mr_new = moisture_ratio(t_new_h, constants);
    out.M_new = std::min(M, M_e + mr_new * span);
    out.t_eq = t_new_h * 3600.0;
    return out;
}

}  // namespace solardry
