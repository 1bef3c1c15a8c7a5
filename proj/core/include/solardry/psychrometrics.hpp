#pragma once

#include "solardry/types.hpp"

namespace solardry {

inline constexpr double kAirTableMinK = 250.0;
inline constexpr double kAirTableMaxK = 360.0;

/// Dry-air properties at 1 atm.
///
/// Density follows the ideal-gas law with R = 287.05 J kg^-1 K^-1 at
/// 101325 Pa. Specific heat, conductivity and kinematic viscosity are
/// piecewise-linear in the Incropera & DeWitt (Table A.4) dry-air table with
/// knots at 250, 300, 350 and 400 K. Valid for 250 K <= T <= 360 K; throws
/// RangeError otherwise.
AirProps air_properties(double T);

/// Saturation vapour pressure over liquid water, Pa.
///
/// Hyland-Wexler correlation as tabulated in ASHRAE Fundamentals (1997),
/// chapter 6. Valid for 273.15 K <= T <= 373.15 K; throws RangeError otherwise.
double saturation_pressure(double T);

struct RelativeHumidity {
    double percent = 0.0;
    bool clamped = false;  // raw value fell outside [0, 100]
};

/// rh = 100 p_v / p_sat(T) with p_v = P H / (0.622 + H), clamped to [0, 100].
RelativeHumidity relative_humidity(double H, double T, double P = kStandardPressure);

/// Inverse of relative_humidity: H = 0.622 p_v / (P - p_v), p_v = rh/100 p_sat(T).
double humidity_ratio(double rh_percent, double T, double P = kStandardPressure);

/// Humidity ratio of saturated air at T.
double saturation_humidity_ratio(double T, double P = kStandardPressure);

}  // namespace solardry
