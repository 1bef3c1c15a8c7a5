#pragma once

// Thin-layer drying of copra: a Page-type curve
//
//     MR = (M - M_e) / (M_0 - M_e) = exp(-A1 t^B1),   t in hours,
//
// with A1, B1 affine in air temperature (degC) and relative humidity (%), and
// an isotherm giving the equilibrium moisture M_e. Under changing conditions
// the curve is advanced with the equivalent-drying-time construction in
// step_moisture.

#include "solardry/config.hpp"

namespace solardry {

inline constexpr double kFitTminC = 50.0;
inline constexpr double kFitTmaxC = 70.0;
inline constexpr double kFitRhMin = 10.0;
inline constexpr double kFitRhMax = 25.0;

struct DryingConstants {
    double A1 = 0.0;
    double B1 = 0.0;
    double T_used = 0.0;   // degC
    double rh_used = 0.0;  // %
    bool extrapolated = false;
};

/// Throws KineticsError when A1 <= 0 (the fit turns negative below ~23 degC).
DryingConstants drying_constants(double T_celsius, double rh_percent);

/// exp(-A1 t^B1) with t in hours.
double moisture_ratio(double t_hours, const DryingConstants& c);

struct EmcCoefficients {
    double b0 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
};

inline EmcCoefficients emc_coefficients(const KineticsParams& k) { return {k.b0, k.b1, k.b2}; }

/// M_e (%db) = (b0 + b1 T) (a_w / (1 - a_w))^(1 / b2).
double equilibrium_moisture(double T_celsius, double water_activity, const EmcCoefficients& c);

/// Forward isotherm a_w = 1 / (1 + ((b0 + b1 T) / M_e)^b2).
double water_activity(double M_e_percent, double T_celsius, const EmcCoefficients& c);

struct MoistureStep {
    double M_new = 0.0;  // decimal db
    double t_eq = 0.0;   // equivalent drying time at the end of the step, s
    bool at_equilibrium = false;
};

/// Advances moisture by dt seconds on the curve defined by (constants, M_e, M_0).
/// All moistures are decimal dry basis. M <= M_e leaves M unchanged.
/// Throws KineticsError if M_0 <= M_e while M > M_e.
MoistureStep step_moisture(double M, double M_e, double M_0, const DryingConstants& constants,
                           double dt_seconds);

}  // namespace solardry
