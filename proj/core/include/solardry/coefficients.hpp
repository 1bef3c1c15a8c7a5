#pragma once

// Heat-transfer and heat-loss coefficient correlations, evaluated once per
// time step at the lagged temperatures.

#include <cstdint>

#include "solardry/config.hpp"
#include "solardry/types.hpp"

namespace solardry {

struct CoefficientSet {
    double h_r_cs = 0.0;  // cover -> sky radiation, W m^-2 K^-1
    double h_r_pc = 0.0;  // product -> cover radiation
    double h_w = 0.0;     // cover -> ambient wind convection
    double h_c = 0.0;     // shared interior convection (cover, floor, product to air)
    double U_c = 0.0;     // overall cover loss from chamber air
    double T_s = 0.0;     // sky temperature, K
    double D_h = 0.0;     // hydraulic diameter, m
    double Re = 0.0;
    double Nu = 0.0;
    std::uint32_t flags = 0;  // StepFlag bits: StillAir, LaminarRegime, SkyNonPhysical

    friend bool operator==(const CoefficientSet&, const CoefficientSet&) = default;
};

struct SkyTemperature {
    double T_s = 0.0;
    bool non_physical = false;  // T_s > T_am, or T_s == 0 from a zero coefficient
};

/// T_s = c_sky * T_am^1.5. The default coefficient 0.0552 is the Swinbank
/// clear-sky form from Duffie & Beckman; larger coefficients are accepted but
/// flagged when they put the sky above ambient.
SkyTemperature sky_temperature(double T_am, double c_sky = 0.0552);

/// Linearised grey-body exchange coefficient eps sigma (T1^2 + T2^2)(T1 + T2).
double radiative_coefficient(double emissivity, double T1, double T2);

/// h_w = 5.7 + 3.8 V_w.
double wind_coefficient(double V_w);

/// D_h = 4 W D / (2 (W + D)).
double hydraulic_diameter(double W, double D);

struct InternalConvection {
    double Re = 0.0;
    double Nu = 0.0;
    double h_c = 0.0;
    bool still_air = false;  // V_a == 0
    bool laminar = false;    // Re < 2300: correlation applied outside its turbulent regime
};

/// Re = D_h V_a / nu, Nu = 0.0158 Re^0.8, h_c = Nu k / D_h.
InternalConvection internal_convective(double V_a, double D_h, const AirProps& air);

/// U_c = k_c / delta_c. With a 200 um polyethylene film and k_c ~ 0.33 this is
/// of order 1.6e3 W m^-2 K^-1, which ties the chamber air almost rigidly to
/// ambient; shipped configs use an effective k_c instead.
double overall_cover_loss(double k_c, double delta_c);

CoefficientSet assemble_coefficients(const SimState& state, const WeatherRecord& weather,
                                     const DryerConfig& cfg);

}  // namespace solardry
