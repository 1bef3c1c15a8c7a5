#include "solardry/coefficients.hpp"

#include <cmath>
#include <string>

#include "solardry/errors.hpp"
#include "solardry/psychrometrics.hpp"

namespace solardry {

SkyTemperature sky_temperature(double T_am, double c_sky) {
    if (!(T_am > 0.0)) {
        throw RangeError("sky_temperature: T_am must be > 0 K, got " + std::to_string(T_am));
    }
    SkyTemperature out;
    out.T_s = c_sky * std::pow(T_am, 1.5);
    out.non_physical = out.T_s > T_am || out.T_s <= 0.0;
    return out;
}

double radiative_coefficient(double emissivity, double T1, double T2) {
    return emissivity * kStefanBoltzmann * (T1 * T1 + T2 * T2) * (T1 + T2);
}

double wind_coefficient(double V_w) { return 5.7 + 3.8 * V_w; }

double hydraulic_diameter(double W, double D) {
    if (!(W > 0.0 && D > 0.0)) {
        throw ConfigError("hydraulic_diameter: W and D must be > 0");
    }
    return 4.0 * W * D / (2.0 * (W + D));
}

InternalConvection internal_convective(double V_a, double D_h, const AirProps& air) {
    InternalConvection out;
    out.Re = D_h * V_a / air.nu;
    out.Nu = 0.0158 * std::pow(out.Re, 0.8);
    out.h_c = out.Nu * air.k / D_h;
    out.still_air = V_a == 0.0;
    out.laminar = out.Re < 2300.0;
    return out;
}

double overall_cover_loss(double k_c, double delta_c) {
    if (!(delta_c > 0.0)) {
        throw ConfigError("overall_cover_loss: cover thickness must be > 0, got " +
                          std::to_string(delta_c));
    }
    return k_c / delta_c;
}

CoefficientSet assemble_coefficients(const SimState& state, const WeatherRecord& weather,
                                     const DryerConfig& cfg) {
    CoefficientSet cs;
    const auto sky = sky_temperature(weather.T_am, cfg.kinetics.c_sky);
    cs.T_s = sky.T_s;
    cs.h_r_cs = radiative_coefficient(cfg.cover.eps_c, state.T_c, cs.T_s);
    cs.h_r_pc = radiative_coefficient(cfg.product.eps_p, state.T_p, state.T_c);
    cs.h_w = wind_coefficient(weather.V_w);
    cs.D_h = hydraulic_diameter(cfg.geometry.W, cfg.geometry.D);

    const auto conv = internal_convective(cfg.airflow.V_a, cs.D_h, air_properties(state.T_a));
    cs.Re = conv.Re;
    cs.Nu = conv.Nu;
    cs.h_c = conv.h_c;
    cs.U_c = overall_cover_loss(cfg.cover.k_c, cfg.cover.delta_c);

    if (sky.non_physical) cs.flags = cs.flags | StepFlag::SkyNonPhysical;
    if (conv.still_air) cs.flags = cs.flags | StepFlag::StillAir;
    if (conv.laminar) cs.flags = cs.flags | StepFlag::LaminarRegime;
    return cs;
}

}  // namespace solardry
