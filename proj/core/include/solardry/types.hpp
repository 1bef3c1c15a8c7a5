#pragma once

// Shared domain types. Temperatures are Kelvin throughout; only the kinetics
// functions take degrees Celsius, and they say so in their signatures.

#include <cstdint>
#include <string>

namespace solardry {

inline constexpr double kStefanBoltzmann = 5.670e-8;  // W m^-2 K^-4
inline constexpr double kStandardPressure = 101325.0;  // Pa
inline constexpr double kCelsiusOffset = 273.15;

constexpr double to_celsius(double kelvin) noexcept { return kelvin - kCelsiusOffset; }
constexpr double to_kelvin(double celsius) noexcept { return celsius + kCelsiusOffset; }

struct WeatherRecord {
    double t = 0.0;      // s since simulation start
    double I_t = 0.0;    // irradiance on cover plane, W m^-2
    double T_am = 0.0;   // K
    double V_w = 0.0;    // m s^-1
    double rh_am = 0.0;  // %

    friend bool operator==(const WeatherRecord&, const WeatherRecord&) = default;
};

// Throws InputError naming the offending field.
void validate(const WeatherRecord& rec);

struct AirProps {
    double rho = 0.0;  // kg m^-3
    double c_p = 0.0;  // J kg^-1 K^-1
    double k = 0.0;    // W m^-1 K^-1
    double nu = 0.0;   // m^2 s^-1
};

struct SimState {
    double t = 0.0;    // s
    double T_c = 0.0;  // cover, K
    double T_a = 0.0;  // chamber air, K
    double T_p = 0.0;  // product, K
    double T_f = 0.0;  // floor, K
    double H = 0.0;    // kg water / kg dry air
    double M_p = 0.0;  // decimal dry basis
    double M_e = 0.0;  // equilibrium moisture at the last kinetics evaluation, %db
    double t_eq = 0.0; // equivalent drying time, s

    friend bool operator==(const SimState&, const SimState&) = default;
};

// Diagnostic flags raised during a step. Stored as a bit set.
enum class StepFlag : std::uint32_t {
    None = 0,
    RhClamped = 1u << 0,            // relative humidity clamped into [0, 100]
    KineticsExtrapolated = 1u << 1, // T or rh outside the fitted envelope
    DryingSuspended = 1u << 2,      // A1 <= 0: thin-layer model invalid, no moisture change
    AtEquilibrium = 1u << 3,        // M <= M_e, rewetting suppressed
    StillAir = 1u << 4,             // V_a = 0, interior convection zero
    LaminarRegime = 1u << 5,        // Re < 2300, turbulent Nu correlation outside regime
    HumiditySaturated = 1u << 6,    // chamber humidity ratio clamped at saturation
    SkyNonPhysical = 1u << 7,       // sky temperature above ambient
    WaterActivityClamped = 1u << 8, // a_w pushed inside (0, 1) for the isotherm
};

constexpr std::uint32_t operator|(std::uint32_t lhs, StepFlag rhs) noexcept {
    return lhs | static_cast<std::uint32_t>(rhs);
}
constexpr bool has_flag(std::uint32_t set, StepFlag flag) noexcept {
    return (set & static_cast<std::uint32_t>(flag)) != 0;
}

// Comma-free names of every raised flag, joined with '|'; "" when none.
std::string describe_flags(std::uint32_t set);

}  // namespace solardry
