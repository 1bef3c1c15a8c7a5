#include "solardry/psychrometrics.hpp"

#include <array>
#include <cmath>
#include <string>

#include "solardry/errors.hpp"

namespace solardry {

namespace {

constexpr double kGasConstantAir = 287.05;  // J kg^-1 K^-1
constexpr double kMolarRatio = 0.622;  // M_w / M_a

struct AirKnot {
    double T;
    double c_p;
    double k;
    double nu;
};

// Incropera & DeWitt, Fundamentals of Heat and Mass Transfer, Table A.4.
constexpr std::array<AirKnot, 4> kAirTable{{
    {250.0, 1006.0, 22.3e-3, 11.44e-6},
    {300.0, 1007.0, 26.3e-3, 15.89e-6},
    {350.0, 1009.0, 30.0e-3, 20.92e-6},
    {400.0, 1014.0, 33.8e-3, 26.41e-6},
}};

double lerp(double a, double b, double w) { return a + (b - a) * w; }

}  // namespace

AirProps air_properties(double T) {
    if (!(T >= kAirTableMinK)) {
        throw RangeError("air_properties: T = " + std::to_string(T) +
                         " K below lower bound 250 K");
    }
    if (!(T <= kAirTableMaxK)) {
        throw RangeError("air_properties: T = " + std::to_string(T) +
                         " K above upper bound 360 K");
    }
    std::size_t i = 0;
    while (i + 2 < kAirTable.size() && T > kAirTable[i + 1].T) ++i;
    const AirKnot& lo = kAirTable[i];
    const AirKnot& hi = kAirTable[i + 1];
    const double w = (T - lo.T) / (hi.T - lo.T);

    AirProps out;
    out.rho = kStandardPressure / (kGasConstantAir * T);
    out.c_p = lerp(lo.c_p, hi.c_p, w);
    out.k = lerp(lo.k, hi.k, w);
    out.nu = lerp(lo.nu, hi.nu, w);
    return out;
}

double saturation_pressure(double T) {
    if (!(T >= 273.15 && T <= 373.15)) {
        throw RangeError("saturation_pressure: T = " + std::to_string(T) +
                         " K outside [273.15, 373.15] K");
    }
    constexpr double C8 = -5.8002206e3;
    constexpr double C9 = 1.3914993;
    constexpr double C10 = -4.8640239e-2;
    constexpr double C11 = 4.1764768e-5;
    constexpr double C12 = -1.4452093e-8;
    constexpr double C13 = 6.5459673;
    return std::exp(C8 / T + C9 + C10 * T + C11 * T * T + C12 * T * T * T + C13 * std::log(T));
}

RelativeHumidity relative_humidity(double H, double T, double P) {
    if (!(H >= 0.0)) {
        throw RangeError("relative_humidity: negative humidity ratio " + std::to_string(H));
    }
    const double p_v = P * H / (kMolarRatio + H);
    const double raw = 100.0 * p_v / saturation_pressure(T);
    RelativeHumidity rh;
    rh.percent = raw;
    if (raw > 100.0) {
        rh.percent = 100.0;
        rh.clamped = true;
    }
    return rh;
}

double humidity_ratio(double rh_percent, double T, double P) {
    if (!(rh_percent >= 0.0 && rh_percent <= 100.0)) {
        throw RangeError("humidity_ratio: rh = " + std::to_string(rh_percent) +
                         " % outside [0, 100]");
    }
    const double p_v = rh_percent / 100.0 * saturation_pressure(T);
    if (!(p_v < P)) {
        throw RangeError("humidity_ratio: vapour pressure reaches total pressure");
    }
    return kMolarRatio * p_v / (P - p_v);
}

double saturation_humidity_ratio(double T, double P) { return humidity_ratio(100.0, T, P); }

}  // namespace solardry
