#include <cmath>
#include <string>
#include <utility>

#include "solardry/errors.hpp"
#include "solardry/types.hpp"

namespace solardry {

void validate(const WeatherRecord& rec) {
    auto fail = [&](const char* field, double value) {
        throw InputError(std::string("weather record at t = ") + std::to_string(rec.t) + ": " +
                         field + " = " + std::to_string(value) + " violates its invariant");
    };
    if (!std::isfinite(rec.t)) fail("t", rec.t);
    if (!(rec.I_t >= 0.0) || !std::isfinite(rec.I_t)) fail("I_t", rec.I_t);
    if (!(rec.T_am > 0.0) || !std::isfinite(rec.T_am)) fail("T_am", rec.T_am);
    if (!(rec.V_w >= 0.0) || !std::isfinite(rec.V_w)) fail("V_w", rec.V_w);
    if (!(rec.rh_am >= 0.0 && rec.rh_am <= 100.0)) fail("rh_am", rec.rh_am);
}

std::string describe_flags(std::uint32_t set) {
    static constexpr std::pair<StepFlag, const char*> kNames[] = {
        {StepFlag::RhClamped, "rh_clamped"},
        {StepFlag::KineticsExtrapolated, "kinetics_extrapolated"},
        {StepFlag::DryingSuspended, "drying_suspended"},
        {StepFlag::AtEquilibrium, "at_equilibrium"},
        {StepFlag::StillAir, "still_air"},
        {StepFlag::LaminarRegime, "laminar_regime"},
        {StepFlag::HumiditySaturated, "humidity_saturated"},
        {StepFlag::SkyNonPhysical, "sky_non_physical"},
        {StepFlag::WaterActivityClamped, "water_activity_clamped"},
    };
    std::string out;
    for (const auto& [flag, name] : kNames) {
        if (!has_flag(set, flag)) continue;
        if (!out.empty()) out += '|';
        out += name;
    }
    return out;
}

}  // namespace solardry
