#pragma once

// Validation metrics against observed traces and the simple payback model.

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace solardry {

inline constexpr double kAcceptanceLimitPercent = 10.0;

struct ErrorReport {
    std::string variable;
    double mean_abs_percent = 0.0;  // mean of 100 |pred - obs| / |obs|
    double max_abs_diff = 0.0;      // native units
    std::size_t n = 0;
    double limit = kAcceptanceLimitPercent;
    bool pass = false;
};

/// Mean absolute percent difference. Throws InputError on length mismatch,
/// empty input, or a zero observed value (naming its index).
ErrorReport percent_difference(std::span<const double> predicted, std::span<const double> observed,
                               std::string variable = {});

/// Pass iff mean_abs_percent <= limit. Returns the verdict and records it in the report.
bool acceptance_check(ErrorReport& report, double limit = kAcceptanceLimitPercent);

struct EconomicInputs {
    double capital_cost = 0.0;           // currency
    double annual_operating_cost = 0.0;  // currency / yr
    double annual_production_kg = 0.0;   // kg dried product / yr
    double premium_per_kg = 0.0;         // price gain over open-air drying, currency / kg

    [[nodiscard]] double annual_net_benefit() const {
        return annual_production_kg * premium_per_kg - annual_operating_cost;
    }
};

/// Reads {"capital_cost", "annual_operating_cost", "annual_production_kg"} plus
/// either "premium_per_kg" or both "open_air_price_per_kg" and "premium_fraction".
EconomicInputs economics_from_json(const nlohmann::json& doc);
EconomicInputs load_economics(const std::string& path);

/// Simple undiscounted payback, capital / annual net benefit, in years.
/// Throws ConfigError for capital <= 0 and NoPaybackError when the annual
/// net benefit is not positive.
double payback_period(const EconomicInputs& e);

/// Two-column observed trace "t_s,<variable>".
struct ObservedTrace {
    std::string variable;
    std::vector<double> t;
    std::vector<double> values;
};

ObservedTrace parse_observed_csv(std::istream& in, const std::string& source = "<stream>");
ObservedTrace load_observed_csv(const std::string& path);

/// Linear interpolation of (t, v) at each query time. Throws InputError when
/// a query lies outside [t.front(), t.back()].
std::vector<double> interpolate_at(std::span<const double> t, std::span<const double> v,
                                   std::span<const double> query);

}  // namespace solardry
