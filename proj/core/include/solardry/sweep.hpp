#pragma once

// Exhaustive design-space search over a Cartesian grid of config overrides.
//
// Sweep spec document (JSON):
//
//   {
//     "base_config": "baseline.json",        // path, relative to the spec file
//     "config": { ... },                     // or an inline config document
//     "weather": {"file": "w.csv"} | {"preset": "tropical", "days": 5},
//     "objective": "drying_time" | "payback",
//     "target_mdb": 0.08,
//     "horizon_h": 120,
//     "max_points": 10000,
//     "threads": 0,                          // 0: hardware concurrency
//     "parameters": [ {"path": "airflow.V_in", "values": [0.05, 0.1]} ],
//     "economics": { ... }                   // DesignEconomics, payback objective only
//   }

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "solardry/config.hpp"
#include "solardry/errors.hpp"
#include "solardry/weather.hpp"

namespace solardry {

inline constexpr std::size_t kDefaultGridCap = 10000;

class GridSizeError : public Error {
public:
    using Error::Error;
};

enum class Objective { DryingTime, Payback };

struct SweepParameter {
    std::string path;
    std::vector<nlohmann::json> values;
};

/// Turns a drying time into a payback period for one design point:
///   capital    = capital_fixed + capital_per_m2_cover * A_c
///   batches/yr = operating_hours_per_year / (drying_time_h + turnaround_h)
///   production = batches/yr * m_p * (1 + target_mdb)   (kg dried product)
/// and payback = capital / (production * premium_per_kg - annual_operating_cost).
struct DesignEconomics {
    double capital_fixed = 0.0;
    double capital_per_m2_cover = 0.0;
    double annual_operating_cost = 0.0;
    double premium_per_kg = 0.0;
    double operating_hours_per_year = 0.0;
    double turnaround_h = 0.0;
};

DesignEconomics design_economics_from_json(const nlohmann::json& doc);

struct SweepSpec {
    nlohmann::json base_config;  // canonical config document
    std::vector<SweepParameter> parameters;
    Objective objective = Objective::DryingTime;
    double target_mdb = 0.08;
    double horizon_s = 0.0;
    WeatherSeries weather;
    std::size_t max_points = kDefaultGridCap;
    unsigned threads = 1;  // 0: hardware concurrency
    std::optional<DesignEconomics> economics;

    /// Throws ConfigError for an invalid spec.
    void validate() const;
};

SweepSpec load_sweep_spec(const std::string& path);
SweepSpec sweep_spec_from_json(const nlohmann::json& doc, const std::string& base_dir);

/// Hours from the start of the weather series until M_p first drops to
/// target (decimal db), linearly interpolated between steps; nullopt if the
/// horizon ends first. target >= M_0 gives 0.
std::optional<double> drying_time_objective(const DryerConfig& cfg, const WeatherSeries& weather,
                                            double target_mdb, double horizon_s);

struct SweepPoint {
    std::vector<std::size_t> index;  // position in each parameter's value list
    std::vector<nlohmann::json> values;
    std::optional<double> drying_time_h;
    std::optional<double> payback_years;
    double objective = 0.0;  // +inf when unreachable or failed
    std::string error;       // non-empty when the point could not be evaluated
};

struct SweepResult {
    std::vector<std::string> paths;
    std::vector<SweepPoint> ranked;  // ascending objective, ties by index tuple

    [[nodiscard]] const SweepPoint& best() const { return ranked.front(); }
};

/// Product of the value-list sizes; throws GridSizeError above cap.
std::size_t grid_size(const std::vector<SweepParameter>& parameters, std::size_t cap);

/// Evaluates every grid point, in parallel when threads != 1. The ranking is
/// independent of evaluation order. Throws GridSizeError before any
/// simulation runs when the grid exceeds max_points.
SweepResult grid_search(const SweepSpec& spec);

}  // namespace solardry
