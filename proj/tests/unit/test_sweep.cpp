#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "solardry/errors.hpp"
#include "solardry/solver.hpp"
#include "solardry/sweep.hpp"
#include "test_support.hpp"

namespace solardry {
namespace {

SweepSpec small_spec(std::vector<SweepParameter> params, unsigned threads = 1) {
    SweepSpec spec;
    spec.base_config = config_to_json(test::baseline_config());
    spec.parameters = std::move(params);
    spec.target_mdb = 0.3;
    spec.horizon_s = 48.0 * 3600.0;
    spec.weather = synthetic_days(2, tropical_preset());
    spec.threads = threads;
    return spec;
}

TEST(DryingTime, AlreadyDry) {
    const auto cfg = test::baseline_config();
    const auto w = synthetic_days(1, tropical_preset());
    EXPECT_EQ(drying_time_objective(cfg, w, 0.522, 3600.0), 0.0);
}

TEST(DryingTime, EquilibriumChargeNeverReaches) {
    auto cfg = test::baseline_config();
    cfg.product.M_0 = 2.0;
    const auto w = test::constant_weather(24.0, 0.0, 303.15, 1.0, 60.0);
    EXPECT_FALSE(drying_time_objective(cfg, w, 0.01, 24.0 * 3600.0).has_value());
}

TEST(DryingTime, InterpolatesBetweenSteps) {
    const auto cfg = test::baseline_config();
    const auto w = synthetic_days(2, tropical_preset());
    const auto h = drying_time_objective(cfg, w, 0.3, 48.0 * 3600.0);
    ASSERT_TRUE(h.has_value());
    const auto s = simulate(cfg, w, {48.0 * 3600.0, 0.3});
    const double t_last = s.states.back().t / 3600.0;
    EXPECT_LE(*h, t_last);
    EXPECT_GE(*h, t_last - cfg.numerics.dt / 3600.0);
}

TEST(GridSize, CapIsEnforcedBeforeRunning) {
    std::vector<SweepParameter> params(2);
    params[0] = {"airflow.V_in", std::vector<nlohmann::json>(200, 0.1)};
    params[1] = {"airflow.V_out", std::vector<nlohmann::json>(100, 0.1)};
    EXPECT_THROW(grid_size(params, kDefaultGridCap), GridSizeError);
    EXPECT_EQ(grid_size(params, 20000), 20000u);
    auto spec = small_spec(params);
    // Would take hours if any point ran.
    EXPECT_THROW(grid_search(spec), GridSizeError);
}

TEST(GridSearch, SingletonIsBest) {
    const auto r = grid_search(small_spec({{"airflow.V_in", {0.2}}}));
    ASSERT_EQ(r.ranked.size(), 1u);
    EXPECT_EQ(r.best().values[0], 0.2);
    EXPECT_TRUE(r.best().drying_time_h.has_value());
}

TEST(GridSearch, TwoByTwoMatchesBruteForce) {
    const auto spec = small_spec({{"airflow.V_in", {0.2, 0.3}}, {"cover.tau_c", {0.75, 0.85}}});
    const auto r = grid_search(spec);
    ASSERT_EQ(r.ranked.size(), 4u);

    double best = std::numeric_limits<double>::infinity();
    for (double v : {0.2, 0.3}) {
        for (double tau : {0.75, 0.85}) {
            auto doc = spec.base_config;
            apply_override(doc, {"airflow.V_in", v});
            apply_override(doc, {"cover.tau_c", tau});
            const auto h = drying_time_objective(config_from_json(doc), spec.weather,
                                                 spec.target_mdb, spec.horizon_s);
            ASSERT_TRUE(h.has_value());
            best = std::min(best, *h);
        }
    }
    EXPECT_EQ(r.best().objective, best);
    for (std::size_t i = 1; i < r.ranked.size(); ++i) {
        EXPECT_LE(r.ranked[i - 1].objective, r.ranked[i].objective);
    }
    std::set<std::vector<std::size_t>> seen;
    for (const auto& p : r.ranked) seen.insert(p.index);
    EXPECT_EQ(seen.size(), 4u);
}

TEST(GridSearch, InertParameterTiesBrokenByIndex) {
    // kinetics.c_sky at its default is a copy of the baseline; the duplicate
    // value list gives identical objectives.
    const auto r = grid_search(small_spec({{"kinetics.c_sky", {0.0552, 0.0552, 0.0552}}}));
    ASSERT_EQ(r.ranked.size(), 3u);
    EXPECT_EQ(r.ranked[0].objective, r.ranked[1].objective);
    EXPECT_EQ(r.ranked[1].objective, r.ranked[2].objective);
    EXPECT_EQ(r.ranked[0].index[0], 0u);
    EXPECT_EQ(r.ranked[1].index[0], 1u);
    EXPECT_EQ(r.ranked[2].index[0], 2u);
}

TEST(GridSearch, SerialEqualsParallel) {
    const std::vector<SweepParameter> params{{"airflow.V_in", {0.1, 0.2, 0.3}},
                                             {"geometry.A_p", {25.0, 30.0}}};
    const auto serial = grid_search(small_spec(params, 1));
    const auto parallel = grid_search(small_spec(params, 4));
    ASSERT_EQ(serial.ranked.size(), parallel.ranked.size());
    for (std::size_t i = 0; i < serial.ranked.size(); ++i) {
        EXPECT_EQ(serial.ranked[i].index, parallel.ranked[i].index);
        EXPECT_EQ(serial.ranked[i].objective, parallel.ranked[i].objective);
    }
}

TEST(GridSearch, BadPointIsRecordedNotFatal) {
    const auto r = grid_search(small_spec({{"cover.tau_c", {0.85, 2.0}}}));
    ASSERT_EQ(r.ranked.size(), 2u);
    EXPECT_TRUE(r.ranked[0].error.empty());
    EXPECT_FALSE(r.ranked[1].error.empty());
    EXPECT_TRUE(std::isinf(r.ranked[1].objective));
}

TEST(SweepSpec, ShippedSpecsLoad) {
    const auto spec = load_sweep_spec(test::source_path("configs/sweep_example.json"));
    EXPECT_EQ(spec.parameters.size(), 2u);
    EXPECT_EQ(spec.objective, Objective::DryingTime);
    const auto payback = load_sweep_spec(test::source_path("configs/sweep_payback.json"));
    EXPECT_EQ(payback.objective, Objective::Payback);
    ASSERT_TRUE(payback.economics.has_value());
}

TEST(SweepSpec, Invalid) {
    nlohmann::json doc{{"config", config_to_json(test::baseline_config())},
                       {"parameters", nlohmann::json::array()}};
    EXPECT_THROW(sweep_spec_from_json(doc, "."), ConfigError);
    doc["parameters"] = {{{"path", "airflow.V_in"}, {"values", {0.1}}}};
    doc["target_mdb"] = 0.6;
    EXPECT_THROW(sweep_spec_from_json(doc, "."), ConfigError);
    doc["target_mdb"] = 0.08;
    doc["objective"] = "payback";
    EXPECT_THROW(sweep_spec_from_json(doc, "."), ConfigError);
}

}  // namespace
}  // namespace solardry
