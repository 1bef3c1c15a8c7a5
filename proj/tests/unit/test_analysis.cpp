#include <gtest/gtest.h>

#include <random>
#include <sstream>
#include <vector>

#include "solardry/analysis.hpp"
#include "solardry/errors.hpp"
#include "test_support.hpp"

namespace solardry {
namespace {

TEST(PercentDifference, Identity) {
    const std::vector<double> v{300.0, 310.0, 320.0};
    const auto r = percent_difference(v, v, "T_a_K");
    EXPECT_EQ(r.mean_abs_percent, 0.0);
    EXPECT_EQ(r.max_abs_diff, 0.0);
    EXPECT_EQ(r.n, 3u);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.variable, "T_a_K");
}

TEST(PercentDifference, HandEvaluations) {
    EXPECT_NEAR(percent_difference(std::vector<double>{11.0}, std::vector<double>{10.0})
                    .mean_abs_percent,
                10.0, 1e-12);
    const auto r = percent_difference(std::vector<double>{9.0, 11.0}, std::vector<double>{10.0, 10.0});
    EXPECT_NEAR(r.mean_abs_percent, 10.0, 1e-12);
    EXPECT_NEAR(r.max_abs_diff, 1.0, 1e-12);
}

TEST(PercentDifference, ZeroOnlyForIdenticalSeries) {
    const std::vector<double> obs{1.0, 2.0, 3.0};
    std::vector<double> pred = obs;
    pred[1] = std::nextafter(2.0, 3.0);
    EXPECT_GT(percent_difference(pred, obs).mean_abs_percent, 0.0);
}

TEST(PercentDifference, ScaleInvariant) {
    const std::vector<double> obs{0.5, 0.4, 0.3, 0.2};
    const std::vector<double> pred{0.52, 0.37, 0.33, 0.19};
    const auto base = percent_difference(pred, obs);
    for (double c : {-3.0, 0.25, 7.5}) {
        std::vector<double> sp, so;
        for (std::size_t i = 0; i < obs.size(); ++i) {
            sp.push_back(c * pred[i]);
            so.push_back(c * obs[i]);
        }
        EXPECT_NEAR(percent_difference(sp, so).mean_abs_percent, base.mean_abs_percent, 1e-12);
    }
}

TEST(PercentDifference, Errors) {
    EXPECT_THROW(percent_difference(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}),
                 InputError);
    EXPECT_THROW(percent_difference(std::vector<double>{}, std::vector<double>{}), InputError);
    try {
        percent_difference(std::vector<double>{1.0, 1.0}, std::vector<double>{1.0, 0.0});
        FAIL();
    } catch (const InputError& e) {
        EXPECT_NE(std::string(e.what()).find("index 1"), std::string::npos);
    }
}

TEST(AcceptanceCheck, ThreeSixAndBoundary) {
    ErrorReport r;
    r.mean_abs_percent = 6.0;
    EXPECT_TRUE(acceptance_check(r, 10.0));
    r.mean_abs_percent = 3.0;
    EXPECT_TRUE(acceptance_check(r));
    r.mean_abs_percent = 10.01;
    EXPECT_FALSE(acceptance_check(r, 10.0));
    EXPECT_FALSE(r.pass);
    EXPECT_EQ(r.limit, 10.0);
}

TEST(AcceptanceCheck, MonotoneInLimit) {
    ErrorReport r;
    r.mean_abs_percent = 7.3;
    bool passed = false;
    for (double limit = 0.0; limit <= 20.0; limit += 0.1) {
        const bool now = acceptance_check(r, limit);
        if (passed) EXPECT_TRUE(now);
        passed = now;
    }
    EXPECT_TRUE(passed);
}

TEST(Payback, Arithmetic) {
    EXPECT_DOUBLE_EQ(payback_period({230.0, 0.0, 100.0, 1.0}), 2.3);
}

TEST(Payback, ReconstructedFixture) {
    const auto e = load_economics(test::source_path("fixtures/economics_reconstructed.json"));
    EXPECT_EQ(e.annual_production_kg, 250.0);
    EXPECT_EQ(payback_period(e), 2.3);
}

TEST(Payback, Unprofitable) {
    EXPECT_THROW(payback_period({1000.0, 500.0, 100.0, 5.0}), NoPaybackError);
    EXPECT_THROW(payback_period({1000.0, 600.0, 100.0, 5.0}), NoPaybackError);
    EXPECT_THROW(payback_period({0.0, 0.0, 100.0, 5.0}), ConfigError);
}

TEST(Payback, Homogeneous) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.01, 100.0);
    const EconomicInputs e{2300.0, 1500.0, 250.0, 10.0};
    const double base = payback_period(e);
    for (int i = 0; i < 100; ++i) {
        const double s = u(rng);
        const EconomicInputs scaled{s * e.capital_cost, s * e.annual_operating_cost,
                                    e.annual_production_kg, s * e.premium_per_kg};
        EXPECT_NEAR(payback_period(scaled), base, 1e-12 * base);
    }
}

TEST(Economics, MissingKey) {
    EXPECT_THROW(economics_from_json(nlohmann::json{{"capital_cost", 1.0}}), ConfigError);
}

TEST(ObservedCsv, ParsesAndRejects) {
    std::istringstream ok("# note\nt_s,T_a_K\n0,300\n60,301.5\n");
    const auto tr = parse_observed_csv(ok);
    EXPECT_EQ(tr.variable, "T_a_K");
    EXPECT_EQ(tr.values, (std::vector<double>{300.0, 301.5}));

    std::istringstream bad_header("time,T_a_K\n0,300\n");
    EXPECT_THROW(parse_observed_csv(bad_header), MissingColumnError);
    std::istringstream bad_cell("t_s,T_a_K\n0,warm\n");
    EXPECT_THROW(parse_observed_csv(bad_cell), NonNumericError);
    std::istringstream bad_order("t_s,T_a_K\n60,300\n0,301\n");
    EXPECT_THROW(parse_observed_csv(bad_order), OrderingError);
}

TEST(InterpolateAt, LinearAndBounded) {
    const std::vector<double> t{0.0, 10.0, 20.0};
    const std::vector<double> v{1.0, 3.0, 2.0};
    const auto out = interpolate_at(t, v, std::vector<double>{0.0, 5.0, 15.0, 20.0});
    EXPECT_EQ(out, (std::vector<double>{1.0, 2.0, 2.5, 2.0}));
    EXPECT_THROW(interpolate_at(t, v, std::vector<double>{21.0}), InputError);
}

}  // namespace
}  // namespace solardry
