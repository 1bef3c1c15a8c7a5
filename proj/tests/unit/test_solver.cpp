#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "solardry/errors.hpp"
#include "solardry/kinetics.hpp"
#include "solardry/psychrometrics.hpp"
#include "solardry/solver.hpp"
#include "test_support.hpp"

namespace solardry {
namespace {

std::array<double, kUnknowns> uniform(double T) { return {T, T, T, T}; }

// Inputs with every coefficient zero; tests switch on what they need.
StepInputs quiet_inputs(double T, double dt = 60.0) {
    StepInputs in;
    in.old = SimState{0.0, T, T, T, T, 0.01, 0.3, 1.0, 0.0};
    in.weather = WeatherRecord{dt, 0.0, T, 0.0, 50.0};
    in.air = air_properties(T);
    in.dt = dt;
    in.T_in = T;
    in.H_in = 0.01;
    in.coeffs.T_s = T;
    return in;
}

StepInputs isothermal_inputs(double T, const DryerConfig& cfg) {
    auto in = quiet_inputs(T);
    SimState s = in.old;
    auto sky_cfg = cfg;
    sky_cfg.kinetics.c_sky = 1.0 / std::sqrt(T);
    in.coeffs = assemble_coefficients(s, in.weather, sky_cfg);
    return in;
}

TEST(CoverBalance, IsothermalNightHasZeroResidual) {
    const auto cfg = test::baseline_config();
    const auto in = isothermal_inputs(300.0, cfg);
    const auto row = cover_balance(in, cfg);
    EXPECT_NEAR(row.residual(uniform(300.0)), 0.0, 1e-9 * row.largest_term(uniform(300.0)));
}

TEST(CoverBalance, TransparentCoverHasNoSolarSource) {
    auto cfg = test::baseline_config();
    cfg.cover.alpha_c = 0.0;
    auto in = isothermal_inputs(300.0, cfg);
    const double dark = cover_balance(in, cfg).rhs();
    in.weather.I_t = 800.0;
    EXPECT_EQ(cover_balance(in, cfg).rhs(), dark);
}

TEST(CoverBalance, ExplicitEulerOracle) {
    // Net flux 100 W into a cover with m_c C_pc = 2000 J/K over 10 s.
    auto cfg = test::baseline_config();
    cfg.cover.m_c = 1.0;
    cfg.cover.C_pc = 2000.0;
    cfg.cover.alpha_c = 1.0;
    auto in = quiet_inputs(300.0, 10.0);
    in.weather.I_t = 100.0 / cfg.geometry.A_c;
    const auto row = cover_balance(in, cfg);
    const double T_c = row.rhs() / row.a[kTc];
    EXPECT_NEAR(T_c - 300.0, 0.5, 1e-12);
}

TEST(AirBalance, ClosedIsothermalBox) {
    auto cfg = test::baseline_config();
    cfg.airflow.V_in = cfg.airflow.V_out = 0.0;
    const auto in = isothermal_inputs(300.0, cfg);
    const auto row = air_balance(in, cfg);
    EXPECT_NEAR(row.residual(uniform(300.0)), 0.0, 1e-9 * row.largest_term(uniform(300.0)));
}

TEST(AirBalance, FullyAbsorbingProductRemovesSolarTerm) {
    auto cfg = test::baseline_config();
    cfg.product.F_p = 1.0;
    cfg.product.alpha_p = 1.0;
    auto in = quiet_inputs(300.0);
    const double dark = air_balance(in, cfg).rhs();
    in.weather.I_t = 900.0;
    EXPECT_EQ(air_balance(in, cfg).rhs(), dark);
}

TEST(AirBalance, PureVentilationMatchesExplicitEuler) {
    auto cfg = test::baseline_config();
    cfg.airflow.V_in = cfg.airflow.V_out = 0.01;
    auto in = quiet_inputs(300.0, 1.0);
    in.T_in = 310.0;
    const auto row = air_balance(in, cfg);
    const double T_a = row.rhs() / row.a[kTa];
    const double m_a = in.air.rho * cfg.geometry.V;
    const double rate = in.air.rho * in.air.c_p * cfg.airflow.V_in / (m_a * in.air.c_p);
    ASSERT_LT(rate * in.dt, 1e-3);
    const double explicit_euler = 300.0 + in.dt * rate * (310.0 - 300.0);
    EXPECT_GT(T_a, 300.0);
    EXPECT_LT(T_a, 310.0);
    EXPECT_NEAR(T_a, explicit_euler, 10.0 * (rate * in.dt) * (rate * in.dt));
}

TEST(ProductBalance, InertProduct) {
    const auto cfg = test::baseline_config();
    const auto in = isothermal_inputs(300.0, cfg);
    const auto row = product_balance(in, cfg);
    EXPECT_NEAR(row.residual(uniform(300.0)), 0.0, 1e-9 * row.largest_term(uniform(300.0)));
}

TEST(ProductBalance, EvaporationCools) {
    const auto cfg = test::baseline_config();
    auto in = quiet_inputs(300.0);
    in.dM_dt = -1e-5;
    const auto row = product_balance(in, cfg);
    EXPECT_LT(row.rhs() / row.a[kTp], 300.0);
}

TEST(ProductBalance, HeatCapacity) {
    auto cfg = test::baseline_config();
    cfg.product.m_p = 100.0;
    cfg.product.C_pp = 2000.0;
    cfg.product.C_pl = 4186.0;
    auto in = quiet_inputs(300.0, 1.0);
    in.old.M_p = 0.522;
    EXPECT_NEAR(product_balance(in, cfg).a[kTp], 418509.2, 1e-6);
}

TEST(FloorBalance, IsothermalFixedPoint) {
    auto cfg = test::baseline_config();
    cfg.floor.T_deep = 300.0;
    auto in = quiet_inputs(300.0);
    in.coeffs.h_c = 3.0;
    const auto row = floor_balance(in, cfg);
    EXPECT_NEAR((row.rhs() - row.a[kTa] * 300.0) / row.a[kTf], 300.0, 1e-12);
}

TEST(FloorBalance, HandSolution) {
    auto cfg = test::baseline_config();
    cfg.floor.h_dfg = 2.0;
    cfg.floor.T_deep = 290.0;
    cfg.floor.alpha_f = 1.0;
    cfg.product.F_p = 0.0;
    cfg.cover.tau_c = 1.0;
    cfg.geometry.A_f = cfg.geometry.A_c;
    auto in = quiet_inputs(300.0);
    in.coeffs.h_c = 4.0;
    in.weather.I_t = 120.0;
    const auto row = floor_balance(in, cfg);
    const double T_f = (row.rhs() - row.a[kTa] * 300.0) / row.a[kTf];
    EXPECT_NEAR(T_f, 316.6667, 1e-4);
}

TEST(FloorBalance, FullShadeRemovesSolarTerm) {
    auto cfg = test::baseline_config();
    cfg.product.F_p = 1.0;
    auto in = quiet_inputs(300.0);
    in.coeffs.h_c = 2.0;
    const double dark = floor_balance(in, cfg).rhs();
    in.weather.I_t = 900.0;
    EXPECT_EQ(floor_balance(in, cfg).rhs(), dark);
}

TEST(FloorBalance, SingularRow) {
    auto cfg = test::baseline_config();
    cfg.floor.h_dfg = 0.0;
    auto in = quiet_inputs(300.0);
    in.coeffs.h_c = 0.0;
    EXPECT_THROW(floor_balance(in, cfg), SingularMatrixError);
}

TEST(MoistureBalance, SteadyIdentity) {
    const auto cfg = test::baseline_config();
    auto in = quiet_inputs(300.0);
    in.H_in = 0.012;
    const auto mb = moisture_balance(0.012, 0.0, 300.0, in, cfg);
    EXPECT_NEAR(mb.H_new, 0.012, 1e-15);
    EXPECT_EQ(mb.evaporated, 0.0);
}

TEST(MoistureBalance, SealedHandEvaluation) {
    // m_a = 30 kg, rho_p A_p D_p = 50 kg, dM = -0.01
    auto cfg = test::baseline_config();
    cfg.airflow.V_in = cfg.airflow.V_out = 0.0;
    cfg.geometry.V = 30.0;
    cfg.product.rho_p = 500.0;
    cfg.geometry.A_p = 5.0;
    cfg.geometry.D_p = 0.02;
    auto in = quiet_inputs(320.0);
    in.air.rho = 1.0;
    const auto mb = moisture_balance(0.005, -0.01, 320.0, in, cfg);
    EXPECT_NEAR(mb.H_new - 0.005, 0.5 / 30.0, 1e-15);
    EXPECT_NEAR(mb.m_a * (mb.H_new - 0.005) - mb.evaporated, 0.0, 1e-15);
    EXPECT_FALSE(mb.saturated);
}

TEST(MoistureBalance, ClampsAtSaturation) {
    auto cfg = test::baseline_config();
    cfg.airflow.V_in = cfg.airflow.V_out = 0.0;
    auto in = quiet_inputs(300.0);
    const auto mb = moisture_balance(0.02, -0.05, 300.0, in, cfg);
    EXPECT_TRUE(mb.saturated);
    EXPECT_NEAR(mb.H_new, saturation_humidity_ratio(300.0), 1e-15);
    EXPECT_NEAR(mb.m_a * (mb.H_new - 0.02) + mb.condensed, mb.evaporated, 1e-12);
}

DryerConfig equilibrium_config(double T) {
    auto cfg = test::baseline_config();
    cfg.airflow.V_in = cfg.airflow.V_out = 0.0;
    cfg.floor.T_deep = T;
    cfg.kinetics.c_sky = 1.0 / std::sqrt(T);
    return cfg;
}

TEST(Step, GlobalFixedPoint) {
    const double T = 303.0;
    const auto cfg = equilibrium_config(T);
    const WeatherRecord w{60.0, 0.0, T, 1.0, 60.0};
    SimState s = initial_state(cfg, {0.0, 0.0, T, 1.0, 60.0});
    const double rh = relative_humidity(s.H, T).percent;
    s.M_p = equilibrium_moisture(to_celsius(T), rh / 100.0, emc_coefficients(cfg.kinetics)) / 100.0;
    SimState cur = s;
    for (int k = 0; k < 50; ++k) {
        WeatherRecord wk = w;
        wk.t = cur.t + 60.0;
        const auto next = step(cur, wk, cfg).state;
        EXPECT_NEAR(next.T_c, cur.T_c, 1e-9);
        EXPECT_NEAR(next.T_a, cur.T_a, 1e-9);
        EXPECT_NEAR(next.T_p, cur.T_p, 1e-9);
        EXPECT_NEAR(next.T_f, cur.T_f, 1e-9);
        EXPECT_NEAR(next.H, cur.H, 1e-12);
        EXPECT_EQ(next.M_p, cur.M_p);
        cur = next;
    }
}

TEST(Step, Deterministic) {
    const auto cfg = test::baseline_config();
    const auto w = synthetic_days(1, tropical_preset());
    SimulationOptions opts{6.0 * 3600.0, std::nullopt};
    const auto a = simulate(cfg, w, opts);
    const auto b = simulate(cfg, w, opts);
    ASSERT_EQ(a.states.size(), b.states.size());
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        EXPECT_EQ(a.states[i].T_a, b.states[i].T_a);
        EXPECT_EQ(a.states[i].T_p, b.states[i].T_p);
        EXPECT_EQ(a.states[i].H, b.states[i].H);
        EXPECT_EQ(a.states[i].M_p, b.states[i].M_p);
    }
}

double max_temperature_gap(const SimSeries& a, const SimSeries& b) {
    EXPECT_EQ(a.states.back().t, b.states.back().t);
    const auto& x = a.states.back();
    const auto& y = b.states.back();
    return std::max({std::abs(x.T_c - y.T_c), std::abs(x.T_a - y.T_a), std::abs(x.T_p - y.T_p),
                     std::abs(x.T_f - y.T_f)});
}

TEST(Step, FirstOrderConvergence) {
    auto cfg = test::baseline_config();
    const auto w = synthetic_days(1, tropical_preset());
    auto run = [&](double dt) {
        cfg.numerics.dt = dt;
        return simulate(cfg, w, {9.0 * 3600.0, std::nullopt});
    };
    const auto ref = run(120.0 / 64.0);
    const double e1 = max_temperature_gap(run(120.0), ref);
    const double e2 = max_temperature_gap(run(60.0), ref);
    EXPECT_GT(e1, e2);
    EXPECT_NEAR(e1 / e2, 2.0, 0.5);
}

TEST(Step, SelfConvergenceTowardFineReference) {
    auto cfg = test::baseline_config();
    const auto w = synthetic_days(2, tropical_preset());
    auto run = [&](double dt) {
        cfg.numerics.dt = dt;
        return simulate(cfg, w, {24.0 * 3600.0, std::nullopt});
    };
    const auto ref = run(15.0);
    // Max |dT| on the 240 s grid shared by every trajectory.
    auto gap = [&](double dt) {
        const auto s = run(dt);
        const auto stride = static_cast<std::size_t>(240.0 / dt);
        double worst = 0.0;
        for (std::size_t i = 0; i * stride < s.states.size(); ++i) {
            const auto& a = s.states[i * stride];
            const auto& b = ref.states[i * 16];
            worst = std::max({worst, std::abs(a.T_c - b.T_c), std::abs(a.T_a - b.T_a),
                              std::abs(a.T_p - b.T_p), std::abs(a.T_f - b.T_f)});
        }
        return worst;
    };
    const double e240 = gap(240.0);
    const double e120 = gap(120.0);
    const double e60 = gap(60.0);
    EXPECT_GT(e240, e120);
    EXPECT_GT(e120, e60);
}

TEST(Step, RejectsNonPositiveDt) {
    const auto cfg = test::baseline_config();
    const SimState s = initial_state(cfg, {0.0, 0.0, 300.0, 1.0, 60.0});
    EXPECT_THROW(step(s, {0.0, 0.0, 300.0, 1.0, 60.0}, cfg, 0.0), ConfigError);
}

TEST(Step, PicardAgreesWithLagged) {
    auto cfg = test::baseline_config();
    const auto w = synthetic_days(1, tropical_preset());
    const SimulationOptions opts{14.0 * 3600.0, std::nullopt};
    const auto lagged = simulate(cfg, w, opts);
    cfg.numerics.linearization = RadiativeLinearization::Picard;
    const auto picard = simulate(cfg, w, opts);
    EXPECT_LT(max_temperature_gap(lagged, picard), 0.05);
    for (const auto& d : picard.diagnostics) {
        EXPECT_GE(d.linear_solves, 2);
        for (double r : d.residual_rel) EXPECT_LE(r, 1e-6);
    }
}

TEST(Simulate, ZeroHorizonKeepsInitialState) {
    const auto cfg = test::baseline_config();
    const auto w = synthetic_days(1, tropical_preset());
    const auto s = simulate(cfg, w, {0.0, std::nullopt});
    ASSERT_EQ(s.states.size(), 1u);
    EXPECT_TRUE(s.diagnostics.empty());
    EXPECT_EQ(s.states[0].M_p, cfg.initial_moisture_db());
    EXPECT_EQ(s.states[0].T_a, w.records[0].T_am);
}

TEST(Simulate, EquilibriumChargeStaysConstant) {
    auto cfg = test::baseline_config();
    // A 2 %db charge sits below M_e = (6 - 0.9) sqrt(1.5) %db at 30 degC, 60 %.
    const auto w = test::constant_weather(24.0, 0.0, 303.15, 1.0, 60.0);
    cfg.product.M_0 = 2.0;
    const auto s = simulate(cfg, w, {24.0 * 3600.0, std::nullopt});
    for (const auto& st : s.states) EXPECT_EQ(st.M_p, 0.02);
}

TEST(Simulate, RowCountAndShortFinalStep) {
    auto cfg = test::baseline_config();
    const auto w = synthetic_days(1, tropical_preset());
    EXPECT_EQ(simulate(cfg, w, {3600.0, std::nullopt}).states.size(), 61u);
    const auto s = simulate(cfg, w, {3630.0, std::nullopt});
    ASSERT_EQ(s.states.size(), 62u);
    EXPECT_EQ(s.states.back().t, 3630.0);
}

TEST(Simulate, WeatherShorterThanHorizon) {
    const auto cfg = test::baseline_config();
    const auto w = synthetic_days(1, tropical_preset());
    EXPECT_THROW(simulate(cfg, w, {25.0 * 3600.0, std::nullopt}), InputError);
}

TEST(Simulate, FailureCarriesStepIndex) {
    const auto cfg = test::baseline_config();
    // Ambient above the air-property table: the first step cannot be evaluated.
    const auto w = test::constant_weather(2.0, 0.0, 365.0, 1.0, 5.0);
    try {
        simulate(cfg, w, {3600.0, std::nullopt});
        FAIL();
    } catch (const NumericalError& e) {
        EXPECT_EQ(e.step(), 0u);
    }
}

TEST(Simulate, StopsAtTarget) {
    const auto cfg = test::baseline_config();
    const auto w = synthetic_days(5, tropical_preset());
    const auto s = simulate(cfg, w, {120.0 * 3600.0, 0.3});
    EXPECT_TRUE(s.reached_target);
    EXPECT_LE(s.states.back().M_p, 0.3);
    EXPECT_GT(s.states[s.states.size() - 2].M_p, 0.3);
}

TEST(Simulate, ResidualsAndMonotoneMoistureOverBaseline) {
    const auto cfg = test::baseline_config();
    const auto w = synthetic_days(3, tropical_preset());
    const auto s = simulate(cfg, w, {72.0 * 3600.0, std::nullopt});
    for (const auto& d : s.diagnostics) {
        for (double r : d.residual_rel) EXPECT_LE(r, 1e-6);
    }
    for (std::size_t i = 1; i < s.states.size(); ++i) {
        EXPECT_LE(s.states[i].M_p, s.states[i - 1].M_p);
    }
}

TEST(Simulate, SealedChamberConservesWater) {
    auto cfg = test::baseline_config();
    cfg.airflow.V_in = cfg.airflow.V_out = 0.0;
    const auto w = synthetic_days(1, tropical_preset());
    const auto s = simulate(cfg, w, {24.0 * 3600.0, std::nullopt});
    const auto& g = cfg.geometry;
    for (std::size_t k = 0; k < s.diagnostics.size(); ++k) {
        const auto& d = s.diagnostics[k];
        const double dH = s.states[k + 1].H - s.states[k].H;
        const double product_water = cfg.product.rho_p * g.A_p * g.D_p * d.dM;
        if (!has_flag(d.flags, StepFlag::HumiditySaturated)) {
            EXPECT_EQ(d.condensed, 0.0);
        }
        EXPECT_NEAR(d.m_a * dH + product_water + d.condensed, 0.0,
                    1e-12 * std::max({1e-6, std::abs(product_water), d.m_a * s.states[k].H}));
    }
}

}  // namespace
}  // namespace solardry
