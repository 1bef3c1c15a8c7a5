#pragma once

// Implicit time integration of the lumped dryer model.
//
// Each step freezes the heat-transfer coefficients and the moisture change
// from the kinetics model, assembles four linear energy balances in the
// unknowns [T_c, T_a, T_p, T_f] (backward Euler for the three storage terms,
// algebraic for the quasi-steady floor), solves them by Gauss-Jordan
// elimination, and closes with a water-mass balance on the chamber air.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "solardry/coefficients.hpp"
#include "solardry/config.hpp"
#include "solardry/linear.hpp"
#include "solardry/types.hpp"
#include "solardry/weather.hpp"

namespace solardry {

enum Unknown : std::size_t { kTc = 0, kTa = 1, kTp = 2, kTf = 3, kUnknowns = 4 };

/// One linear balance equation, sum_j a[j] x[j] = sum_k rhs_terms[k], in watts.
/// The right-hand side is kept as separate physical terms so residuals can be
/// judged against the largest individual contribution.
struct BalanceRow {
    std::array<double, kUnknowns> a{};
    std::vector<double> rhs_terms;

    [[nodiscard]] double rhs() const;
    /// Signed residual a.x - rhs at x, W.
    [[nodiscard]] double residual(const std::array<double, kUnknowns>& x) const;
    /// Largest |a_j x_j| or |rhs term| at x, W.
    [[nodiscard]] double largest_term(const std::array<double, kUnknowns>& x) const;
};

/// Everything a step's balances hold fixed: coefficients, explicit drying
/// rate, inlet conditions and the old state.
struct StepInputs {
    SimState old;
    WeatherRecord weather;  // at the end of the step
    CoefficientSet coeffs;
    AirProps air;           // at the old chamber temperature
    double dt = 0.0;
    double dM_dt = 0.0;     // product drying rate, decimal db per s (<= 0)
    double T_in = 0.0;
    double H_in = 0.0;
};

BalanceRow cover_balance(const StepInputs& in, const DryerConfig& cfg);
BalanceRow air_balance(const StepInputs& in, const DryerConfig& cfg);
BalanceRow product_balance(const StepInputs& in, const DryerConfig& cfg);
/// Throws SingularMatrixError when h_dfg + h_c == 0.
BalanceRow floor_balance(const StepInputs& in, const DryerConfig& cfg);

LinearSystem assemble_system(const std::array<BalanceRow, kUnknowns>& rows);

struct MoistureBalance {
    double H_new = 0.0;
    double m_a = 0.0;        // chamber air mass used, kg
    double evaporated = 0.0; // water released by the product, kg
    double condensed = 0.0;  // vapour above saturation removed as condensate, kg
    bool saturated = false;  // H_new clamped at saturation
};

/// m_a (H_new - H) / dt = -rho_p A_p D_p dM / dt + rho_a (V_in H_in - V_out H_new).
/// T_a_new bounds H_new at saturation when it lies inside the saturation-pressure range;
/// the excess leaves as condensate, so m_a dH = evaporated + inflow - outflow - condensed.
MoistureBalance moisture_balance(double H, double dM, double T_a_new, const StepInputs& in,
                                 const DryerConfig& cfg);

struct StepDiagnostics {
    std::array<double, kUnknowns> residual_w{};    // a.x - b per balance, W
    std::array<double, kUnknowns> residual_rel{};  // |residual| / largest term
    CoefficientSet coeffs;
    double dM = 0.0;             // decimal db
    double rh = 0.0;             // chamber rh used by the kinetics, %
    double A1 = 0.0;             // 0 when drying was suspended
    double B1 = 0.0;
    double m_a = 0.0;            // kg
    double evaporated = 0.0;     // kg
    double condensed = 0.0;      // kg
    int linear_solves = 0;
    std::uint32_t flags = 0;
};

struct StepResult {
    SimState state;
    StepDiagnostics diagnostics;
};

/// Advances state by dt to a weather record sampled at state.t + dt.
StepResult step(const SimState& state, const WeatherRecord& weather, const DryerConfig& cfg,
                double dt);
inline StepResult step(const SimState& state, const WeatherRecord& weather,
                       const DryerConfig& cfg) {
    return step(state, weather, cfg, cfg.numerics.dt);
}

/// Initial conditions: all temperatures at the first ambient reading, H from
/// the ambient humidity, M at the charge moisture.
SimState initial_state(const DryerConfig& cfg, const WeatherRecord& first);

struct SimulationOptions {
    double horizon_s = 0.0;
    std::optional<double> stop_at_moisture;  // decimal db; stop after the first step reaching it
};

struct SimSeries {
    std::vector<SimState> states;
    std::vector<StepDiagnostics> diagnostics;  // diagnostics[k] produced states[k + 1]
    bool reached_target = false;
};

/// Integrates from the start of the weather series over options.horizon_s.
/// The final step is shortened when the horizon is not a multiple of dt.
/// Throws InputError when the weather does not cover the horizon and
/// NumericalError (carrying the step index) for failures inside a step.
SimSeries simulate(const DryerConfig& cfg, const WeatherSeries& weather,
                   const SimulationOptions& options);

}  // namespace solardry
