#include "solardry/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "solardry/errors.hpp"
#include "solardry/kinetics.hpp"
#include "solardry/psychrometrics.hpp"

namespace solardry {

double BalanceRow::rhs() const {
    return std::accumulate(rhs_terms.begin(), rhs_terms.end(), 0.0);
}

double BalanceRow::residual(const std::array<double, kUnknowns>& x) const {
    double lhs = 0.0;
    for (std::size_t j = 0; j < kUnknowns; ++j) lhs += a[j] * x[j];
    return lhs - rhs();
}

double BalanceRow::largest_term(const std::array<double, kUnknowns>& x) const {
    double m = 0.0;
    for (std::size_t j = 0; j < kUnknowns; ++j) m = std::max(m, std::abs(a[j] * x[j]));
    for (double t : rhs_terms) m = std::max(m, std::abs(t));
    return m;
}

BalanceRow cover_balance(const StepInputs& in, const DryerConfig& cfg) {
    const auto& c = in.coeffs;
    const double A_c = cfg.geometry.A_c;
    const double A_p = cfg.geometry.A_p;
    const double storage = cfg.cover.m_c * cfg.cover.C_pc / in.dt;

    BalanceRow row;
    row.a[kTc] = storage + A_c * c.h_c + A_c * c.h_r_cs + A_c * c.h_w + A_p * c.h_r_pc;
    row.a[kTa] = -A_c * c.h_c;
    row.a[kTp] = -A_p * c.h_r_pc;
    row.rhs_terms = {
        storage * in.old.T_c,
        A_c * c.h_r_cs * c.T_s,
        A_c * c.h_w * in.weather.T_am,
        A_c * cfg.cover.alpha_c * in.weather.I_t,
    };
    return row;
}

BalanceRow air_balance(const StepInputs& in, const DryerConfig& cfg) {
    const auto& c = in.coeffs;
    const auto& g = cfg.geometry;
    const double m_a = in.air.rho * g.V;
    const double storage = m_a * in.air.c_p / in.dt;
    // Sensible heat carried by the evaporated vapour, explicit in dM/dt.
    const double sensible = g.A_p * g.D_p * cfg.product.C_pv * cfg.product.rho_p * in.dM_dt;
    const double flow = in.air.rho * in.air.c_p;
    const double loss = c.U_c * g.A_c;
    const double F_p = cfg.product.F_p;
    const double solar = ((1.0 - F_p) * (1.0 - cfg.floor.alpha_f) + (1.0 - cfg.product.alpha_p) * F_p) *
                         in.weather.I_t * g.A_c * cfg.cover.tau_c;

    BalanceRow row;
    row.a[kTa] = storage + g.A_p * c.h_c + g.A_f * c.h_c + sensible +
                 flow * cfg.airflow.V_out + loss;
    row.a[kTp] = -(g.A_p * c.h_c + sensible);
    row.a[kTf] = -g.A_f * c.h_c;
    row.rhs_terms = {
        storage * in.old.T_a,
        flow * cfg.airflow.V_in * in.T_in,
        loss * in.weather.T_am,
        solar,
    };
    return row;
}

BalanceRow product_balance(const StepInputs& in, const DryerConfig& cfg) {
    const auto& c = in.coeffs;
    const auto& g = cfg.geometry;
    const auto& p = cfg.product;
    const double capacity = p.m_p * (p.C_pp + p.C_pl * in.old.M_p);
    const double storage = capacity / in.dt;
    const double q = g.A_p * g.D_p * p.rho_p * in.dM_dt;  // kg s^-1, <= 0 while drying

    BalanceRow row;
    row.a[kTp] = storage + g.A_p * c.h_c + g.A_p * c.h_r_pc - q * p.C_pv;
    row.a[kTa] = -g.A_p * c.h_c + q * p.C_pv;
    row.a[kTc] = -g.A_p * c.h_r_pc;
    row.rhs_terms = {
        storage * in.old.T_p,
        q * p.L_p,
        p.F_p * p.alpha_p * in.weather.I_t * g.A_c * cfg.cover.tau_c,
    };
    return row;
}

BalanceRow floor_balance(const StepInputs& in, const DryerConfig& cfg) {
    const auto& g = cfg.geometry;
    const double h_c = in.coeffs.h_c;
    const double h_dfg = cfg.floor.h_dfg;
    if (h_dfg + h_c == 0.0) throw SingularMatrixError(kTf, 0.0);

    BalanceRow row;
    row.a[kTf] = g.A_f * (h_dfg + h_c);
    row.a[kTa] = -g.A_f * h_c;
    row.rhs_terms = {
        g.A_f * h_dfg * cfg.floor.T_deep,
        (1.0 - cfg.product.F_p) * cfg.floor.alpha_f * in.weather.I_t * g.A_c * cfg.cover.tau_c,
    };
    return row;
}

LinearSystem assemble_system(const std::array<BalanceRow, kUnknowns>& rows) {
    LinearSystem sys(kUnknowns);
    for (std::size_t r = 0; r < kUnknowns; ++r) {
        for (std::size_t c = 0; c < kUnknowns; ++c) sys.a(r, c) = rows[r].a[c];
        sys.b(r) = rows[r].rhs();
    }
    return sys;
}

MoistureBalance moisture_balance(double H, double dM, double T_a_new, const StepInputs& in,
                                 const DryerConfig& cfg) {
    const auto& g = cfg.geometry;
    MoistureBalance out;
    out.m_a = in.air.rho * g.V;
    out.evaporated = -cfg.product.rho_p * g.A_p * g.D_p * dM + 0.0;  // no negative zero
    const double inflow = in.air.rho * in.dt * cfg.airflow.V_in * in.H_in;
    const double outflow = in.air.rho * in.dt * cfg.airflow.V_out;
    out.H_new = std::max(0.0, (out.m_a * H + out.evaporated + inflow) / (out.m_a + outflow));

    if (T_a_new >= 273.15 && T_a_new < 373.15) {
        const double p_sat = saturation_pressure(T_a_new);
        if (p_sat < cfg.numerics.pressure) {
            const double H_sat = saturation_humidity_ratio(T_a_new, cfg.numerics.pressure);
            if (out.H_new > H_sat) {
                out.condensed = (out.H_new - H_sat) * (out.m_a + outflow);
                out.H_new = H_sat;
                out.saturated = true;
            }
        }
    }
    return out;
}

SimState initial_state(const DryerConfig& cfg, const WeatherRecord& first) {
    SimState s;
    s.t = first.t;
    s.T_c = s.T_a = s.T_p = s.T_f = first.T_am;
    s.H = humidity_ratio(first.rh_am, first.T_am, cfg.numerics.pressure);
    s.M_p = cfg.initial_moisture_db();
    return s;
}

namespace {

struct KineticsOutcome {
    double M_new = 0.0;
    double M_e_percent = 0.0;
    double t_eq = 0.0;
    double rh = 0.0;
    double A1 = 0.0;
    double B1 = 0.0;
    std::uint32_t flags = 0;
};

KineticsOutcome advance_moisture(const SimState& s, const DryerConfig& cfg, double dt) {
    KineticsOutcome out;
    out.M_new = s.M_p;
    out.t_eq = s.t_eq;

    const auto rh = relative_humidity(s.H, s.T_a, cfg.numerics.pressure);
    out.rh = rh.percent;
    if (rh.clamped) out.flags = out.flags | StepFlag::RhClamped;

    const double T_celsius = to_celsius(s.T_a);
    double a_w = out.rh / 100.0;
    constexpr double kEdge = 1e-9;
    if (a_w < kEdge || a_w > 1.0 - kEdge) {
        a_w = std::clamp(a_w, kEdge, 1.0 - kEdge);
        out.flags = out.flags | StepFlag::WaterActivityClamped;
    }
    out.M_e_percent = equilibrium_moisture(T_celsius, a_w, emc_coefficients(cfg.kinetics));

    DryingConstants constants;
    try {
        constants = drying_constants(T_celsius, out.rh);
    } catch (const KineticsError&) {
        out.flags = out.flags | StepFlag::DryingSuspended;
        return out;
    }
    if (constants.extrapolated) out.flags = out.flags | StepFlag::KineticsExtrapolated;
    out.A1 = constants.A1;
    out.B1 = constants.B1;

    const auto ms = step_moisture(s.M_p, out.M_e_percent / 100.0, cfg.initial_moisture_db(),
                                  constants, dt);
    out.M_new = ms.M_new;
    if (ms.at_equilibrium) {
        out.flags = out.flags | StepFlag::AtEquilibrium;
    } else {
        out.t_eq = ms.t_eq;
    }
    return out;
}

std::array<double, kUnknowns> temperatures(const SimState& s) {
    return {s.T_c, s.T_a, s.T_p, s.T_f};
}

}  // namespace

StepResult step(const SimState& state, const WeatherRecord& weather, const DryerConfig& cfg,
                double dt) {
    if (!(dt > 0.0)) throw ConfigError("step: dt must be > 0");
    StepResult result;
    auto& diag = result.diagnostics;

    const auto kin = advance_moisture(state, cfg, dt);
    diag.flags = kin.flags;
    diag.rh = kin.rh;
    diag.A1 = kin.A1;
    diag.B1 = kin.B1;
    diag.dM = kin.M_new - state.M_p;

    StepInputs in;
    in.old = state;
    in.weather = weather;
    in.dt = dt;
    in.dM_dt = diag.dM / dt;
    in.air = air_properties(state.T_a);
    if (cfg.airflow.inlet_from_ambient) {
        in.T_in = weather.T_am;
        in.H_in = humidity_ratio(weather.rh_am, weather.T_am, cfg.numerics.pressure);
    } else {
        in.T_in = cfg.airflow.T_in;
        in.H_in = cfg.airflow.H_in;
    }

    // Coefficients are evaluated at the lagged temperatures; in Picard mode
    // they are re-evaluated at each new iterate until the iterates settle.
    SimState lin = state;
    std::array<BalanceRow, kUnknowns> rows;
    std::array<double, kUnknowns> x{};
    const int max_solves = cfg.numerics.linearization == RadiativeLinearization::Picard
                               ? cfg.numerics.picard_max_iterations
                               : 1;
    for (int it = 0; it < max_solves; ++it) {
        in.coeffs = assemble_coefficients(lin, weather, cfg);
        rows = {cover_balance(in, cfg), air_balance(in, cfg), product_balance(in, cfg),
                floor_balance(in, cfg)};
        const auto sol = gauss_jordan(assemble_system(rows));
        std::copy(sol.begin(), sol.end(), x.begin());
        ++diag.linear_solves;

        const auto prev = temperatures(lin);
        double change = 0.0;
        for (std::size_t j = 0; j < kUnknowns; ++j) change = std::max(change, std::abs(x[j] - prev[j]));
        lin.T_c = x[kTc];
        lin.T_a = x[kTa];
        lin.T_p = x[kTp];
        lin.T_f = x[kTf];
        if (it > 0 && change < cfg.numerics.picard_tolerance) break;
    }
    diag.coeffs = in.coeffs;
    diag.flags |= in.coeffs.flags;

    for (std::size_t r = 0; r < kUnknowns; ++r) {
        diag.residual_w[r] = rows[r].residual(x);
        const double scale = rows[r].largest_term(x);
        diag.residual_rel[r] = scale > 0.0 ? std::abs(diag.residual_w[r]) / scale : 0.0;
    }

    const auto mb = moisture_balance(state.H, diag.dM, x[kTa], in, cfg);
    diag.m_a = mb.m_a;
    diag.evaporated = mb.evaporated;
    diag.condensed = mb.condensed;
    if (mb.saturated) diag.flags = diag.flags | StepFlag::HumiditySaturated;

    SimState& next = result.state;
    next.t = state.t + dt;
    next.T_c = x[kTc];
    next.T_a = x[kTa];
    next.T_p = x[kTp];
    next.T_f = x[kTf];
    next.H = mb.H_new;
    next.M_p = kin.M_new;
    next.M_e = kin.M_e_percent;
    next.t_eq = kin.t_eq;
    return result;
}

namespace {

bool finite_state(const SimState& s) {
    return std::isfinite(s.T_c) && std::isfinite(s.T_a) && std::isfinite(s.T_p) &&
           std::isfinite(s.T_f) && std::isfinite(s.H) && std::isfinite(s.M_p) && s.T_c > 0.0 &&
           s.T_a > 0.0 && s.T_p > 0.0 && s.T_f > 0.0;
}

}  // namespace

SimSeries simulate(const DryerConfig& cfg, const WeatherSeries& weather,
                   const SimulationOptions& options) {
    cfg.validate();
    weather.validate();
    if (!(options.horizon_s >= 0.0)) throw ConfigError("simulate: horizon must be >= 0");

    const double t0 = weather.t_begin();
    const double t_final = t0 + options.horizon_s;
    if (t_final > weather.t_end() * (1.0 + 1e-12) + 1e-9) {
        throw InputError("weather '" + weather.source + "' ends at t = " +
                         std::to_string(weather.t_end()) + " s, before the horizon end " +
                         std::to_string(t_final) + " s");
    }

    const double dt = cfg.numerics.dt;
    const auto full_steps = static_cast<std::size_t>(std::floor(options.horizon_s / dt + 1e-9));
    const double remainder = options.horizon_s - static_cast<double>(full_steps) * dt;
    const std::size_t n_steps = full_steps + (remainder > 1e-9 * dt ? 1 : 0);

    SimSeries series;
    series.states.reserve(n_steps + 1);
    series.diagnostics.reserve(n_steps);
    series.states.push_back(initial_state(cfg, weather.records.front()));

    if (options.stop_at_moisture && series.states.back().M_p <= *options.stop_at_moisture) {
        series.reached_target = true;
        return series;
    }

    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t_next =
            k + 1 == n_steps ? t_final : t0 + static_cast<double>(k + 1) * dt;
        const SimState& prev = series.states.back();
        const double h = t_next - prev.t;
        StepResult r;
        try {
            r = step(prev, sample(weather, std::min(t_next, weather.t_end())), cfg, h);
        } catch (const ConfigError&) {
            throw;
        } catch (const NumericalError&) {
            throw;
        } catch (const Error& e) {
            throw NumericalError(k, e.what());
        }
        r.state.t = t_next;
        if (!finite_state(r.state)) throw NumericalError(k, "non-finite or non-positive state");
        series.states.push_back(r.state);
        series.diagnostics.push_back(r.diagnostics);
        if (options.stop_at_moisture && r.state.M_p <= *options.stop_at_moisture) {
            series.reached_target = true;
            break;
        }
    }
    return series;
}

}  // namespace solardry
