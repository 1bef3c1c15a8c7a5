#pragma once

// DryerConfig: every geometric, material, airflow, kinetic and numerical
// input of the dryer model in one validated bundle.
//
// The on-disk form is a JSON document whose sections and keys mirror the
// struct layout below (e.g. "airflow": {"V_in": 0.05}). Any leaf can be
// overridden with a dotted path such as "airflow.V_in=0.08".

#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "solardry/types.hpp"

namespace solardry {

struct Geometry {
    double W = 0.0;    // floor width, m
    double D = 0.0;    // average floor-to-cover distance, m
    double A_c = 0.0;  // cover area, m^2
    double A_f = 0.0;  // floor area, m^2
    double A_p = 0.0;  // product area, m^2
    double V = 0.0;    // chamber volume, m^3
    double D_p = 0.0;  // product layer thickness, m
};

struct Cover {
    double m_c = 0.0;     // kg
    double C_pc = 0.0;    // J kg^-1 K^-1
    double alpha_c = 0.0;
    double tau_c = 0.0;
    double eps_c = 0.0;
    double k_c = 0.0;     // W m^-1 K^-1
    double delta_c = 0.0; // m
};

struct Floor {
    double alpha_f = 0.0;
    double k_f = 0.0;    // W m^-1 K^-1 (informational; the floor rows use h_dfg)
    double h_dfg = 0.0;  // floor-to-ground conductance, W m^-2 K^-1
    double T_deep = 0.0; // K
};

struct Product {
    double m_p = 0.0;   // dry matter, kg
    double rho_p = 0.0; // dry-product density, kg m^-3
    double C_pp = 0.0;  // J kg^-1 K^-1
    double C_pl = 0.0;
    double C_pv = 0.0;
    double alpha_p = 0.0;
    double eps_p = 0.0;
    double L_p = 0.0;   // J kg^-1
    double M_0 = 0.0;   // initial moisture, %db
    double F_p = 0.0;   // fraction of transmitted radiation falling on product
};

struct Airflow {
    double V_in = 0.0;  // m^3 s^-1
    double V_out = 0.0; // m^3 s^-1
    double V_a = 0.0;   // interior air speed, m s^-1
    double T_in = 0.0;  // K, used when inlet_from_ambient is false
    double H_in = 0.0;  // kg kg^-1, used when inlet_from_ambient is false
    bool inlet_from_ambient = true;
};

struct KineticsParams {
    // Isotherm coefficients of a_w = 1 / (1 + ((b0 + b1 T) / M_e)^b2), T in degC,
    // M_e in %db. Required: there are no built-in defaults.
    double b0 = 0.0;
    double b1 = 0.0;
    double b2 = 0.0;
    double c_sky = 0.0552;
};

enum class RadiativeLinearization {
    Lagged,  // coefficients frozen at previous-step temperatures
    Picard,  // re-evaluated at the solved temperatures until converged
};

struct Numerics {
    double dt = 60.0;  // s
    RadiativeLinearization linearization = RadiativeLinearization::Lagged;
    int picard_max_iterations = 8;
    double picard_tolerance = 1e-8;  // K
    double pressure = kStandardPressure;
};

struct DryerConfig {
    Geometry geometry;
    Cover cover;
    Floor floor;
    Product product;
    Airflow airflow;
    KineticsParams kinetics;
    Numerics numerics;

    /// Throws ConfigError naming the first violated invariant.
    void validate() const;

    [[nodiscard]] double initial_moisture_db() const noexcept { return product.M_0 / 100.0; }
};

DryerConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const DryerConfig& cfg);
DryerConfig load_config(const std::string& path);

/// Parses "a.b.c=value". The value becomes a number or bool when it parses as
/// one, a JSON literal when it starts with '[' or '{', otherwise a string.
struct PathOverride {
    std::string path;
    nlohmann::json value;
};
PathOverride parse_override(std::string_view assignment);

/// Sets doc at a dotted path. The path must already exist in doc so that
/// misspelled keys fail instead of being silently ignored.
void apply_override(nlohmann::json& doc, const PathOverride& ov);
void apply_overrides(nlohmann::json& doc, const std::vector<PathOverride>& overrides);

}  // namespace solardry
