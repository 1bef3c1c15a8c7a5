#include "solardry/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "solardry/errors.hpp"

namespace solardry {

using nlohmann::json;

namespace {

const json& section(const json& doc, const char* name) {
    if (!doc.is_object() || !doc.contains(name) || !doc.at(name).is_object()) {
        throw ConfigError(std::string("config: missing section '") + name + "'");
    }
    return doc.at(name);
}

double required(const json& sec, const char* sec_name, const char* key) {
    if (!sec.contains(key)) {
        throw ConfigError(std::string("config: missing key '") + sec_name + "." + key + "'");
    }
    const json& v = sec.at(key);
    if (!v.is_number()) {
        throw ConfigError(std::string("config: '") + sec_name + "." + key + "' must be a number");
    }
    return v.get<double>();
}

template <typename T>
T optional(const json& sec, const char* key, T fallback) {
    if (!sec.contains(key)) return fallback;
    try {
        return sec.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config: key '") + key + "' has the wrong type");
    }
}

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("config: " + what);
}

bool positive(double v) { return std::isfinite(v) && v > 0.0; }
bool fraction(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void DryerConfig::validate() const {
    const auto& g = geometry;
    require(positive(g.W), "geometry.W must be > 0");
    require(positive(g.D), "geometry.D must be > 0");
    require(positive(g.A_c), "geometry.A_c must be > 0");
    require(positive(g.A_f), "geometry.A_f must be > 0");
    require(positive(g.A_p), "geometry.A_p must be > 0");
    require(positive(g.V), "geometry.V must be > 0");
    require(positive(g.D_p), "geometry.D_p must be > 0");

    require(positive(cover.m_c), "cover.m_c must be > 0");
    require(positive(cover.C_pc), "cover.C_pc must be > 0");
    require(fraction(cover.alpha_c), "cover.alpha_c must lie in [0, 1]");
    require(fraction(cover.tau_c), "cover.tau_c must lie in [0, 1]");
    require(fraction(cover.eps_c), "cover.eps_c must lie in [0, 1]");
    require(cover.alpha_c + cover.tau_c <= 1.0, "cover.alpha_c + cover.tau_c must be <= 1");
    require(cover.k_c >= 0.0, "cover.k_c must be >= 0");
    require(positive(cover.delta_c), "cover.delta_c must be > 0");

    require(fraction(floor.alpha_f), "floor.alpha_f must lie in [0, 1]");
    require(floor.k_f >= 0.0, "floor.k_f must be >= 0");
    require(floor.h_dfg >= 0.0, "floor.h_dfg must be >= 0");
    require(positive(floor.T_deep), "floor.T_deep must be > 0 K");

    const auto& p = product;
    require(positive(p.m_p), "product.m_p must be > 0");
    require(positive(p.rho_p), "product.rho_p must be > 0");
    require(positive(p.C_pp), "product.C_pp must be > 0");
    require(positive(p.C_pl), "product.C_pl must be > 0");
    require(positive(p.C_pv), "product.C_pv must be > 0");
    require(fraction(p.alpha_p), "product.alpha_p must lie in [0, 1]");
    require(fraction(p.eps_p), "product.eps_p must lie in [0, 1]");
    require(p.L_p >= 0.0, "product.L_p must be >= 0");
    require(positive(p.M_0), "product.M_0 must be > 0");
    require(fraction(p.F_p), "product.F_p must lie in [0, 1]");

    require(airflow.V_in >= 0.0, "airflow.V_in must be >= 0");
    require(airflow.V_out >= 0.0, "airflow.V_out must be >= 0");
    require(airflow.V_a >= 0.0, "airflow.V_a must be >= 0");
    if (!airflow.inlet_from_ambient) {
        require(positive(airflow.T_in), "airflow.T_in must be > 0 K");
        require(airflow.H_in >= 0.0, "airflow.H_in must be >= 0");
    }

    require(kinetics.b2 != 0.0 && std::isfinite(kinetics.b2), "kinetics.b2 must be nonzero");
    require(std::isfinite(kinetics.b0) && std::isfinite(kinetics.b1),
            "kinetics.b0 and kinetics.b1 must be finite");
    require(kinetics.c_sky >= 0.0, "kinetics.c_sky must be >= 0");

    require(positive(numerics.dt), "numerics.dt must be > 0");
    require(numerics.picard_max_iterations >= 1, "numerics.picard_max_iterations must be >= 1");
    require(positive(numerics.picard_tolerance), "numerics.picard_tolerance must be > 0");
    require(positive(numerics.pressure), "numerics.pressure must be > 0");
}

DryerConfig config_from_json(const json& doc) {
    DryerConfig cfg;
    try {
        const json& g = section(doc, "geometry");
        cfg.geometry.W = required(g, "geometry", "W");
        cfg.geometry.D = required(g, "geometry", "D");
        cfg.geometry.A_c = required(g, "geometry", "A_c");
        cfg.geometry.A_f = required(g, "geometry", "A_f");
        cfg.geometry.A_p = required(g, "geometry", "A_p");
        cfg.geometry.V = required(g, "geometry", "V");
        cfg.geometry.D_p = required(g, "geometry", "D_p");

        const json& c = section(doc, "cover");
        cfg.cover.m_c = required(c, "cover", "m_c");
        cfg.cover.C_pc = required(c, "cover", "C_pc");
        cfg.cover.alpha_c = required(c, "cover", "alpha_c");
        cfg.cover.tau_c = required(c, "cover", "tau_c");
        cfg.cover.eps_c = required(c, "cover", "eps_c");
        cfg.cover.k_c = required(c, "cover", "k_c");
        cfg.cover.delta_c = required(c, "cover", "delta_c");

        const json& f = section(doc, "floor");
        cfg.floor.alpha_f = required(f, "floor", "alpha_f");
        cfg.floor.k_f = required(f, "floor", "k_f");
        cfg.floor.h_dfg = required(f, "floor", "h_dfg");
        cfg.floor.T_deep = required(f, "floor", "T_deep");

        const json& p = section(doc, "product");
        cfg.product.m_p = required(p, "product", "m_p");
        cfg.product.rho_p = required(p, "product", "rho_p");
        cfg.product.C_pp = required(p, "product", "C_pp");
        cfg.product.C_pl = required(p, "product", "C_pl");
        cfg.product.C_pv = required(p, "product", "C_pv");
        cfg.product.alpha_p = required(p, "product", "alpha_p");
        cfg.product.eps_p = required(p, "product", "eps_p");
        cfg.product.L_p = required(p, "product", "L_p");
        cfg.product.M_0 = required(p, "product", "M_0");
        cfg.product.F_p = required(p, "product", "F_p");

        const json& a = section(doc, "airflow");
        cfg.airflow.V_in = required(a, "airflow", "V_in");
        cfg.airflow.V_out = required(a, "airflow", "V_out");
        cfg.airflow.V_a = required(a, "airflow", "V_a");
        cfg.airflow.inlet_from_ambient = optional(a, "inlet_from_ambient", true);
        cfg.airflow.T_in = optional(a, "T_in", 0.0);
        cfg.airflow.H_in = optional(a, "H_in", 0.0);

        const json& k = section(doc, "kinetics");
        cfg.kinetics.b0 = required(k, "kinetics", "b0");
        cfg.kinetics.b1 = required(k, "kinetics", "b1");
        cfg.kinetics.b2 = required(k, "kinetics", "b2");
        cfg.kinetics.c_sky = optional(k, "c_sky", 0.0552);

        if (doc.contains("numerics")) {
            const json& n = section(doc, "numerics");
            cfg.numerics.dt = optional(n, "dt", cfg.numerics.dt);
            const auto mode = optional<std::string>(n, "linearization", "lagged");
            if (mode == "lagged") {
                cfg.numerics.linearization = RadiativeLinearization::Lagged;
            } else if (mode == "picard") {
                cfg.numerics.linearization = RadiativeLinearization::Picard;
            } else {
                throw ConfigError("config: numerics.linearization must be 'lagged' or 'picard'");
            }
            cfg.numerics.picard_max_iterations =
                optional(n, "picard_max_iterations", cfg.numerics.picard_max_iterations);
            cfg.numerics.picard_tolerance =
                optional(n, "picard_tolerance", cfg.numerics.picard_tolerance);
            cfg.numerics.pressure = optional(n, "pressure", cfg.numerics.pressure);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

json config_to_json(const DryerConfig& cfg) {
    const auto& g = cfg.geometry;
    const auto& c = cfg.cover;
    const auto& f = cfg.floor;
    const auto& p = cfg.product;
    const auto& a = cfg.airflow;
    const auto& k = cfg.kinetics;
    const auto& n = cfg.numerics;
    json doc;
    doc["geometry"] = {{"W", g.W}, {"D", g.D}, {"A_c", g.A_c}, {"A_f", g.A_f},
                       {"A_p", g.A_p}, {"V", g.V}, {"D_p", g.D_p}};
    doc["cover"] = {{"m_c", c.m_c}, {"C_pc", c.C_pc}, {"alpha_c", c.alpha_c},
                    {"tau_c", c.tau_c}, {"eps_c", c.eps_c}, {"k_c", c.k_c},
                    {"delta_c", c.delta_c}};
    doc["floor"] = {{"alpha_f", f.alpha_f}, {"k_f", f.k_f}, {"h_dfg", f.h_dfg},
                    {"T_deep", f.T_deep}};
    doc["product"] = {{"m_p", p.m_p},     {"rho_p", p.rho_p},     {"C_pp", p.C_pp},
                      {"C_pl", p.C_pl},   {"C_pv", p.C_pv},       {"alpha_p", p.alpha_p},
                      {"eps_p", p.eps_p}, {"L_p", p.L_p},         {"M_0", p.M_0},
                      {"F_p", p.F_p}};
    doc["airflow"] = {{"V_in", a.V_in}, {"V_out", a.V_out}, {"V_a", a.V_a},
                      {"T_in", a.T_in}, {"H_in", a.H_in},
                      {"inlet_from_ambient", a.inlet_from_ambient}};
    doc["kinetics"] = {{"b0", k.b0}, {"b1", k.b1}, {"b2", k.b2}, {"c_sky", k.c_sky}};
    doc["numerics"] = {
        {"dt", n.dt},
        {"linearization", n.linearization == RadiativeLinearization::Picard ? "picard" : "lagged"},
        {"picard_max_iterations", n.picard_max_iterations},
        {"picard_tolerance", n.picard_tolerance},
        {"pressure", n.pressure}};
    return doc;
}

DryerConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError("config: " + path + ": " + e.what());
    }
    return config_from_json(doc);
}

PathOverride parse_override(std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos || eq == 0) {
        throw ConfigError("override '" + std::string(assignment) + "' must look like path=value");
    }
    PathOverride ov;
    ov.path = std::string(assignment.substr(0, eq));
    const std::string text(assignment.substr(eq + 1));

    double number = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), number);
    if (ec == std::errc() && ptr == text.data() + text.size() && !text.empty()) {
        ov.value = number;
    } else if (text == "true" || text == "false") {
        ov.value = (text == "true");
    } else if (!text.empty() && (text.front() == '[' || text.front() == '{')) {
        try {
            ov.value = json::parse(text);
        } catch (const json::parse_error&) {
            throw ConfigError("override '" + ov.path + "': malformed JSON value");
        }
    } else {
        ov.value = text;
    }
    return ov;
}

void apply_override(json& doc, const PathOverride& ov) {
    json* node = &doc;
    std::string_view rest = ov.path;
    while (true) {
        const auto dot = rest.find('.');
        const std::string key(rest.substr(0, dot));
        if (!node->is_object() || !node->contains(key)) {
            throw ConfigError("override: unknown config path '" + ov.path + "'");
        }
        node = &(*node)[key];
        if (dot == std::string_view::npos) break;
        rest.remove_prefix(dot + 1);
    }
    *node = ov.value;
}

void apply_overrides(json& doc, const std::vector<PathOverride>& overrides) {
    for (const auto& ov : overrides) apply_override(doc, ov);
}

}  // namespace solardry
