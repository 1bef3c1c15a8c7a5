#include "solardry/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <thread>

#include "solardry/analysis.hpp"
#include "solardry/solver.hpp"

namespace solardry {

using nlohmann::json;

namespace {

double number(const json& doc, const char* key, const char* where) {
    if (!doc.contains(key) || !doc.at(key).is_number()) {
        throw ConfigError(std::string(where) + ": missing numeric key '" + key + "'");
    }
    return doc.at(key).get<double>();
}

}  // namespace

DesignEconomics design_economics_from_json(const json& doc) {
    DesignEconomics e;
    e.capital_fixed = number(doc, "capital_fixed", "economics");
    e.capital_per_m2_cover = number(doc, "capital_per_m2_cover", "economics");
    e.annual_operating_cost = number(doc, "annual_operating_cost", "economics");
    e.premium_per_kg = number(doc, "premium_per_kg", "economics");
    e.operating_hours_per_year = number(doc, "operating_hours_per_year", "economics");
    e.turnaround_h = number(doc, "turnaround_h", "economics");
    return e;
}

void SweepSpec::validate() const {
    if (parameters.empty()) throw ConfigError("sweep: at least one parameter is required");
    for (const auto& p : parameters) {
        if (p.values.empty()) throw ConfigError("sweep: parameter '" + p.path + "' has no values");
    }
    const auto cfg = config_from_json(base_config);
    if (!(target_mdb < cfg.initial_moisture_db())) {
        throw ConfigError("sweep: target moisture must be below the initial moisture");
    }
    if (!(horizon_s > 0.0)) throw ConfigError("sweep: horizon must be > 0");
    if (objective == Objective::Payback && !economics) {
        throw ConfigError("sweep: payback objective needs an 'economics' block");
    }
    weather.validate();
}

SweepSpec sweep_spec_from_json(const json& doc, const std::string& base_dir) {
    namespace fs = std::filesystem;
    auto resolve = [&](const std::string& p) {
        const fs::path path(p);
        return path.is_absolute() ? path.string() : (fs::path(base_dir) / path).string();
    };

    SweepSpec spec;
    try {
        json cfg_doc;
        if (doc.contains("config")) {
            cfg_doc = doc.at("config");
        } else if (doc.contains("base_config")) {
            const auto path = resolve(doc.at("base_config").get<std::string>());
            std::ifstream in(path);
            if (!in) throw ConfigError("sweep: cannot open base config '" + path + "'");
            cfg_doc = json::parse(in, nullptr, true, true);
        } else {
            throw ConfigError("sweep: needs 'base_config' or 'config'");
        }
        spec.base_config = config_to_json(config_from_json(cfg_doc));

        if (!doc.contains("parameters") || !doc.at("parameters").is_array()) {
            throw ConfigError("sweep: 'parameters' must be an array");
        }
        for (const auto& p : doc.at("parameters")) {
            SweepParameter param;
            param.path = p.at("path").get<std::string>();
            for (const auto& v : p.at("values")) param.values.push_back(v);
            spec.parameters.push_back(std::move(param));
        }

        const auto objective = doc.value("objective", std::string("drying_time"));
        if (objective == "drying_time") {
            spec.objective = Objective::DryingTime;
        } else if (objective == "payback") {
            spec.objective = Objective::Payback;
        } else {
            throw ConfigError("sweep: objective must be 'drying_time' or 'payback'");
        }
        spec.target_mdb = doc.value("target_mdb", 0.08);
        spec.horizon_s = doc.value("horizon_h", 120.0) * 3600.0;
        spec.max_points = doc.value("max_points", kDefaultGridCap);
        spec.threads = doc.value("threads", 1u);
        if (doc.contains("economics")) {
            spec.economics = design_economics_from_json(doc.at("economics"));
        }

        const json weather = doc.value("weather", json{{"preset", "tropical"}, {"days", 5}});
        if (weather.contains("file")) {
            spec.weather = load_csv(resolve(weather.at("file").get<std::string>()));
        } else {
            const auto params = preset_by_name(weather.value("preset", std::string("tropical")));
            spec.weather = synthetic_days(weather.value("days", 5), params);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("sweep: ") + e.what());
    }
    spec.validate();
    return spec;
}

SweepSpec load_sweep_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("sweep: cannot open '" + path + "'");
    json doc;
    try {
        doc = json::parse(in, nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("sweep: " + path + ": " + e.what());
    }
    const auto dir = std::filesystem::path(path).parent_path().string();
    return sweep_spec_from_json(doc, dir.empty() ? "." : dir);
}

std::optional<double> drying_time_objective(const DryerConfig& cfg, const WeatherSeries& weather,
                                            double target_mdb, double horizon_s) {
    if (target_mdb >= cfg.initial_moisture_db()) return 0.0;
    SimulationOptions opts;
    opts.horizon_s = horizon_s;
    opts.stop_at_moisture = target_mdb;
    const auto series = simulate(cfg, weather, opts);
    if (!series.reached_target) return std::nullopt;

    const auto& s = series.states;
    const double t0 = s.front().t;
    const auto& last = s.back();
    const auto& prev = s[s.size() - 2];
    const double w = (prev.M_p - target_mdb) / (prev.M_p - last.M_p);
    return (prev.t + w * (last.t - prev.t) - t0) / 3600.0;
}

std::size_t grid_size(const std::vector<SweepParameter>& parameters, std::size_t cap) {
    std::size_t total = 1;
    for (const auto& p : parameters) {
        const std::size_t n = p.values.size();
        if (n != 0 && total > cap / n) {
            throw GridSizeError("sweep: grid exceeds the cap of " + std::to_string(cap) +
                                " points");
        }
        total *= n;
    }
    if (total > cap) {
        throw GridSizeError("sweep: grid of " + std::to_string(total) +
                            " points exceeds the cap of " + std::to_string(cap));
    }
    return total;
}

namespace {

std::vector<std::size_t> unravel(std::size_t flat, const std::vector<SweepParameter>& params) {
    std::vector<std::size_t> idx(params.size());
    for (std::size_t k = params.size(); k-- > 0;) {
        idx[k] = flat % params[k].values.size();
        flat /= params[k].values.size();
    }
    return idx;
}

void evaluate(SweepPoint& point, const SweepSpec& spec) {
    constexpr double kInf = std::numeric_limits<double>::infinity();
    point.objective = kInf;
    try {
        json doc = spec.base_config;
        for (std::size_t k = 0; k < spec.parameters.size(); ++k) {
            apply_override(doc, {spec.parameters[k].path, point.values[k]});
        }
        const auto cfg = config_from_json(doc);
        point.drying_time_h = drying_time_objective(cfg, spec.weather, spec.target_mdb, spec.horizon_s);
        if (!point.drying_time_h) return;

        if (spec.objective == Objective::DryingTime) {
            point.objective = *point.drying_time_h;
            return;
        }
        const auto& econ = *spec.economics;
        EconomicInputs e;
        e.capital_cost = econ.capital_fixed + econ.capital_per_m2_cover * cfg.geometry.A_c;
        e.annual_operating_cost = econ.annual_operating_cost;
        e.premium_per_kg = econ.premium_per_kg;
        const double batches = econ.operating_hours_per_year / (*point.drying_time_h + econ.turnaround_h);
        e.annual_production_kg = batches * cfg.product.m_p * (1.0 + spec.target_mdb);
        try {
            point.payback_years = payback_period(e);
            point.objective = *point.payback_years;
        } catch (const NoPaybackError&) {
            // stays +inf
        }
    } catch (const Error& e) {
        point.error = e.what();
    }
}

bool ranks_before(const SweepPoint& a, const SweepPoint& b) {
    if (a.objective != b.objective) return a.objective < b.objective;
    return a.index < b.index;
}

}  // namespace

SweepResult grid_search(const SweepSpec& spec) {
    const std::size_t total = grid_size(spec.parameters, spec.max_points);

    SweepResult result;
    for (const auto& p : spec.parameters) result.paths.push_back(p.path);
    result.ranked.resize(total);
    for (std::size_t i = 0; i < total; ++i) {
        auto& pt = result.ranked[i];
        pt.index = unravel(i, spec.parameters);
        for (std::size_t k = 0; k < spec.parameters.size(); ++k) {
            pt.values.push_back(spec.parameters[k].values[pt.index[k]]);
        }
    }

    unsigned workers = spec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                         : spec.threads;
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, total));
    if (workers <= 1) {
        for (auto& pt : result.ranked) evaluate(pt, spec);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = next++; i < total; i = next++) evaluate(result.ranked[i], spec);
            });
        }
    }

    std::sort(result.ranked.begin(), result.ranked.end(), ranks_before);
    return result;
}

}  // namespace solardry
