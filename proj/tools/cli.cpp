#include "cli.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "solardry/analysis.hpp"
#include "solardry/config.hpp"
#include "solardry/errors.hpp"
#include "solardry/psychrometrics.hpp"
#include "solardry/solver.hpp"
#include "solardry/sweep.hpp"
#include "solardry/weather.hpp"

namespace solardry::cli {

namespace fs = std::filesystem;
using nlohmann::json;

std::string content_hash(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) return i;
    }
    return std::nullopt;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        std::string cell = line.substr(start, comma - start);
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        cells.push_back(std::move(cell));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return cells;
}

std::string fmt(double v) {
    if (!std::isfinite(v)) return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write '" + path.string() + "'");
    return out;
}

void ensure_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw ConfigError("cannot create output directory '" + dir + "': " + ec.message());
}

std::string banner(const std::string& hash) {
    return std::string("# ") + kEngineVersion + " input_hash=" + hash + "\n";
}

}  // namespace

CsvTable read_csv_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line.front() == '#' || line == "\r") continue;
        auto cells = split(line);
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size()) {
            throw InputError(path + ":" + std::to_string(line_no) + ": wrong number of cells");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(c, &used));
                if (used != c.size()) throw std::invalid_argument(c);
            } catch (const std::exception&) {
                // Non-numeric cells (e.g. flag strings) are kept as NaN.
                row.push_back(std::nan(""));
            }
        }
        table.rows.push_back(std::move(row));
    }
    if (table.header.empty()) throw InputError(path + ": empty table");
    return table;
}

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err) {
    // Configuration.
    DryerConfig cfg;
    json cfg_doc;
    try {
        std::ifstream in(opts.config_path);
        if (!in) throw ConfigError("cannot open config '" + opts.config_path + "'");
        try {
            cfg_doc = config_to_json(config_from_json(json::parse(in, nullptr, true, true)));
        } catch (const json::parse_error& e) {
            throw ConfigError(opts.config_path + ": " + e.what());
        }
        std::vector<PathOverride> overrides;
        for (const auto& s : opts.overrides) overrides.push_back(parse_override(s));
        if (opts.dt) overrides.push_back({"numerics.dt", *opts.dt});
        apply_overrides(cfg_doc, overrides);
        cfg = config_from_json(cfg_doc);
        if (opts.horizon_h && !(*opts.horizon_h >= 0.0)) throw ConfigError("--horizon-h must be >= 0");
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::kConfig;
    }

    // Weather.
    WeatherSeries weather;
    std::string weather_identity;
    try {
        if (opts.weather_path) {
            weather_identity = read_file(*opts.weather_path);
            weather = load_csv(*opts.weather_path);
        } else {
            const std::string name = opts.preset.value_or("tropical");
            int days = opts.days.value_or(3);
            if (!opts.days && opts.horizon_h) {
                days = std::max(1, static_cast<int>(std::ceil(*opts.horizon_h / 24.0 - 1e-12)));
            }
            weather = synthetic_days(days, preset_by_name(name));
            weather_identity = "preset:" + name + ":days=" + std::to_string(days);
        }
    } catch (const Error& e) {
        err << "weather error: " << e.what() << '\n';
        return exit_code::kInput;
    }

    SimulationOptions sim;
    sim.horizon_s = opts.horizon_h ? *opts.horizon_h * 3600.0 : weather.t_end() - weather.t_begin();
    sim.stop_at_moisture = opts.target_mdb;

    std::ostringstream identity;
    identity << kEngineVersion << '\n' << cfg_doc.dump() << '\n' << weather_identity << '\n'
             << fmt(sim.horizon_s) << '\n'
             << (opts.target_mdb ? fmt(*opts.target_mdb) : std::string("none")) << '\n';
    const std::string hash = content_hash(identity.str());

    SimSeries series;
    try {
        series = simulate(cfg, weather, sim);
    } catch (const InputError& e) {
        err << "weather error: " << e.what() << '\n';
        return exit_code::kInput;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::kConfig;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_code::kNumerical;
    }

    try {
        ensure_dir(opts.out_dir);
        const fs::path dir(opts.out_dir);

        auto states = open_output(dir / "states.csv");
        states << banner(hash) << "t_s,T_c_K,T_a_K,T_p_K,T_f_K,H,M_db,rh_pct\n";
        for (const auto& s : series.states) {
            double rh = std::nan("");
            if (s.T_a >= 273.15 && s.T_a <= 373.15) {
                rh = relative_humidity(s.H, s.T_a, cfg.numerics.pressure).percent;
            }
            states << fmt(s.t) << ',' << fmt(s.T_c) << ',' << fmt(s.T_a) << ',' << fmt(s.T_p)
                   << ',' << fmt(s.T_f) << ',' << fmt(s.H) << ',' << fmt(s.M_p) << ',' << fmt(rh)
                   << '\n';
        }

        auto diag = open_output(dir / "diagnostics.csv");
        diag << banner(hash)
             << "step,t_s,res_cover_W,res_air_W,res_product_W,res_floor_W,max_rel_residual,"
                "dM_db,rh_pct,A1,B1,h_c,h_r_cs,h_r_pc,h_w,U_c,T_s_K,Re,m_a_kg,evaporated_kg,"
                "condensed_kg,flags\n";
        for (std::size_t k = 0; k < series.diagnostics.size(); ++k) {
            const auto& d = series.diagnostics[k];
            double rel = 0.0;
            for (double r : d.residual_rel) rel = std::max(rel, r);
            diag << k << ',' << fmt(series.states[k + 1].t);
            for (double r : d.residual_w) diag << ',' << fmt(r);
            diag << ',' << fmt(rel) << ',' << fmt(d.dM) << ',' << fmt(d.rh) << ',' << fmt(d.A1)
                 << ',' << fmt(d.B1) << ',' << fmt(d.coeffs.h_c) << ',' << fmt(d.coeffs.h_r_cs)
                 << ',' << fmt(d.coeffs.h_r_pc) << ',' << fmt(d.coeffs.h_w) << ','
                 << fmt(d.coeffs.U_c) << ',' << fmt(d.coeffs.T_s) << ',' << fmt(d.coeffs.Re)
                 << ',' << fmt(d.m_a) << ',' << fmt(d.evaporated) << ',' << fmt(d.condensed) << ','
                 << describe_flags(d.flags) << '\n';
        }

        json manifest;
        manifest["engine_version"] = kEngineVersion;
        manifest["input_hash"] = hash;
        manifest["config_path"] = opts.config_path;
        manifest["weather_source"] = opts.weather_path ? *opts.weather_path
                                                       : "preset:" + opts.preset.value_or("tropical");
        manifest["output_dir"] = opts.out_dir;
        manifest["parameters"] = {{"dt_s", cfg.numerics.dt},
                                  {"horizon_s", sim.horizon_s},
                                  {"target_mdb", opts.target_mdb ? json(*opts.target_mdb) : json()},
                                  {"overrides", opts.overrides}};
        manifest["config"] = cfg_doc;
        manifest["steps"] = series.diagnostics.size();
        manifest["reached_target"] = series.reached_target;
        auto mf = open_output(dir / "manifest.json");
        mf << manifest.dump(2) << '\n';
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::kConfig;
    }

    const auto& last = series.states.back();
    out << "steps=" << series.diagnostics.size() << " t_end_h=" << fmt((last.t - series.states.front().t) / 3600.0)
        << " M_db=" << fmt(last.M_p) << " input_hash=" << hash << '\n';
    return exit_code::kOk;
}

int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err) {
    CsvTable states;
    ObservedTrace observed;
    try {
        states = read_csv_table(opts.states_path);
        observed = load_observed_csv(opts.observed_path);
    } catch (const Error& e) {
        err << "input error: " << e.what() << '\n';
        return exit_code::kInput;
    }

    const std::string variable = opts.variable.value_or(observed.variable);
    const auto t_col = states.column("t_s");
    const auto v_col = states.column(variable);
    if (!t_col) {
        err << "input error: states file has no t_s column\n";
        return exit_code::kInput;
    }
    if (!v_col) {
        err << "input error: unknown variable '" << variable << "'\n";
        return exit_code::kInput;
    }

    std::vector<double> t;
    std::vector<double> v;
    for (const auto& row : states.rows) {
        t.push_back(row[*t_col]);
        v.push_back(row[*v_col]);
    }

    ErrorReport report;
    try {
        const auto predicted = interpolate_at(t, v, observed.t);
        report = percent_difference(predicted, observed.values, variable);
    } catch (const Error& e) {
        err << "grid mismatch: " << e.what() << '\n';
        return exit_code::kInput;
    }
    const bool pass = acceptance_check(report, opts.limit);

    char line[256];
    std::snprintf(line, sizeof line,
                  "variable=%s n=%zu mean_abs_percent=%.6f max_abs_diff=%.6g limit=%.6g verdict=%s\n",
                  report.variable.c_str(), report.n, report.mean_abs_percent, report.max_abs_diff,
                  report.limit, pass ? "PASS" : "FAIL");
    out << line;
    return pass ? exit_code::kOk : exit_code::kFailed;
}

int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err) {
    SweepSpec spec;
    std::string spec_bytes;
    try {
        spec_bytes = read_file(opts.spec_path);
        spec = load_sweep_spec(opts.spec_path);
        if (opts.threads) spec.threads = *opts.threads;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return exit_code::kInput;
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::kConfig;
    }

    SweepResult result;
    try {
        result = grid_search(spec);
    } catch (const GridSizeError& e) {
        err << "grid error: " << e.what() << '\n';
        return exit_code::kInput;
    } catch (const Error& e) {
        err << "numerical failure: " << e.what() << '\n';
        return exit_code::kNumerical;
    }

    const std::string hash = content_hash(std::string(kEngineVersion) + "\n" +
                                          spec.base_config.dump() + "\n" + spec_bytes);
    try {
        ensure_dir(opts.out_dir);
        auto csv = open_output(fs::path(opts.out_dir) / "sweep.csv");
        csv << banner(hash) << "rank";
        for (const auto& p : result.paths) csv << ',' << p;
        csv << ",drying_time_h,payback_years,objective,error\n";
        std::size_t rank = 1;
        for (const auto& pt : result.ranked) {
            csv << rank++;
            for (const auto& v : pt.values) {
                csv << ',' << (v.is_number() ? fmt(v.get<double>()) : v.dump());
            }
            csv << ',' << (pt.drying_time_h ? fmt(*pt.drying_time_h) : "") << ','
                << (pt.payback_years ? fmt(*pt.payback_years) : "") << ',' << fmt(pt.objective)
                << ',' << pt.error << '\n';
        }
    } catch (const Error& e) {
        err << "config error: " << e.what() << '\n';
        return exit_code::kConfig;
    }

    const auto& best = result.best();
    out << "points=" << result.ranked.size() << " best_objective=" << fmt(best.objective);
    for (std::size_t k = 0; k < result.paths.size(); ++k) {
        out << ' ' << result.paths[k] << '=' << best.values[k].dump();
    }
    out << '\n';
    return exit_code::kOk;
}

int cmd_gen_weather(const GenWeatherOptions& opts, std::ostream& out, std::ostream& err) {
    WeatherSeries series;
    SyntheticWeatherParams p;
    try {
        p = preset_by_name(opts.preset);
        if (opts.peak_I) p.peak_I = *opts.peak_I;
        if (opts.sunrise_h) p.sunrise_h = *opts.sunrise_h;
        if (opts.sunset_h) p.sunset_h = *opts.sunset_h;
        if (opts.T_min) p.T_min = *opts.T_min;
        if (opts.T_max) p.T_max = *opts.T_max;
        if (opts.t_max_h) p.t_max_h = *opts.t_max_h;
        if (opts.V_w) p.V_w_mean = *opts.V_w;
        if (opts.rh_min) p.rh_min = *opts.rh_min;
        if (opts.rh_max) p.rh_max = *opts.rh_max;
        if (opts.interval_s) p.interval_s = *opts.interval_s;
        series = synthetic_days(opts.days, p);
    } catch (const Error& e) {
        err << "weather error: " << e.what() << '\n';
        return exit_code::kInput;
    }

    std::ostringstream params;
    params << "preset=" << opts.preset << " days=" << opts.days << " peak_I=" << fmt(p.peak_I)
           << " sunrise_h=" << fmt(p.sunrise_h) << " sunset_h=" << fmt(p.sunset_h)
           << " T_min=" << fmt(p.T_min) << " T_max=" << fmt(p.T_max) << " t_max_h=" << fmt(p.t_max_h)
           << " V_w=" << fmt(p.V_w_mean) << " rh_min=" << fmt(p.rh_min) << " rh_max=" << fmt(p.rh_max)
           << " interval_s=" << fmt(p.interval_s);
    const std::string hash = content_hash(std::string(kEngineVersion) + "\n" + params.str());

    try {
        const fs::path path(opts.out_path);
        if (path.has_parent_path()) ensure_dir(path.parent_path().string());
        auto file = open_output(path);
        write_weather_csv(file, series,
                          {std::string(kEngineVersion) + " input_hash=" + hash,
                           "synthetic weather: " + params.str()});
    } catch (const Error& e) {
        err << "weather error: " << e.what() << '\n';
        return exit_code::kInput;
    }
    out << "records=" << series.records.size() << " path=" << opts.out_path << '\n';
    return exit_code::kOk;
}

}  // namespace solardry::cli
