#include "solardry/weather.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "solardry/errors.hpp"

namespace solardry {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.push_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

constexpr std::array<const char*, 5> kColumns{"t_s", "I_t_wm2", "T_am_K", "V_w_ms", "rh_am_pct"};

std::string location(const std::string& source, std::size_t line) {
    return source + ":" + std::to_string(line);
}

}  // namespace

void WeatherSeries::validate() const {
    if (records.size() < 2) {
        throw InputError("weather series '" + source + "' needs at least 2 records, has " +
                         std::to_string(records.size()));
    }
    for (std::size_t i = 0; i < records.size(); ++i) {
        solardry::validate(records[i]);
        if (i > 0 && !(records[i].t > records[i - 1].t)) {
            throw InputError("weather series '" + source + "': t not strictly increasing at record " +
                             std::to_string(i));
        }
    }
}

WeatherSeries parse_weather_csv(std::istream& in, const std::string& source) {
    WeatherSeries series;
    series.source = source;

    std::string raw;
    std::size_t line_no = 0;
    std::array<std::size_t, 5> index{};
    std::size_t n_cells = 0;
    bool have_header = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        line = trim(line);
        if (line.empty() || line.front() == '#') continue;

        const auto cells = split(line);
        if (!have_header) {
            for (std::size_t k = 0; k < kColumns.size(); ++k) {
                const auto it = std::find(cells.begin(), cells.end(), kColumns[k]);
                if (it == cells.end()) {
                    throw MissingColumnError(location(source, line_no) + ": missing column '" +
                                                 kColumns[k] + "'",
                                             line_no, kColumns[k]);
                }
                index[k] = static_cast<std::size_t>(it - cells.begin());
            }
            n_cells = cells.size();
            have_header = true;
            continue;
        }

        if (cells.size() != n_cells) {
            throw InputError(location(source, line_no) + ": expected " + std::to_string(n_cells) +
                             " cells, found " + std::to_string(cells.size()));
        }
        std::array<double, 5> v{};
        for (std::size_t k = 0; k < kColumns.size(); ++k) {
            const std::string_view cell = cells[index[k]];
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v[k]);
            if (ec != std::errc() || ptr != cell.data() + cell.size() || cell.empty() ||
                !std::isfinite(v[k])) {
                throw NonNumericError(location(source, line_no) + ", column " + kColumns[k] +
                                          ": non-numeric value '" + std::string(cell) + "'",
                                      line_no, kColumns[k]);
            }
        }
        WeatherRecord rec{v[0], v[1], v[2], v[3], v[4]};
        auto bad = [&](const char* column) {
            throw InvariantViolationError(location(source, line_no) + ", column " + column +
                                              ": value violates its invariant",
                                          line_no, column);
        };
        if (rec.I_t < 0.0) bad("I_t_wm2");
        if (!(rec.T_am > 0.0)) bad("T_am_K");
        if (rec.V_w < 0.0) bad("V_w_ms");
        if (rec.rh_am < 0.0 || rec.rh_am > 100.0) bad("rh_am_pct");
        if (!series.records.empty() && !(rec.t > series.records.back().t)) {
            throw OrderingError(location(source, line_no) + ": t_s = " +
                                    std::string(cells[index[0]]) + " is not strictly increasing",
                                line_no, "t_s");
        }
        series.records.push_back(rec);
    }
    if (!have_header) throw InputError(source + ": missing header '" + kWeatherHeader + "'");
    if (series.records.size() >= 2) {
        const double first = series.records[1].t - series.records[0].t;
        bool regular = true;
        for (std::size_t i = 2; i < series.records.size() && regular; ++i) {
            const double d = series.records[i].t - series.records[i - 1].t;
            regular = std::abs(d - first) <= 1e-9 * std::max(1.0, first);
        }
        series.sampling_interval = regular ? first : 0.0;
    }
    series.validate();
    return series;
}

WeatherSeries load_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("weather: cannot open '" + path + "'");
    return parse_weather_csv(in, path);
}

void write_weather_csv(std::ostream& out, const WeatherSeries& series,
                       const std::vector<std::string>& comments) {
    for (const auto& c : comments) out << "# " << c << '\n';
    out << kWeatherHeader << '\n';
    char buf[160];
    for (const auto& r : series.records) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r.t, r.I_t, r.T_am,
                      r.V_w, r.rh_am);
        out << buf;
    }
}

WeatherRecord sample(const WeatherSeries& series, double t) {
    const auto& recs = series.records;
    if (recs.empty() || !(t >= recs.front().t) || !(t <= recs.back().t)) {
        throw RangeError("weather sample: t = " + std::to_string(t) + " s outside series span");
    }
    const auto hi = std::lower_bound(recs.begin(), recs.end(), t,
                                     [](const WeatherRecord& r, double v) { return r.t < v; });
    if (hi->t == t) return *hi;
    const auto lo = hi - 1;
    const double w = (t - lo->t) / (hi->t - lo->t);
    auto mix = [w](double a, double b) { return a + (b - a) * w; };
    return WeatherRecord{t, mix(lo->I_t, hi->I_t), mix(lo->T_am, hi->T_am), mix(lo->V_w, hi->V_w),
                         mix(lo->rh_am, hi->rh_am)};
}

SyntheticWeatherParams tropical_preset() { return SyntheticWeatherParams{}; }

SyntheticWeatherParams preset_by_name(const std::string& name) {
    if (name == "tropical") return tropical_preset();
    throw ConfigError("unknown weather preset '" + name + "' (available: tropical)");
}

namespace {

void validate_params(int n_days, const SyntheticWeatherParams& p) {
    auto fail = [](const std::string& what) { throw ConfigError("synthetic weather: " + what); };
    if (n_days < 1) fail("n_days must be >= 1");
    if (!(p.sunrise_h >= 0.0 && p.sunset_h <= 24.0 && p.sunrise_h < p.sunset_h)) {
        fail("need 0 <= sunrise < sunset <= 24 hours");
    }
    if (!(p.t_max_h > p.sunrise_h && p.t_max_h < p.sunrise_h + 24.0)) {
        fail("temperature peak hour must follow sunrise within one day");
    }
    if (!(p.peak_I >= 0.0)) fail("peak_I must be >= 0");
    if (!(p.T_min > 0.0 && p.T_max >= p.T_min)) fail("need 0 < T_min <= T_max");
    if (!(p.V_w_mean >= 0.0)) fail("V_w_mean must be >= 0");
    if (!(p.rh_min >= 0.0 && p.rh_max <= 100.0 && p.rh_min <= p.rh_max)) {
        fail("need 0 <= rh_min <= rh_max <= 100");
    }
    if (!(p.interval_s > 0.0)) fail("interval must be > 0");
}

double wrap_day(double hour) {
    const double h = std::fmod(hour, 24.0);
    return h < 0.0 ? h + 24.0 : h;
}

}  // namespace

double synthetic_irradiance(double hour_of_day, const SyntheticWeatherParams& p) {
    const double h = wrap_day(hour_of_day);
    if (h <= p.sunrise_h || h >= p.sunset_h) return 0.0;
    const double phase = std::numbers::pi * (h - p.sunrise_h) / (p.sunset_h - p.sunrise_h);
    return std::max(0.0, p.peak_I * std::sin(phase));
}

double synthetic_temperature(double hour_of_day, const SyntheticWeatherParams& p) {
    const double mid = 0.5 * (p.T_min + p.T_max);
    const double amp = 0.5 * (p.T_max - p.T_min);
    const double rise = p.t_max_h - p.sunrise_h;
    const double since_sunrise = wrap_day(hour_of_day - p.sunrise_h);
    if (since_sunrise <= rise) {
        return mid - amp * std::cos(std::numbers::pi * since_sunrise / rise);
    }
    return mid + amp * std::cos(std::numbers::pi * (since_sunrise - rise) / (24.0 - rise));
}

WeatherSeries synthetic_days(int n_days, const SyntheticWeatherParams& p) {
    validate_params(n_days, p);
    WeatherSeries series;
    series.source = "synthetic";
    series.sampling_interval = p.interval_s;

    const double horizon = 86400.0 * n_days;
    const auto n = static_cast<std::size_t>(std::floor(horizon / p.interval_s + 1e-9));
    series.records.reserve(n + 2);
    for (std::size_t k = 0; k <= n; ++k) {
        series.records.push_back({static_cast<double>(k) * p.interval_s, 0, 0, 0, 0});
    }
    if (series.records.back().t < horizon - 1e-9) {
        series.records.push_back({horizon, 0, 0, 0, 0});
        series.sampling_interval = 0.0;
    }
    for (auto& r : series.records) {
        const double hour = r.t / 3600.0;
        r.I_t = synthetic_irradiance(hour, p);
        r.T_am = synthetic_temperature(hour, p);
        r.V_w = p.V_w_mean;
        const double w = p.T_max > p.T_min ? (r.T_am - p.T_min) / (p.T_max - p.T_min) : 0.0;
        r.rh_am = std::clamp(p.rh_max - (p.rh_max - p.rh_min) * w, 0.0, 100.0);
    }
    series.validate();
    return series;
}

}  // namespace solardry
