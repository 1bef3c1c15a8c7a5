#pragma once

// Weather time series: CSV ingestion, linear interpolation, and a synthetic
// diurnal generator.
//
// CSV schema (exact header, UTF-8, comma separated, '#' lines ignored):
//
//     t_s,I_t_wm2,T_am_K,V_w_ms,rh_am_pct

#include <iosfwd>
#include <string>
#include <vector>

#include "solardry/types.hpp"

namespace solardry {

inline constexpr const char* kWeatherHeader = "t_s,I_t_wm2,T_am_K,V_w_ms,rh_am_pct";

struct WeatherSeries {
    std::vector<WeatherRecord> records;
    std::string source;
    double start_timestamp = 0.0;    // s, epoch of t = 0 when known
    double sampling_interval = 0.0;  // s, nominal; 0 if irregular

    [[nodiscard]] double t_begin() const { return records.front().t; }
    [[nodiscard]] double t_end() const { return records.back().t; }

    /// Throws InputError unless there are >= 2 valid, strictly increasing records.
    void validate() const;
};

WeatherSeries parse_weather_csv(std::istream& in, const std::string& source = "<stream>");
WeatherSeries load_csv(const std::string& path);

/// Writes header plus one row per record with round-trip precision.
/// Comment lines (without the leading '#') are emitted before the header.
void write_weather_csv(std::ostream& out, const WeatherSeries& series,
                       const std::vector<std::string>& comments = {});

/// Linear interpolation of every field; exact at records. Throws RangeError
/// when t lies outside [t_begin, t_end].
WeatherRecord sample(const WeatherSeries& series, double t);

struct SyntheticWeatherParams {
    double peak_I = 900.0;     // W m^-2 at solar noon
    double sunrise_h = 6.0;
    double sunset_h = 18.0;
    double T_min = 298.0;      // K, reached at sunrise
    double T_max = 308.0;      // K, reached at t_max_h
    double t_max_h = 14.0;     // hour of the daily temperature peak
    double V_w_mean = 1.0;     // m s^-1
    double rh_min = 50.0;      // %, at the temperature peak
    double rh_max = 85.0;      // %, at the temperature minimum
    double interval_s = 300.0; // sampling interval
};

/// Tropical preset used for calibration runs (explicitly synthetic).
SyntheticWeatherParams tropical_preset();

/// Throws ConfigError for a named preset that does not exist.
SyntheticWeatherParams preset_by_name(const std::string& name);

/// Irradiance is a half sine between sunrise and sunset, zero at night.
/// Ambient temperature follows a two-piece cosine: rising from T_min at
/// sunrise to T_max at t_max_h, then falling back to T_min at the next
/// sunrise. Relative humidity mirrors temperature linearly between rh_max
/// and rh_min. Records cover [0, 24 n_days] hours inclusive.
WeatherSeries synthetic_days(int n_days, const SyntheticWeatherParams& params);

// Pointwise profiles used by synthetic_days, exposed for tests.
double synthetic_irradiance(double hour_of_day, const SyntheticWeatherParams& params);
double synthetic_temperature(double hour_of_day, const SyntheticWeatherParams& params);

}  // namespace solardry
