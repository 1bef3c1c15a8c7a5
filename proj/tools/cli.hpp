#pragma once

// Subcommand implementations behind the solardry executable. Each returns the
// process exit code and writes its one-line diagnostics to err.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace solardry::cli {

inline constexpr const char* kEngineVersion = "solardry 1.0.0";

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kConfig = 1;     // run: configuration error; validate: acceptance failed
inline constexpr int kFailed = 1;
inline constexpr int kInput = 2;      // weather / observed data / grid problems
inline constexpr int kNumerical = 3;
}  // namespace exit_code

struct RunOptions {
    std::string config_path;
    std::optional<std::string> weather_path;
    std::optional<std::string> preset;
    std::optional<int> days;          // preset length; default covers the horizon
    std::string out_dir = ".";
    std::optional<double> dt;
    std::optional<double> horizon_h;  // default: whole weather span
    std::optional<double> target_mdb; // stop once M_p reaches it
    std::vector<std::string> overrides;
};

struct ValidateOptions {
    std::string states_path;
    std::string observed_path;
    std::optional<std::string> variable;  // default: observed column name
    double limit = 10.0;
};

struct SweepOptions {
    std::string spec_path;
    std::string out_dir = ".";
    std::optional<unsigned> threads;
};

struct GenWeatherOptions {
    std::string preset = "tropical";
    int days = 3;
    std::string out_path;
    std::optional<double> peak_I;
    std::optional<double> sunrise_h;
    std::optional<double> sunset_h;
    std::optional<double> T_min;
    std::optional<double> T_max;
    std::optional<double> t_max_h;
    std::optional<double> V_w;
    std::optional<double> rh_min;
    std::optional<double> rh_max;
    std::optional<double> interval_s;
};

int cmd_run(const RunOptions& opts, std::ostream& out, std::ostream& err);
int cmd_validate(const ValidateOptions& opts, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opts, std::ostream& out, std::ostream& err);
int cmd_gen_weather(const GenWeatherOptions& opts, std::ostream& out, std::ostream& err);

/// FNV-1a 64-bit, rendered as 16 lowercase hex digits.
std::string content_hash(const std::string& bytes);

/// Comma-separated table with '#' comment lines, as written by cmd_run.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Column index, or nullopt if absent.
    [[nodiscard]] std::optional<std::size_t> column(const std::string& name) const;
};

CsvTable read_csv_table(const std::string& path);

}  // namespace solardry::cli
