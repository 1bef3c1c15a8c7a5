#include <iostream>

#include <CLI11.hpp>

#include "cli.hpp"

int main(int argc, char** argv) {
    using namespace solardry::cli;

    CLI::App app{"Solar greenhouse tunnel dryer simulator"};
    app.set_version_flag("--version", kEngineVersion);
    app.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = app.add_subcommand("run", "Simulate a drying run and write states/diagnostics CSVs");
    run_cmd->add_option("--config", run.config_path, "Dryer config (JSON)")->required();
    auto* weather_opt = run_cmd->add_option("--weather", run.weather_path, "Weather CSV");
    run_cmd->add_option("--preset", run.preset, "Synthetic weather preset (default: tropical)")
        ->excludes(weather_opt);
    run_cmd->add_option("--days", run.days, "Days of synthetic weather");
    run_cmd->add_option("--out", run.out_dir, "Output directory");
    run_cmd->add_option("--dt", run.dt, "Time step, s");
    run_cmd->add_option("--horizon-h", run.horizon_h, "Simulated horizon, h");
    run_cmd->add_option("--target-mdb", run.target_mdb, "Stop at this moisture, decimal db");
    run_cmd->add_option("--set", run.overrides, "Config override <dotted.path>=<value> (repeatable)")
        ->allow_extra_args(false);

    ValidateOptions val;
    auto* val_cmd = app.add_subcommand("validate", "Compare a simulated trace with observations");
    val_cmd->add_option("--states", val.states_path, "states.csv from a run")->required();
    val_cmd->add_option("--observed", val.observed_path, "Observed CSV t_s,<variable>")->required();
    val_cmd->add_option("--variable", val.variable, "states.csv column to compare");
    val_cmd->add_option("--limit", val.limit, "Acceptance limit, %");

    SweepOptions sweep;
    auto* sweep_cmd = app.add_subcommand("sweep", "Exhaustive grid search over config parameters");
    sweep_cmd->add_option("--spec", sweep.spec_path, "Sweep spec (JSON)")->required();
    sweep_cmd->add_option("--out", sweep.out_dir, "Output directory");
    sweep_cmd->add_option("--threads", sweep.threads, "Worker threads (0: all cores)");

    GenWeatherOptions gen;
    auto* gen_cmd = app.add_subcommand("gen-weather", "Write a synthetic diurnal weather CSV");
    gen_cmd->add_option("--preset", gen.preset, "Preset name");
    gen_cmd->add_option("--days", gen.days, "Number of days");
    gen_cmd->add_option("--out", gen.out_path, "Output CSV path")->required();
    gen_cmd->add_option("--peak-i", gen.peak_I, "Noon irradiance, W/m2");
    gen_cmd->add_option("--sunrise-h", gen.sunrise_h, "Sunrise hour");
    gen_cmd->add_option("--sunset-h", gen.sunset_h, "Sunset hour");
    gen_cmd->add_option("--t-min-k", gen.T_min, "Minimum ambient temperature, K");
    gen_cmd->add_option("--t-max-k", gen.T_max, "Maximum ambient temperature, K");
    gen_cmd->add_option("--t-max-hour", gen.t_max_h, "Hour of the temperature peak");
    gen_cmd->add_option("--wind", gen.V_w, "Mean wind speed, m/s");
    gen_cmd->add_option("--rh-min", gen.rh_min, "Minimum ambient rh, %");
    gen_cmd->add_option("--rh-max", gen.rh_max, "Maximum ambient rh, %");
    gen_cmd->add_option("--interval-s", gen.interval_s, "Sampling interval, s");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (*run_cmd) return cmd_run(run, std::cout, std::cerr);
    if (*val_cmd) return cmd_validate(val, std::cout, std::cerr);
    if (*sweep_cmd) return cmd_sweep(sweep, std::cout, std::cerr);
    if (*gen_cmd) return cmd_gen_weather(gen, std::cout, std::cerr);
    return 1;
}
