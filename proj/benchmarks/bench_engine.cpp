#include <benchmark/benchmark.h>

#include <random>

#include "solardry/config.hpp"
#include "solardry/linear.hpp"
#include "solardry/solver.hpp"
#include "solardry/weather.hpp"

namespace {

using namespace solardry;

DryerConfig baseline() { return load_config(SOLARDRY_SOURCE_DIR "/configs/baseline.json"); }

void BM_GaussJordan4(benchmark::State& state) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    LinearSystem sys(4);
    for (std::size_t r = 0; r < 4; ++r) {
        for (std::size_t c = 0; c < 4; ++c) sys.a(r, c) = u(rng) + (r == c ? 5.0 : 0.0);
        sys.b(r) = u(rng);
    }
    for (auto _ : state) benchmark::DoNotOptimize(gauss_jordan(sys));
}
BENCHMARK(BM_GaussJordan4);

void BM_Step(benchmark::State& state) {
    const auto cfg = baseline();
    const WeatherRecord noon{60.0, 900.0, 306.0, 1.0, 55.0};
    const auto s0 = initial_state(cfg, {0.0, 900.0, 306.0, 1.0, 55.0});
    for (auto _ : state) benchmark::DoNotOptimize(step(s0, noon, cfg));
}
BENCHMARK(BM_Step);

void BM_SimulateFiveDays(benchmark::State& state) {
    auto cfg = baseline();
    cfg.numerics.dt = static_cast<double>(state.range(0));
    const auto w = synthetic_days(5, tropical_preset());
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(cfg, w, {120.0 * 3600.0, std::nullopt}));
    }
    state.SetLabel("dt=" + std::to_string(state.range(0)) + "s");
}
BENCHMARK(BM_SimulateFiveDays)->Arg(15)->Arg(60)->Arg(240)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
