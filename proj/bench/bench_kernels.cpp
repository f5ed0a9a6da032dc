// Serial reference kernels against their OpenMP counterparts.

#include "dapps/exhaustive.hpp"
#include "dapps/scenario.hpp"
#include "dapps/sweep.hpp"
#include "fixtures.hpp"

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

using namespace dapps;

namespace {

const std::string kScenarios = std::string(DAPPS_SOURCE_DIR) + "/scenarios/";

// The largest of 200 random uncapped instances with up to eight tasks.
PlacementProblem dense_problem() {
    fixtures::Generator g(17);
    fixtures::InstanceShape shape{8, 6, true, false};
    PlacementProblem best;
    std::size_t most = 0;
    for (int i = 0; i < 200; ++i) {
        auto in = g.instance(shape);
        auto p = prepare_placement(in.intent, in.topology, in.catalog, std::nullopt);
        if (!p.infeasible_tasks.empty()) continue;
        std::size_t combos = 1;
        for (const auto& o : p.options) combos *= o.size();
        if (combos > most) {
            most = combos;
            best = std::move(p);
        }
    }
    return best;
}

void BM_ExhaustiveSerial(benchmark::State& state) {
    const auto p = dense_problem();
    for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search_serial(p));
}
void BM_ExhaustiveParallel(benchmark::State& state) {
    const auto p = dense_problem();
    for (auto _ : state) benchmark::DoNotOptimize(exhaustive_search_parallel(p));
}

std::vector<double> app_counts() {
    std::vector<double> v;
    for (int n = 1; n <= 12; ++n) v.push_back(n);
    return v;
}

void BM_SweepSerial(benchmark::State& state) {
    const auto s = load_scenario(kScenarios + "fig4_twelve_apps.scenario");
    const auto values = app_counts();
    for (auto _ : state) benchmark::DoNotOptimize(sweep_serial(s, SweepAxis::AppCount, values));
}
void BM_SweepParallel(benchmark::State& state) {
    const auto s = load_scenario(kScenarios + "fig4_twelve_apps.scenario");
    const auto values = app_counts();
    for (auto _ : state) benchmark::DoNotOptimize(sweep_parallel(s, SweepAxis::AppCount, values));
}

void BM_Fig4Serial(benchmark::State& state) {
    const auto s = load_scenario(kScenarios + "fig4_twelve_apps.scenario");
    for (auto _ : state) benchmark::DoNotOptimize(fig4_table_serial(s));
}
void BM_Fig4Parallel(benchmark::State& state) {
    const auto s = load_scenario(kScenarios + "fig4_twelve_apps.scenario");
    for (auto _ : state) benchmark::DoNotOptimize(fig4_table_parallel(s));
}

} // namespace

BENCHMARK(BM_ExhaustiveSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ExhaustiveParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SweepParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Fig4Serial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Fig4Parallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
