#include <benchmark/benchmark.h>

#include <numeric>

#include "fleet/baselines.hpp"
#include "fleet/exact.hpp"
#include "fleet/lns.hpp"
#include "fleet/scenarios.hpp"

using namespace fleet;

namespace {

Problem scenario(const std::string& name, std::size_t tasks) {
    ScenarioSpec spec = builtin_spec(name);
    spec.task_count = tasks;
    return generate(spec);
}

void BM_TravelSet(benchmark::State& state) {
    const Problem p = scenario(state.range(0) == 0 ? "exp1" : "exp3", 40);
    for (auto _ : state) {
        benchmark::DoNotOptimize(build_travel_set(p));
    }
}
BENCHMARK(BM_TravelSet)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_RepairFromEmpty(benchmark::State& state) {
    const Problem p = scenario("exp1", static_cast<std::size_t>(state.range(0)));
    const Fleet fleet = build_base_fleet(p);
    const TravelSet travel = build_travel_set(p);
    const SearchContext ctx(p, fleet, travel);
    std::vector<TaskId> all(p.task_count());
    std::iota(all.begin(), all.end(), 0);
    Rng rng(1);
    const LnsParams params;
    for (auto _ : state) {
        benchmark::DoNotOptimize(repair(ctx, Solution::empty_for(fleet), all, params, rng));
    }
}
BENCHMARK(BM_RepairFromEmpty)->Arg(20)->Arg(60)->Unit(benchmark::kMicrosecond);

void BM_LnsSolve(benchmark::State& state) {
    const Problem p = scenario("exp1", static_cast<std::size_t>(state.range(0)));
    LnsParams params;
    params.iterations = 1000;
    for (auto _ : state) {
        benchmark::DoNotOptimize(solve(p, params).best_reward);
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * params.iterations));
}
BENCHMARK(BM_LnsSolve)->Arg(20)->Arg(60)->Unit(benchmark::kMillisecond);

void BM_GreedyFleet(benchmark::State& state) {
    const Problem p = scenario("exp1", 20);
    LnsParams params;
    params.iterations = static_cast<std::size_t>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(greedy_fleet(p, params).result.reward);
    }
}
BENCHMARK(BM_GreedyFleet)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Oracle(benchmark::State& state) {
    ScenarioSpec spec = builtin_spec("exp1");
    spec.task_count = static_cast<std::size_t>(state.range(0));
    spec.budget = Money{45};
    const Problem p = generate(spec);
    for (auto _ : state) {
        benchmark::DoNotOptimize(brute_force(p).reward);
    }
}
BENCHMARK(BM_Oracle)->DenseRange(6, 10, 2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
