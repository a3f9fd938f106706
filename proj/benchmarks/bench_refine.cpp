#include <benchmark/benchmark.h>

#include "tsrkit/convert.hpp"
#include "tsrkit/language.hpp"
#include "tsrkit/refine.hpp"
#include "tsrkit/testkit.hpp"

using namespace tsrkit;
namespace tk = tsrkit::testkit;

namespace {

// Complete response-free systems make the product exploration visit every
// state pair, which is the worst case for the rooted check.
Tsr complete_tsr(std::uint64_t seed, std::uint32_t states, std::uint32_t actions) {
    return tk::random_tsr(seed, {.states = states, .actions = actions, .density = 1.0,
                                 .response_rate = 0.0});
}

void product_refinement_check(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    Tsr t1 = complete_tsr(1, n, 8);
    Tsr t2 = complete_tsr(2, n, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_refinement(t1, t2).holds);
    }
    state.counters["pairs"] = static_cast<double>(n) * n;
}
BENCHMARK(product_refinement_check)->Arg(64)->Arg(256)->Arg(1000)->Unit(benchmark::kMillisecond);

void mutation_refinement_check(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    Tsr t1 = tk::random_tsr(3, {.states = n, .actions = 8, .density = 0.5, .response_rate = 0.2});
    Tsr t2 = tk::mutate_to_refinement(t1, 4);
    for (auto _ : state) {
        benchmark::DoNotOptimize(check_refinement(t1, t2).holds);
    }
}
BENCHMARK(mutation_refinement_check)->Arg(256)->Arg(1000)->Unit(benchmark::kMillisecond);

void fixpoint_oracle(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    Tsr t1 = tk::random_tsr(5, {.states = n, .actions = 3, .density = 0.5, .response_rate = 0.3});
    Tsr t2 = tk::mutate_to_refinement(t1, 6);
    for (auto _ : state) {
        benchmark::DoNotOptimize(greatest_refinement_relation(t1, t2, false).size());
    }
}
BENCHMARK(fixpoint_oracle)->Arg(8)->Arg(32)->Arg(64);

void language_inclusion(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    Tsr t1 = complete_tsr(7, n, 8);
    Tsr t2 = tk::mutate_to_refinement(t1, 8);
    for (auto _ : state) {
        benchmark::DoNotOptimize(includes(t1, t2).included);
    }
}
BENCHMARK(language_inclusion)->Arg(64)->Arg(256)->Arg(1000)->Unit(benchmark::kMillisecond);

void roundtrip_rm_mr(benchmark::State& state) {
    auto n = static_cast<std::uint32_t>(state.range(0));
    Tsr t = tk::random_tsr(9, {.states = n, .actions = 8, .density = 0.4, .response_rate = 0.5});
    for (auto _ : state) {
        benchmark::DoNotOptimize(mr(rm(t)).state_count());
    }
}
BENCHMARK(roundtrip_rm_mr)->Arg(64)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
