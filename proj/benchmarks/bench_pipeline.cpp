#include <benchmark/benchmark.h>

#include "mpair/decompose.hpp"
#include "mpair/minimize.hpp"
#include "mpair/modelgen.hpp"
#include "mpair/oracle.hpp"
#include "mpair/reduction.hpp"

using namespace mpair;

namespace {

MDifferential instance(std::size_t n, Field f) {
    for (std::uint64_t seed = 1;; ++seed) {
        const auto t = random_triple(seed, n, 3, 0.5, 0.3);
        if (t.size() != n) continue;
        try {
            return random_mdifferential(t, f, seed * 21, 0.4);
        } catch (const std::domain_error&) {
        }
    }
}

void bm_reduce_elementary(benchmark::State& state) {
    const auto d = instance(static_cast<std::size_t>(state.range(0)), Field::gf(2));
    for (auto _ : state) benchmark::DoNotOptimize(reduce_elementary(d));
}
BENCHMARK(bm_reduce_elementary)->Arg(8)->Arg(16)->Arg(32);

void bm_reduce_elementary_q(benchmark::State& state) {
    const auto d = instance(static_cast<std::size_t>(state.range(0)), Field::rationals());
    for (auto _ : state) benchmark::DoNotOptimize(reduce_elementary(d));
}
BENCHMARK(bm_reduce_elementary_q)->Arg(8)->Arg(16);

void bm_minimize(benchmark::State& state) {
    const auto d = instance(static_cast<std::size_t>(state.range(0)), Field::gf(2));
    for (auto _ : state) benchmark::DoNotOptimize(minimize(d));
}
BENCHMARK(bm_minimize)->Arg(8)->Arg(16);

void bm_canonical_form(benchmark::State& state) {
    const auto d = instance(static_cast<std::size_t>(state.range(0)), Field::gf(2));
    for (auto _ : state) benchmark::DoNotOptimize(canonical_form(d));
}
BENCHMARK(bm_canonical_form)->Arg(8)->Arg(16);

void bm_oracle_pairing(benchmark::State& state) {
    const auto d = instance(static_cast<std::size_t>(state.range(0)), Field::gf(2));
    for (auto _ : state) benchmark::DoNotOptimize(oracle::pairing_via_oracle(d));
}
BENCHMARK(bm_oracle_pairing)->Arg(8)->Arg(12);

} // namespace

BENCHMARK_MAIN();
