#include <benchmark/benchmark.h>

#include "kbiframe/kbiframe.hpp"

namespace {

using kbiframe::ComplexMatrix;

ComplexMatrix hermitian(std::size_t n) { return kbiframe::gen_hermitian({7, n, n}); }

void BM_HermEig(benchmark::State& state) {
    const auto a = hermitian(static_cast<std::size_t>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(kbiframe::herm_eig(a));
    }
}
BENCHMARK(BM_HermEig)->RangeMultiplier(2)->Range(4, 64);

void BM_Svd(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    kbiframe::Rng rng(11);
    const auto a = rng.ginibre(n + n / 2, n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kbiframe::svd(a));
    }
}
BENCHMARK(BM_Svd)->RangeMultiplier(2)->Range(4, 64);

void BM_PinvRankDeficient(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto a = kbiframe::gen_rank({13, n, n}, n / 2);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kbiframe::pinv(a));
    }
}
BENCHMARK(BM_PinvRankDeficient)->RangeMultiplier(2)->Range(4, 64);

void BM_KBiframeBounds(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const kbiframe::TrialSeed t{17, n, n + 2};
    const auto k = kbiframe::gen_rank(t, n - 1);
    const auto pair = kbiframe::gen_k_biframe(k, t);
    for (auto _ : state) {
        benchmark::DoNotOptimize(kbiframe::k_biframe_bounds(pair, k));
    }
}
BENCHMARK(BM_KBiframeBounds)->RangeMultiplier(2)->Range(4, 32);

} // namespace

BENCHMARK_MAIN();
