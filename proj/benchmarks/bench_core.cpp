#include "kempner/asymptotics.hpp"
#include "kempner/special_functions.hpp"

#include <benchmark/benchmark.h>

using namespace kempner;

static void BM_recurrence(benchmark::State& state) {
    auto d = DigitSet::make(3, {0, 2});
    const long m_max = state.range(0);
    const long bits = state.range(1);
    for (auto _ : state) {
        auto seq = moments_recurrence(d, Real(1), m_max, Precision{bits},
                                      Scaling::kappa_linear);
        benchmark::DoNotOptimize(seq.values.back());
    }
    state.SetItemsProcessed(state.iterations() * m_max * (m_max + 1) / 2);
}
BENCHMARK(BM_recurrence)->Args({1000, 128})->Args({1000, 192})->Args({4000, 128})
    ->Unit(benchmark::kMillisecond);

static void BM_profile_value(benchmark::State& state) {
    ProfileEvaluator ev{DigitSet::make(3, {0, 2}), Real(1), Real(1e-12)};
    PrecisionGuard g(192);
    Real m(9876.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(profile_value(ev, m));
}
BENCHMARK(BM_profile_value)->Unit(benchmark::kMicrosecond);

static void BM_zsum_enumerate(benchmark::State& state) {
    auto d = DigitSet::make(3, {0, 2});
    PrecisionGuard g(192);
    DirichletRequest req{d, Complex{Real(2), Real(-5.72)}, Real(1e-8),
                         ZsumMethod::enumerate, 10'000'000};
    for (auto _ : state) {
        auto cv = zsum_enumerate(req);
        benchmark::DoNotOptimize(cv.value.re);
        state.SetItemsProcessed(state.iterations() * cv.terms_used);
    }
}
BENCHMARK(BM_zsum_enumerate)->Unit(benchmark::kMillisecond);

static void BM_gamma_complex(benchmark::State& state) {
    PrecisionGuard g(192);
    Complex z{Real(2), Real(-17.2)};
    for (auto _ : state)
        benchmark::DoNotOptimize(gamma_complex(z, Precision{192}).re);
}
BENCHMARK(BM_gamma_complex)->Unit(benchmark::kMicrosecond);

static void BM_egf_scaled(benchmark::State& state) {
    auto d = DigitSet::make(8, {0, 1, 3, 5});
    PrecisionGuard g(192);
    Real m(5000.0);
    for (auto _ : state)
        benchmark::DoNotOptimize(egf_scaled(d, Real(1), m, Real(1e-30)));
}
BENCHMARK(BM_egf_scaled)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
