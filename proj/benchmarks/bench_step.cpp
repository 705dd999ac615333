// Per-iteration cost of dense RLS against SpAdSP-IRLS over L and s.

#include <benchmark/benchmark.h>

#include "spadsp/estimators.hpp"
#include "spadsp/signal_model.hpp"

namespace {

constexpr std::size_t kSamples = 4096;

void run_steps(benchmark::State& state, spadsp::Algorithm alg, std::size_t L, std::size_t s) {
    spadsp::EstimatorConfig cfg;
    cfg.L = L;
    cfg.s = s;
    const auto ch = spadsp::make_random_channel(L, 4, 1);
    const auto x = spadsp::generate_input(kSamples, 2);
    const auto q = spadsp::generate_noise(kSamples, 0.01, 2);
    std::vector<spadsp::ComplexVector> windows;
    std::vector<spadsp::Complex> y;
    spadsp::TapDelayLine line(L);
    for (std::size_t n = 0; n < kSamples; ++n) {
        windows.push_back(line.push(x.entries()[n]));
        y.push_back(spadsp::emit_received(ch, windows.back(), 0.0, q.entries()[n]));
    }
    spadsp::ChannelEstimator est(alg, cfg);
    std::size_t n = 0;
    for (auto _ : state) {
        auto out = est.step(windows[n], y[n]);
        benchmark::DoNotOptimize(out);
        if (++n == kSamples) {
            n = 0;
            state.PauseTiming();
            est = spadsp::ChannelEstimator(alg, cfg);
            state.ResumeTiming();
        }
    }
    state.counters["L"] = static_cast<double>(L);
    state.counters["s"] = static_cast<double>(s);
}

void BM_Rls(benchmark::State& state) {
    const auto L = static_cast<std::size_t>(state.range(0));
    run_steps(state, spadsp::Algorithm::kRls, L, L);
}

void BM_SpadspIrls(benchmark::State& state) {
    run_steps(state, spadsp::Algorithm::kSpadspIrls, static_cast<std::size_t>(state.range(0)),
              static_cast<std::size_t>(state.range(1)));
}

} // namespace

BENCHMARK(BM_Rls)->Arg(16)->Arg(32)->Arg(64)->Arg(128);
BENCHMARK(BM_SpadspIrls)->Args({64, 4})->Args({64, 12})->Args({64, 32})->Args({64, 64})->Args({128, 12});

BENCHMARK_MAIN();
