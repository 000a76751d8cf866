#include "tourcast/arima.hpp"
#include "tourcast/eval.hpp"
#include "tourcast/hybrid.hpp"
#include "tourcast/svr.hpp"
#include "tourcast/synth.hpp"

#include <benchmark/benchmark.h>

#include <vector>

using namespace tourcast;

namespace {

const io::DatasetBundle& bundle() {
    static const auto b = io::synth_dataset(7, 168);
    return b;
}

std::vector<TimeSeries> exog() { return {bundle().regressors.at("google_trend")}; }

void BM_ArimaFit(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(arima::fit(bundle().target, {3, 1, 0}));
}
BENCHMARK(BM_ArimaFit)->Unit(benchmark::kMillisecond);

void BM_SarimaxFit(benchmark::State& state) {
    const auto x = exog();
    for (auto _ : state) benchmark::DoNotOptimize(arima::fit(bundle().target, {3, 1, 0}, {1, 1, 0, 12}, x));
}
BENCHMARK(BM_SarimaxFit)->Unit(benchmark::kMillisecond);

void BM_SvrFit(benchmark::State& state) {
    const auto frame = make_supervised(bundle().target, 3);
    for (auto _ : state) benchmark::DoNotOptimize(svr::fit(frame, svr::SvrConfig{}));
}
BENCHMARK(BM_SvrFit)->Unit(benchmark::kMillisecond);

void BM_HybridFit(benchmark::State& state) {
    auto cfg = hybrid::HybridConfig::monthly_visitors();
    cfg.epochs = static_cast<std::size_t>(state.range(0));
    const auto x = exog();
    for (auto _ : state) benchmark::DoNotOptimize(hybrid::fit(cfg, bundle().target, x));
}
BENCHMARK(BM_HybridFit)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_Compare(benchmark::State& state) {
    const auto x = exog();
    const auto suite = eval::default_suite(0);
    for (auto _ : state) benchmark::DoNotOptimize(eval::compare(bundle().target, x, 12, suite));
}
BENCHMARK(BM_Compare)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
