#include <benchmark/benchmark.h>

#include "mvlab/estimators.hpp"
#include "mvlab/market.hpp"

namespace {

const mvlab::TimeGrid kGrid{1.0, 252, 504};

mvlab::MarketSpec gbm_spec() {
    mvlab::MarketSpec spec;
    spec.risk_free = 0.02;
    spec.model = mvlab::GbmParams{0.1, 0.1};
    return spec;
}

mvlab::MarketSpec heston_spec() {
    mvlab::MarketSpec spec;
    spec.risk_free = 0.02;
    spec.model = mvlab::HestonParams{8.5, 42.5, 0.01, 0.6, -0.7, 0.02};
    return spec;
}

}  // namespace

static void BM_SimulateGbmPath(benchmark::State& state) {
    const auto spec = gbm_spec();
    std::uint64_t p = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mvlab::simulate_gbm_path(spec, kGrid, {1, p++}));
    }
    state.SetItemsProcessed(state.iterations() * kGrid.total_points());
}
BENCHMARK(BM_SimulateGbmPath);

static void BM_SimulateHestonPath(benchmark::State& state) {
    const auto spec = heston_spec();
    std::uint64_t p = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mvlab::simulate_heston_path(spec, kGrid, {1, p++}));
    }
    state.SetItemsProcessed(state.iterations() * kGrid.total_points());
}
BENCHMARK(BM_SimulateHestonPath);

static void BM_PathEstimates(benchmark::State& state) {
    const auto path = mvlab::simulate_heston_path(heston_spec(), kGrid, {1, 0});
    const mvlab::EstimationWindow window{252};
    for (auto _ : state) {
        mvlab::PathEstimates estimates(path, window, 0.02);
        benchmark::DoNotOptimize(estimates.k_hat(126));
    }
}
BENCHMARK(BM_PathEstimates);

static void BM_EstimateApStandalone(benchmark::State& state) {
    const auto path = mvlab::simulate_heston_path(heston_spec(), kGrid, {1, 0});
    const mvlab::EstimationWindow window{252};
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            mvlab::estimate_ap(path, static_cast<int>(state.range(0)), window, 0.02));
    }
}
BENCHMARK(BM_EstimateApStandalone)->Arg(0)->Arg(126)->Arg(251);

BENCHMARK_MAIN();
