#include <benchmark/benchmark.h>

#include <cmath>
#include <random>

#include "mvlab/backtest.hpp"

namespace {

mvlab::BacktestConfig desk_config(mvlab::StrategyId id) {
    mvlab::BacktestConfig cfg;
    cfg.grid = mvlab::TimeGrid{1.0, 252, 504};
    cfg.window = mvlab::EstimationWindow{252};
    cfg.prefs = mvlab::RiskPreferences{1.4, 0.02};
    cfg.strategy = mvlab::StrategyKind{id, 0.1};
    return cfg;
}

mvlab::MarketSpec heston_spec() {
    mvlab::MarketSpec spec;
    spec.risk_free = 0.02;
    spec.model = mvlab::HestonParams{8.5, 42.5, 0.01, 0.6, -0.7, 0.02};
    return spec;
}

}  // namespace

static void BM_RunBacktestSharedEstimates(benchmark::State& state) {
    const auto id = static_cast<mvlab::StrategyId>(state.range(0));
    const auto cfg = desk_config(id);
    const auto path = mvlab::simulate_heston_path(heston_spec(), cfg.grid, {3, 1});
    const mvlab::PathEstimates estimates(path, cfg.window, cfg.prefs.risk_free);
    for (auto _ : state) {
        benchmark::DoNotOptimize(mvlab::run_backtest(path, cfg, &estimates));
    }
}
BENCHMARK(BM_RunBacktestSharedEstimates)
    ->Arg(static_cast<int>(mvlab::StrategyId::qv))
    ->Arg(static_cast<int>(mvlab::StrategyId::mle))
    ->Arg(static_cast<int>(mvlab::StrategyId::hold))
    ->Arg(static_cast<int>(mvlab::StrategyId::oracle));

static void BM_CampaignPerPath(benchmark::State& state) {
    // the whole per-path pipeline: simulate, estimate, run all four policies
    const auto cfg = desk_config(mvlab::StrategyId::qv);
    const std::vector<mvlab::StrategyKind> strategies{
        {mvlab::StrategyId::qv, 0.1}, {mvlab::StrategyId::mle, 0.1},
        {mvlab::StrategyId::hold, 0.1}, {mvlab::StrategyId::oracle, 0.1}};
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            mvlab::monte_carlo_campaign(heston_spec(), cfg, 2, strategies, seed++));
    }
    state.SetItemsProcessed(state.iterations() * 2 * strategies.size());
}
BENCHMARK(BM_CampaignPerPath);

static void BM_RollingHorizons(benchmark::State& state) {
    const long steps = state.range(0);
    mvlab::PricePath series;
    series.grid = mvlab::TimeGrid{steps / 252.0, static_cast<int>(steps), 0};
    series.prices.resize(steps + 1);
    series.prices[0] = 100.0;
    std::mt19937_64 rng(12);
    std::normal_distribution<double> step(0.0002, 0.0063);
    for (long i = 0; i < steps; ++i)
        series.prices[i + 1] = series.prices[i] * std::exp(step(rng));

    const auto cfg = desk_config(mvlab::StrategyId::qv_or_hold);
    const std::vector<mvlab::StrategyKind> strategies{{mvlab::StrategyId::qv_or_hold, 0.1},
                                                      {mvlab::StrategyId::hold, 0.1}};
    for (auto _ : state) {
        benchmark::DoNotOptimize(mvlab::rolling_horizons(series, cfg, strategies));
    }
    state.SetItemsProcessed(state.iterations() *
                            mvlab::rolling_horizon_count(steps + 1, 504, 252));
}
BENCHMARK(BM_RollingHorizons)->Arg(1008)->Arg(2520);
