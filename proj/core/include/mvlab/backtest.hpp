#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mvlab/market.hpp"
#include "mvlab/metrics.hpp"
#include "mvlab/strategies.hpp"

namespace mvlab {

struct BacktestConfig {
    TimeGrid grid;              // horizon layout, burn-in included
    EstimationWindow window;
    RiskPreferences prefs;
    StrategyKind strategy;
    double initial_wealth = 1.0;
    bool signed_premium = true;  // carry sign(mu_hat - r) into the sqrt(a_hat) factor
    double sigma_floor = kSigmaFloor;

    void validate() const;
};

// One trading instant: the estimates the strategy saw and the position it set.
struct LedgerRow {
    int index = 0;
    double time = 0.0;
    double wealth = 0.0;
    double position = 0.0;
    double risky_weight = 0.0;
    double mu_hat = 0.0;
    double sigma_hat = 0.0;
    double k_hat = 0.0;
    double a_hat = 0.0;
    bool clamped = false;
};

struct WealthLedger {
    StrategyId strategy = StrategyId::qv;
    std::vector<LedgerRow> rows;    // t_0 .. t_{N-1}
    std::vector<double> wealth;     // t_0 .. t_N
    bool trade_free = false;
    std::uint64_t price_checksum = 0;

    double terminal_wealth() const { return wealth.back(); }
    double simple_return(double w0) const { return (wealth.back() - w0) / w0; }

    // Mean of the current-profitability estimates the strategy consumed
    // (NaN for buy-and-hold, which estimates nothing).
    double mean_cp() const;
};

// Self-financing wealth recursion over one step.
double wealth_step(double wealth, double position, double s_now, double s_next);

std::uint64_t price_checksum(const PricePath& path);

// Step through the grid: estimate, set the position, roll wealth forward.
// Estimation at t_k sees prices up to and including t_k only. A prebuilt
// estimate cache may be shared across strategies running on the same path.
WealthLedger run_backtest(const PricePath& path, const BacktestConfig& cfg,
                          const PathEstimates* shared_estimates = nullptr);

double ledger_turnover(const WealthLedger& ledger, const PricePath& path);

// One (path-or-start, strategy) row of a campaign.
struct PathOutcome {
    long unit = 0;  // path index, or start offset for rolling horizons
    StrategyId strategy = StrategyId::qv;
    double terminal_wealth = 0.0;
    double simple_return = 0.0;
    double turnover = 0.0;
    double mean_cp = 0.0;
    std::uint64_t price_checksum = 0;
};

struct StrategyMetrics {
    StrategyId strategy = StrategyId::qv;
    long n = 0;
    double ceq = 0.0;
    bool ceq_defined = true;
    double sharpe = 0.0;
    bool sharpe_defined = true;
    double mean_turnover = 0.0;
    double mean_return = 0.0;
};

struct CampaignResult {
    std::vector<StrategyId> strategies;
    std::vector<PathOutcome> outcomes;              // ordered by (unit, strategy)
    std::vector<std::vector<double>> returns;       // per strategy, ordered by unit
    std::vector<StrategyMetrics> summaries;

    const std::vector<double>& returns_of(StrategyId id) const;
    const StrategyMetrics& metrics_of(StrategyId id) const;
};

// Feed identical simulated price paths to every strategy (paired comparison);
// deterministic given the master seed. Cross-path metrics that need at least
// two observations flag themselves undefined on a single-path run.
CampaignResult monte_carlo_campaign(const MarketSpec& spec, const BacktestConfig& cfg,
                                    long n_paths, std::span<const StrategyKind> strategies,
                                    std::uint64_t master_seed);

// One backtest per admissible start of a long price series, advancing the
// start one trading day at a time; wealth resets at each horizon start.
CampaignResult rolling_horizons(const PricePath& path, const BacktestConfig& cfg,
                                std::span<const StrategyKind> strategies);

// Number of admissible one-year starts in a series of `n_prices` closes.
long rolling_horizon_count(long n_prices, int burn_in_steps, int horizon_steps);

}  // namespace mvlab
