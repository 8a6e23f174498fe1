#include "mvlab/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <string>

#include "mvlab/stats.hpp"

namespace mvlab {

void BacktestConfig::validate() const {
    grid.validate();
    prefs.validate();
    strategy.validate();
    if (!(initial_wealth > 0.0))
        throw invalid_spec_error("BacktestConfig: initial wealth must be positive");
    const bool needs_estimates = strategy.id == StrategyId::qv || strategy.id == StrategyId::mle ||
                                 strategy.id == StrategyId::qv_or_hold;
    if (needs_estimates && grid.burn_in_steps < window.m + grid.steps)
        throw window_error("BacktestConfig: estimation plus mirror window need " +
                           std::to_string(window.m + grid.steps) + " burn-in steps, grid has " +
                           std::to_string(grid.burn_in_steps));
}

double WealthLedger::mean_cp() const {
    if (rows.empty() || strategy == StrategyId::hold)
        return std::numeric_limits<double>::quiet_NaN();
    double total = 0.0;
    for (const auto& row : rows)
        total += row.a_hat;
    return total / static_cast<double>(rows.size());
}

double wealth_step(double wealth, double position, double s_now, double s_next) {
    if (!(s_now > 0.0))
        throw data_error("wealth_step: non-positive price");
    return wealth + position * (s_next - s_now) / s_now;
}

std::uint64_t price_checksum(const PricePath& path) {
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (double p : path.prices) {
        std::uint64_t bits;
        std::memcpy(&bits, &p, sizeof(bits));
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    }
    return h;
}

namespace {

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

double oracle_horizon_profitability(const PricePath& path, double risk_free) {
    // trapezoid of the squared true premium over [0, T]
    const int n = path.grid.steps;
    const double dt = path.grid.dt();
    double integral = 0.0;
    auto premium_sq = [&](int k) {
        const double p = (path.truth_mu(k) - risk_free) / path.truth_sigma(k);
        return p * p;
    };
    for (int k = 0; k < n; ++k)
        integral += 0.5 * (premium_sq(k) + premium_sq(k + 1)) * dt;
    return integral / path.grid.horizon_years;
}

}  // namespace

WealthLedger run_backtest(const PricePath& path, const BacktestConfig& cfg,
                          const PathEstimates* shared_estimates) {
    cfg.validate();
    if (path.grid.steps != cfg.grid.steps || path.grid.burn_in_steps < cfg.grid.burn_in_steps)
        throw invalid_spec_error("run_backtest: path does not cover the configured grid");

    const StrategyId id = cfg.strategy.id;
    const bool needs_estimates =
        id == StrategyId::qv || id == StrategyId::mle || id == StrategyId::qv_or_hold;
    const bool needs_truth = id == StrategyId::oracle;
    if (needs_truth && !path.has_truth())
        throw invalid_spec_error("run_backtest: oracle strategy needs truth coefficients");

    std::optional<PathEstimates> own;
    const PathEstimates* estimates = shared_estimates;
    if (needs_estimates && estimates == nullptr) {
        own.emplace(path, cfg.window, cfg.prefs.risk_free, AuxSource::estimated, cfg.sigma_floor);
        estimates = &*own;
    }

    const int n = cfg.grid.steps;
    const double horizon = cfg.grid.horizon_years;
    const double r = cfg.prefs.risk_free;
    const double oracle_k = needs_truth ? oracle_horizon_profitability(path, r) : 0.0;

    WealthLedger ledger;
    ledger.strategy = id;
    ledger.trade_free = id == StrategyId::hold;
    ledger.price_checksum = price_checksum(path);
    ledger.rows.reserve(static_cast<std::size_t>(n));
    ledger.wealth.reserve(static_cast<std::size_t>(n) + 1);
    ledger.wealth.push_back(cfg.initial_wealth);

    double wealth = cfg.initial_wealth;
    for (int k = 0; k < n; ++k) {
        const PortfolioState state{wealth, cfg.initial_wealth, cfg.grid.time_at(k)};
        LedgerRow row;
        row.index = k;
        row.time = state.time;
        row.wealth = wealth;

        switch (id) {
            case StrategyId::qv: {
                const ParamEstimate& est = estimates->at(k);
                const double k_hat = estimates->k_hat(k);
                const double a_hat = estimate_cp(k_hat);
                const double sign = cfg.signed_premium ? sign_of(est.mu_hat - r) : 1.0;
                row.position = theta_precommit(state, k_hat, a_hat, est.sigma_hat, sign, cfg.prefs,
                                               horizon, cfg.sigma_floor, &row.clamped);
                row.mu_hat = est.mu_hat;
                row.sigma_hat = est.sigma_hat;
                row.k_hat = k_hat;
                row.a_hat = a_hat;
                break;
            }
            case StrategyId::mle: {
                const ParamEstimate& est = estimates->at(k);
                row.position = theta_strategy_mle(state, est, cfg.prefs, horizon, cfg.sigma_floor,
                                                  &row.clamped);
                const double sigma_eff = std::max(est.sigma_hat, cfg.sigma_floor);
                const double premium = (est.mu_hat - r) / sigma_eff;
                row.mu_hat = est.mu_hat;
                row.sigma_hat = est.sigma_hat;
                row.k_hat = premium * premium;
                row.a_hat = premium * premium;
                break;
            }
            case StrategyId::hold: {
                row.position = theta_buy_and_hold(state);
                row.mu_hat = row.sigma_hat = row.k_hat = row.a_hat =
                    std::numeric_limits<double>::quiet_NaN();
                break;
            }
            case StrategyId::oracle: {
                const double sigma_true = path.truth_sigma(k);
                const double premium = (path.truth_mu(k) - r) / sigma_true;
                const double a_true = premium * premium;
                const double sign = cfg.signed_premium ? sign_of(path.truth_mu(k) - r) : 1.0;
                row.position = theta_precommit(state, oracle_k, a_true, sigma_true, sign,
                                               cfg.prefs, horizon, cfg.sigma_floor, &row.clamped);
                row.mu_hat = path.truth_mu(k);
                row.sigma_hat = sigma_true;
                row.k_hat = oracle_k;
                row.a_hat = a_true;
                break;
            }
            case StrategyId::qv_or_hold: {
                const ParamEstimate& est = estimates->at(k);
                const double k_hat = estimates->k_hat(k);
                const double a_hat = estimate_cp(k_hat);
                const double sign = cfg.signed_premium ? sign_of(est.mu_hat - r) : 1.0;
                bool clamped = false;
                const double theta_qv = theta_precommit(state, k_hat, a_hat, est.sigma_hat, sign,
                                                        cfg.prefs, horizon, cfg.sigma_floor,
                                                        &clamped);
                row.position = theta_combined(est, theta_qv, theta_buy_and_hold(state),
                                              cfg.strategy.sigma_threshold);
                row.clamped = clamped && row.position == theta_qv;
                row.mu_hat = est.mu_hat;
                row.sigma_hat = est.sigma_hat;
                row.k_hat = k_hat;
                row.a_hat = a_hat;
                break;
            }
        }

        row.risky_weight = wealth != 0.0 ? row.position / wealth
                                         : std::numeric_limits<double>::quiet_NaN();
        ledger.rows.push_back(row);
        wealth = wealth_step(wealth, row.position, path.price(k), path.price(k + 1));
        ledger.wealth.push_back(wealth);
    }
    return ledger;
}

double ledger_turnover(const WealthLedger& ledger, const PricePath& path) {
    std::vector<double> positions;
    positions.reserve(ledger.rows.size());
    for (const auto& row : ledger.rows)
        positions.push_back(row.position);
    std::vector<double> prices;
    prices.reserve(ledger.wealth.size());
    for (int k = 0; k <= path.grid.steps; ++k)
        prices.push_back(path.price(k));
    return turnover(positions, ledger.wealth, prices, ledger.trade_free);
}

const std::vector<double>& CampaignResult::returns_of(StrategyId id) const {
    for (std::size_t i = 0; i < strategies.size(); ++i)
        if (strategies[i] == id)
            return returns[i];
    throw invalid_spec_error("CampaignResult: strategy not part of the campaign");
}

const StrategyMetrics& CampaignResult::metrics_of(StrategyId id) const {
    for (const auto& s : summaries)
        if (s.strategy == id)
            return s;
    throw invalid_spec_error("CampaignResult: strategy not part of the campaign");
}

namespace {

CampaignResult summarize(std::vector<StrategyId> ids, std::vector<PathOutcome> outcomes,
                         std::vector<std::vector<double>> returns,
                         std::vector<std::vector<double>> turnovers, const RiskPreferences& prefs) {
    CampaignResult result;
    result.strategies = std::move(ids);
    result.outcomes = std::move(outcomes);
    result.returns = std::move(returns);
    for (std::size_t i = 0; i < result.strategies.size(); ++i) {
        StrategyMetrics m;
        m.strategy = result.strategies[i];
        m.n = static_cast<long>(result.returns[i].size());
        ReturnSample sample{result.returns[i], prefs.risk_free, prefs.gamma};
        try {
            m.ceq = ceq(sample);
        } catch (const metric_error&) {
            m.ceq = std::numeric_limits<double>::quiet_NaN();
            m.ceq_defined = false;
        }
        m.mean_return = stats::mean(result.returns[i]);
        try {
            m.sharpe = sharpe(sample);
        } catch (const metric_error&) {
            m.sharpe = std::numeric_limits<double>::quiet_NaN();
            m.sharpe_defined = false;
        }
        m.mean_turnover = stats::mean(turnovers[i]);
        result.summaries.push_back(m);
    }
    return result;
}

}  // namespace

CampaignResult monte_carlo_campaign(const MarketSpec& spec, const BacktestConfig& cfg,
                                    long n_paths, std::span<const StrategyKind> strategies,
                                    std::uint64_t master_seed) {
    if (n_paths < 1)
        throw invalid_spec_error("monte_carlo_campaign: need at least one path");
    if (strategies.empty())
        throw invalid_spec_error("monte_carlo_campaign: need at least one strategy");

    bool any_estimates = false;
    std::vector<StrategyId> ids;
    for (const auto& s : strategies) {
        BacktestConfig probe = cfg;
        probe.strategy = s;
        probe.validate();
        ids.push_back(s.id);
        any_estimates |= s.id == StrategyId::qv || s.id == StrategyId::mle ||
                         s.id == StrategyId::qv_or_hold;
    }

    std::vector<PathOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(n_paths) * strategies.size());
    std::vector<std::vector<double>> returns(strategies.size());
    std::vector<std::vector<double>> turnovers(strategies.size());

    for (long p = 0; p < n_paths; ++p) {
        const PricePath path =
            simulate_path(spec, cfg.grid, {master_seed, static_cast<std::uint64_t>(p)});
        std::optional<PathEstimates> estimates;
        if (any_estimates)
            estimates.emplace(path, cfg.window, cfg.prefs.risk_free, AuxSource::estimated,
                              cfg.sigma_floor);

        std::uint64_t checksum = 0;
        for (std::size_t s = 0; s < strategies.size(); ++s) {
            BacktestConfig run_cfg = cfg;
            run_cfg.strategy = strategies[s];
            const WealthLedger ledger =
                run_backtest(path, run_cfg, estimates ? &*estimates : nullptr);
            if (s == 0)
                checksum = ledger.price_checksum;
            else if (ledger.price_checksum != checksum)
                throw data_error("monte_carlo_campaign: paired-path discipline violated");

            PathOutcome out;
            out.unit = p;
            out.strategy = strategies[s].id;
            out.terminal_wealth = ledger.terminal_wealth();
            out.simple_return = ledger.simple_return(cfg.initial_wealth);
            out.turnover = ledger_turnover(ledger, path);
            out.mean_cp = ledger.mean_cp();
            out.price_checksum = ledger.price_checksum;
            outcomes.push_back(out);
            returns[s].push_back(out.simple_return);
            turnovers[s].push_back(out.turnover);
        }
    }
    return summarize(std::move(ids), std::move(outcomes), std::move(returns),
                     std::move(turnovers), cfg.prefs);
}

long rolling_horizon_count(long n_prices, int burn_in_steps, int horizon_steps) {
    return n_prices - 1 - burn_in_steps - horizon_steps + 1;
}

CampaignResult rolling_horizons(const PricePath& path, const BacktestConfig& cfg,
                                std::span<const StrategyKind> strategies) {
    if (strategies.empty())
        throw invalid_spec_error("rolling_horizons: need at least one strategy");
    const int burn = cfg.grid.burn_in_steps;
    const int n = cfg.grid.steps;
    const long total = static_cast<long>(path.prices.size());
    const long horizons = rolling_horizon_count(total, burn, n);
    if (horizons < 1)
        throw data_error("rolling_horizons: series too short, need at least " +
                         std::to_string(burn + n + 1) + " prices, got " + std::to_string(total));
    if (std::abs(path.grid.dt() - cfg.grid.dt()) > 1e-12)
        throw invalid_spec_error("rolling_horizons: series spacing differs from the horizon grid");

    std::vector<StrategyId> ids;
    for (const auto& s : strategies)
        ids.push_back(s.id);

    std::vector<PathOutcome> outcomes;
    outcomes.reserve(static_cast<std::size_t>(horizons) * strategies.size());
    std::vector<std::vector<double>> returns(strategies.size());
    std::vector<std::vector<double>> turnovers(strategies.size());

    const bool any_estimates =
        std::any_of(strategies.begin(), strategies.end(), [](const StrategyKind& s) {
            return s.id == StrategyId::qv || s.id == StrategyId::mle ||
                   s.id == StrategyId::qv_or_hold;
        });
    const bool has_truth = path.has_truth();

    for (long start = burn; start + n < total; ++start) {
        PricePath slice;
        slice.grid = cfg.grid;
        const auto lo = static_cast<std::size_t>(start - burn);
        const auto hi = static_cast<std::size_t>(start + n) + 1;
        slice.prices.assign(path.prices.begin() + static_cast<long>(lo),
                            path.prices.begin() + static_cast<long>(hi));
        if (has_truth) {
            slice.true_mu.assign(path.true_mu.begin() + static_cast<long>(lo),
                                 path.true_mu.begin() + static_cast<long>(hi));
            slice.true_sigma.assign(path.true_sigma.begin() + static_cast<long>(lo),
                                    path.true_sigma.begin() + static_cast<long>(hi));
        }

        std::optional<PathEstimates> estimates;
        if (any_estimates)
            estimates.emplace(slice, cfg.window, cfg.prefs.risk_free, AuxSource::estimated,
                              cfg.sigma_floor);

        for (std::size_t s = 0; s < strategies.size(); ++s) {
            BacktestConfig run_cfg = cfg;
            run_cfg.strategy = strategies[s];
            const WealthLedger ledger =
                run_backtest(slice, run_cfg, estimates ? &*estimates : nullptr);
            PathOutcome out;
            out.unit = start - burn;  // offset of the horizon among admissible starts
            out.strategy = strategies[s].id;
            out.terminal_wealth = ledger.terminal_wealth();
            out.simple_return = ledger.simple_return(cfg.initial_wealth);
            out.turnover = ledger_turnover(ledger, slice);
            out.mean_cp = ledger.mean_cp();
            out.price_checksum = ledger.price_checksum;
            outcomes.push_back(out);
            returns[s].push_back(out.simple_return);
            turnovers[s].push_back(out.turnover);
        }
    }
    return summarize(std::move(ids), std::move(outcomes), std::move(returns),
                     std::move(turnovers), cfg.prefs);
}

}  // namespace mvlab
