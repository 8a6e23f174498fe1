#pragma once

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "mvlab/rng.hpp"
#include "mvlab/time_grid.hpp"

namespace mvlab {

// Floor applied to the variance when reporting the true volatility of a
// stochastic-volatility path, so downstream divisions by sigma(t) stay finite.
inline constexpr double kVarianceFloor = 1e-10;

// Constant-coefficient geometric Brownian motion (per-year drift/volatility).
struct GbmParams {
    double mu = 0.1;
    double sigma = 0.1;
};

// Deterministic time-varying coefficients, evaluated on the grid.
struct FunctionalGbmParams {
    std::function<double(double)> mu;
    std::function<double(double)> sigma;
};

// Square-root stochastic variance: the discounted price carries excess drift
// drift_slope * X_t and volatility sqrt(X_t); X mean-reverts to long_run_var.
struct HestonParams {
    double drift_slope = 8.5;    // excess drift per unit of variance
    double reversion = 42.5;     // mean-reversion speed of the variance
    double long_run_var = 0.01;  // stationary variance level
    double vol_of_vol = 0.6;
    double correlation = -0.7;   // between price and variance shocks
    double initial_var = 0.02;
};

// Generative model of the discounted risky asset plus the risk-free rate.
struct MarketSpec {
    double risk_free = 0.02;
    std::variant<GbmParams, FunctionalGbmParams, HestonParams> model = GbmParams{};

    bool is_heston() const { return std::holds_alternative<HestonParams>(model); }
};

// Discounted price series on a grid, burn-in history included. When produced
// by a simulator, `true_mu`/`true_sigma` carry the per-time coefficients that
// actually drove the path (empty for ingested market data).
struct PricePath {
    TimeGrid grid;
    std::vector<double> prices;      // size grid.total_points()
    std::vector<double> true_mu;     // empty, or same size as prices
    std::vector<double> true_sigma;  // empty, or same size as prices

    double price(int k) const { return prices[static_cast<std::size_t>(k + grid.burn_in_steps)]; }
    double truth_mu(int k) const { return true_mu[static_cast<std::size_t>(k + grid.burn_in_steps)]; }
    double truth_sigma(int k) const { return true_sigma[static_cast<std::size_t>(k + grid.burn_in_steps)]; }
    bool has_truth() const { return !true_mu.empty(); }

    void validate() const;
};

// Exact log-normal stepping of the discounted GBM price (no discretization
// bias). `spec.model` must be a GBM variant with sigma > 0 on the whole grid.
PricePath simulate_gbm_path(const MarketSpec& spec, const TimeGrid& grid, const RngSeed& seed);
PricePath simulate_gbm_path(const MarketSpec& spec, const TimeGrid& grid, NormalSource& normals);

// Full-truncation Euler stepping of the joint (price, variance) system. The
// price is stepped in levels; the variance enters drift and diffusion through
// max(X, 0). The two Brownian drivers come from independent substreams.
PricePath simulate_heston_path(const MarketSpec& spec, const TimeGrid& grid, const RngSeed& seed);
PricePath simulate_heston_path(const MarketSpec& spec, const TimeGrid& grid,
                               NormalSource& price_normals, NormalSource& var_normals);

// Dispatch on spec.model.
PricePath simulate_path(const MarketSpec& spec, const TimeGrid& grid, const RngSeed& seed);

// Deflate an externally supplied price series by exp(-r t), t measured from
// the series start. The grid must have exactly one point per observation.
PricePath discount_prices(std::span<const double> raw_prices, const TimeGrid& grid, double risk_free);

}  // namespace mvlab
