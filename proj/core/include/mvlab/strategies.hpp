#pragma once

#include <string>

#include "mvlab/estimators.hpp"

namespace mvlab {

struct RiskPreferences {
    double gamma = 1.4;      // weight on the variance of terminal wealth
    double risk_free = 0.02;

    void validate() const {
        if (!(gamma > 0.0))
            throw invalid_spec_error("RiskPreferences: gamma must be positive");
    }
};

struct PortfolioState {
    double wealth = 1.0;          // current discounted wealth
    double initial_wealth = 1.0;  // discounted wealth at the horizon start
    double time = 0.0;
};

// The implemented policies.
//   qv            — sizes positions from the quadratic-variation profitability
//                   estimates (the live algorithm)
//   mle           — treats the current MLE premium as constant over the horizon
//   hold          — all wealth in the risky asset, never rebalanced
//   oracle        — the closed-form policy fed with the true coefficients
//   qv_or_hold    — qv while estimated volatility stays below a threshold,
//                   buy-and-hold otherwise
enum class StrategyId { qv, mle, hold, oracle, qv_or_hold };

struct StrategyKind {
    StrategyId id = StrategyId::qv;
    double sigma_threshold = 0.1;  // only read by qv_or_hold

    void validate() const {
        if (id == StrategyId::qv_or_hold && !(sigma_threshold > 0.0))
            throw invalid_spec_error("StrategyKind: sigma threshold must be positive");
    }
};

std::string strategy_name(StrategyId id);
StrategyId strategy_from_name(const std::string& name);

// Risky position of the pre-commitment policy written in terms of the
// average profitability k_hat over the horizon and the current profitability
// a_hat:  theta = (-w + w0 + e^{k_hat T} / (2 gamma)) * sign * sqrt(a_hat) / sigma.
// `sign` carries the direction of the current premium (sqrt loses it);
// sigma below the floor is clamped and reported through `clamped`.
double theta_precommit(const PortfolioState& state, double k_hat, double a_hat, double sigma,
                       double sign, const RiskPreferences& prefs, double horizon_years,
                       double sigma_floor = kSigmaFloor, bool* clamped = nullptr);

// Same policy under a constant-premium reading of the current MLE:
// theta = (-w + w0 + e^{premium^2 T} / (2 gamma)) * (mu_hat - r) / sigma_hat^2.
double theta_strategy_mle(const PortfolioState& state, const ParamEstimate& est,
                          const RiskPreferences& prefs, double horizon_years,
                          double sigma_floor = kSigmaFloor, bool* clamped = nullptr);

// Buy-and-hold: the whole current wealth stays in the risky asset.
double theta_buy_and_hold(const PortfolioState& state);

// Volatility-gated combination: the qv position while sigma_hat < threshold,
// buy-and-hold otherwise (threshold itself falls to the hold branch).
double theta_combined(const ParamEstimate& est, double theta_qv, double theta_hold,
                      double threshold);

}  // namespace mvlab
