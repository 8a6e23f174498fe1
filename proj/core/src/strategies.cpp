#include "mvlab/strategies.hpp"

#include <cmath>

namespace mvlab {

std::string strategy_name(StrategyId id) {
    switch (id) {
        case StrategyId::qv: return "qv";
        case StrategyId::mle: return "mle";
        case StrategyId::hold: return "hold";
        case StrategyId::oracle: return "oracle";
        case StrategyId::qv_or_hold: return "qv_or_hold";
    }
    throw invalid_spec_error("strategy_name: unknown strategy");
}

StrategyId strategy_from_name(const std::string& name) {
    if (name == "qv") return StrategyId::qv;
    if (name == "mle") return StrategyId::mle;
    if (name == "hold") return StrategyId::hold;
    if (name == "oracle") return StrategyId::oracle;
    if (name == "qv_or_hold") return StrategyId::qv_or_hold;
    throw invalid_spec_error("unknown strategy '" + name +
                             "' (expected qv, mle, hold, oracle or qv_or_hold)");
}

double theta_precommit(const PortfolioState& state, double k_hat, double a_hat, double sigma,
                       double sign, const RiskPreferences& prefs, double horizon_years,
                       double sigma_floor, bool* clamped) {
    prefs.validate();
    if (k_hat < 0.0 || a_hat < 0.0)
        throw invalid_spec_error("theta_precommit: profitability estimates must be >= 0");
    const bool clamp = sigma < sigma_floor;
    if (clamped != nullptr)
        *clamped = clamp;
    const double sigma_eff = clamp ? sigma_floor : sigma;
    const double target = -state.wealth + state.initial_wealth +
                          std::exp(k_hat * horizon_years) / (2.0 * prefs.gamma);
    return target * sign * std::sqrt(a_hat) / sigma_eff;
}

double theta_strategy_mle(const PortfolioState& state, const ParamEstimate& est,
                          const RiskPreferences& prefs, double horizon_years, double sigma_floor,
                          bool* clamped) {
    prefs.validate();
    const bool clamp = est.sigma_hat < sigma_floor;
    if (clamped != nullptr)
        *clamped = clamp;
    const double sigma_eff = clamp ? sigma_floor : est.sigma_hat;
    const double premium = (est.mu_hat - prefs.risk_free) / sigma_eff;
    const double target = -state.wealth + state.initial_wealth +
                          std::exp(premium * premium * horizon_years) / (2.0 * prefs.gamma);
    return target * (est.mu_hat - prefs.risk_free) / (sigma_eff * sigma_eff);
}

double theta_buy_and_hold(const PortfolioState& state) { return state.wealth; }

double theta_combined(const ParamEstimate& est, double theta_qv, double theta_hold,
                      double threshold) {
    return est.sigma_hat < threshold ? theta_qv : theta_hold;
}

}  // namespace mvlab
