#include "mvlab/estimators.hpp"

#include <cmath>
#include <string>

namespace mvlab {

namespace {

void require_window(const PricePath& path, int at_index, int m, const char* who) {
    if (m < 1)
        throw invalid_spec_error(std::string(who) + ": window must hold at least one return");
    if (at_index - m < path.grid.first_index() || at_index > path.grid.last_index())
        throw window_error(std::string(who) + ": window of " + std::to_string(m + 1) +
                           " prices ending at grid index " + std::to_string(at_index) +
                           " reaches outside available history (earliest index " +
                           std::to_string(path.grid.first_index()) + ")");
}

double truth_aux_position(const PricePath& path, int k, double risk_free, double sigma_floor,
                          bool* floored) {
    const double sigma = path.truth_sigma(k);
    const double eff = std::max(sigma, sigma_floor);
    if (floored != nullptr)
        *floored = sigma <= sigma_floor;
    return (path.truth_mu(k) - risk_free) / (eff * eff);
}

}  // namespace

ParamEstimate mle_estimate(const PricePath& path, int at_index, const EstimationWindow& window,
                           double risk_free) {
    require_window(path, at_index, window.m, "mle_estimate");
    const double dt = path.grid.dt();
    const int m = window.m;

    double sum = 0.0;
    for (int i = at_index - m; i < at_index; ++i)
        sum += std::log(path.price(i + 1) / path.price(i));
    const double alpha = sum / (m * dt);

    double sq = 0.0;
    for (int i = at_index - m; i < at_index; ++i) {
        const double dev = std::log(path.price(i + 1) / path.price(i)) - alpha * dt;
        sq += dev * dev;
    }
    const double beta = sq / (m * dt);

    ParamEstimate est;
    est.at_index = at_index;
    est.at_time = path.grid.time_at(at_index);
    est.alpha_hat = alpha;
    est.beta_hat = beta;
    est.sigma_hat = std::sqrt(beta);
    est.mu_hat = alpha + risk_free + 0.5 * beta;
    est.degenerate = !(beta > 0.0);
    return est;
}

AuxPosition aux_position(const ParamEstimate& est, double risk_free, double sigma_floor) {
    AuxPosition pos;
    pos.floored = est.sigma_hat <= sigma_floor;
    const double sigma = std::max(est.sigma_hat, sigma_floor);
    pos.value = (est.mu_hat - risk_free) / (sigma * sigma);
    return pos;
}

AuxWealthSeries build_aux_wealth(const PricePath& path, const EstimationWindow& window,
                                 int from_index, int to_index, double risk_free, AuxSource source,
                                 double sigma_floor) {
    if (to_index < from_index)
        throw invalid_spec_error("build_aux_wealth: empty or reversed range");
    if (to_index > path.grid.last_index())
        throw window_error("build_aux_wealth: range extends past the end of the path");
    if (source == AuxSource::truth && !path.has_truth())
        throw invalid_spec_error("build_aux_wealth: path carries no truth coefficients");

    AuxWealthSeries series;
    series.first_index = from_index;
    const int n = to_index - from_index;
    series.position.resize(n);
    series.increment.resize(n);
    series.wealth.resize(n + 1);
    series.wealth[0] = 1.0;

    for (int i = from_index; i < to_index; ++i) {
        double theta = 0.0;
        if (source == AuxSource::estimated) {
            const ParamEstimate est = mle_estimate(path, i, window, risk_free);
            theta = aux_position(est, risk_free, sigma_floor).value;
        } else {
            theta = truth_aux_position(path, i, risk_free, sigma_floor, nullptr);
        }
        const double step = theta * (path.price(i + 1) - path.price(i)) / path.price(i);
        const std::size_t j = static_cast<std::size_t>(i - from_index);
        series.position[j] = theta;
        series.increment[j] = step;
        series.wealth[j + 1] = series.wealth[j] + step;
    }
    return series;
}

double quadratic_variation(std::span<const double> increments) {
    double total = 0.0;
    for (double x : increments)
        total += x * x;
    return total;
}

double estimate_ap(const PricePath& path, int at_index, const EstimationWindow& window,
                   double risk_free, AuxSource source, double sigma_floor) {
    const int n = path.grid.steps;
    if (at_index < 0 || at_index > n)
        throw invalid_spec_error("estimate_ap: evaluation index must lie on the trading grid");
    const int mirror_start = 2 * at_index - n;
    const int lo = std::min(0, mirror_start);
    const auto series =
        build_aux_wealth(path, window, lo, at_index, risk_free, source, sigma_floor);

    double realized = 0.0;
    for (int i = 0; i < at_index; ++i)
        realized += series.increment_at(i) * series.increment_at(i);
    double mirrored = 0.0;
    for (int i = mirror_start; i < at_index; ++i)
        mirrored += series.increment_at(i) * series.increment_at(i);
    return (realized + mirrored) / path.grid.horizon_years;
}

Theorem2Result theorem2_check(double mu_true, double sigma_true, double mu_hat, double sigma_hat,
                              double risk_free) {
    if (!(sigma_true > 0.0) || !(sigma_hat > 0.0))
        throw invalid_spec_error("theorem2_check: volatilities must be positive");
    const double prem = (mu_true - risk_free) / sigma_true;
    const double prem_hat = (mu_hat - risk_free) / sigma_hat;
    const bool var_overshoot = sigma_true * sigma_true < sigma_hat * sigma_hat;
    const bool premium_overshoot = 2.0 * prem * prem < prem_hat * prem_hat;
    if (!var_overshoot || !premium_overshoot)
        return Theorem2Result::not_applicable;

    const double corrected =
        prem_hat * prem_hat * (sigma_true * sigma_true) / (sigma_hat * sigma_hat);
    const double lhs = std::abs(corrected - prem * prem);
    const double rhs = std::abs(prem_hat * prem_hat - prem * prem);
    return lhs < rhs ? Theorem2Result::holds : Theorem2Result::fails;
}

PathEstimates::PathEstimates(const PricePath& path, const EstimationWindow& window,
                             double risk_free, AuxSource source, double sigma_floor)
    : PathEstimates(path, window, risk_free, -path.grid.steps, source, sigma_floor) {}

PathEstimates::PathEstimates(const PricePath& path, const EstimationWindow& window,
                             double risk_free, int first_estimate_index, AuxSource source,
                             double sigma_floor)
    : first_(first_estimate_index),
      steps_(path.grid.steps),
      horizon_(path.grid.horizon_years) {
    const int m = window.m;
    if (m < 1)
        throw invalid_spec_error("PathEstimates: window must hold at least one return");
    if (first_ > 0)
        throw invalid_spec_error("PathEstimates: estimates must start at or before t_0");
    if (first_ - m < path.grid.first_index())
        throw window_error("PathEstimates: need " + std::to_string(m - first_) +
                           " burn-in steps for estimates from grid index " +
                           std::to_string(first_) + ", path has " +
                           std::to_string(path.grid.burn_in_steps));
    if (source == AuxSource::truth && !path.has_truth())
        throw invalid_spec_error("PathEstimates: path carries no truth coefficients");

    const double dt = path.grid.dt();
    const int total_returns = path.grid.total_points() - 1;

    // prefix sums over all log-returns; storage index j covers grid step
    // [j - burn_in, j - burn_in + 1)
    std::vector<double> c1(static_cast<std::size_t>(total_returns) + 1, 0.0);
    std::vector<double> c2(static_cast<std::size_t>(total_returns) + 1, 0.0);
    for (int j = 0; j < total_returns; ++j) {
        const double x = std::log(path.prices[static_cast<std::size_t>(j) + 1] /
                                  path.prices[static_cast<std::size_t>(j)]);
        c1[static_cast<std::size_t>(j) + 1] = c1[static_cast<std::size_t>(j)] + x;
        c2[static_cast<std::size_t>(j) + 1] = c2[static_cast<std::size_t>(j)] + x * x;
    }

    const int burn = path.grid.burn_in_steps;
    estimates_.resize(static_cast<std::size_t>(steps_ - first_) + 1);
    for (int k = first_; k <= steps_; ++k) {
        const std::size_t hi = static_cast<std::size_t>(k + burn);
        const std::size_t lo = static_cast<std::size_t>(k - m + burn);
        const double sum = c1[hi] - c1[lo];
        const double sq = c2[hi] - c2[lo];
        ParamEstimate est;
        est.at_index = k;
        est.at_time = path.grid.time_at(k);
        est.alpha_hat = sum / (m * dt);
        est.beta_hat = std::max(sq - sum * sum / m, 0.0) / (m * dt);
        est.sigma_hat = std::sqrt(est.beta_hat);
        est.mu_hat = est.alpha_hat + risk_free + 0.5 * est.beta_hat;
        est.degenerate = !(est.beta_hat > 0.0);
        estimates_[static_cast<std::size_t>(k - first_)] = est;
    }

    increments_.resize(static_cast<std::size_t>(steps_ - first_));
    qv_prefix_.resize(increments_.size() + 1, 0.0);
    for (int i = first_; i < steps_; ++i) {
        double theta = 0.0;
        if (source == AuxSource::estimated)
            theta = aux_position(at(i), risk_free, sigma_floor).value;
        else
            theta = truth_aux_position(path, i, risk_free, sigma_floor, nullptr);
        const double step = theta * (path.price(i + 1) - path.price(i)) / path.price(i);
        const std::size_t j = static_cast<std::size_t>(i - first_);
        increments_[j] = step;
        qv_prefix_[j + 1] = qv_prefix_[j] + step * step;
    }
}

const ParamEstimate& PathEstimates::at(int k) const {
    if (k < first_ || k > steps_)
        throw window_error("PathEstimates: no estimate at grid index " + std::to_string(k));
    return estimates_[static_cast<std::size_t>(k - first_)];
}

double PathEstimates::aux_increment(int k) const {
    if (k < first_ || k >= steps_)
        throw window_error("PathEstimates: no auxiliary increment at grid index " +
                           std::to_string(k));
    return increments_[static_cast<std::size_t>(k - first_)];
}

double PathEstimates::k_hat(int k) const {
    if (k < 0 || k > steps_)
        throw invalid_spec_error("PathEstimates: evaluation index must lie on the trading grid");
    const int mirror_start = 2 * k - steps_;
    if (mirror_start < first_)
        throw window_error("PathEstimates: mirror window reaches grid index " +
                           std::to_string(mirror_start) + ", estimates start at " +
                           std::to_string(first_));
    const auto pre = [&](int j) { return qv_prefix_[static_cast<std::size_t>(j - first_)]; };
    const double realized = pre(k) - pre(0);
    const double mirrored = pre(k) - pre(mirror_start);
    return (realized + mirrored) / horizon_;
}

}  // namespace mvlab
