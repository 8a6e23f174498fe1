#pragma once

#include <span>
#include <vector>

#include "mvlab/market.hpp"

namespace mvlab {

// Positions that divide by the estimated volatility clamp it at this floor.
inline constexpr double kSigmaFloor = 1e-4;

// Rolling estimation window: m return observations, i.e. m+1 consecutive
// prices ending at the estimation time.
struct EstimationWindow {
    int m = 252;
};

// Windowed MLE of the discounted price coefficients at one grid time.
// alpha_hat is the per-year log drift, beta_hat the per-year squared
// volatility; mu_hat = alpha_hat + r + beta_hat/2 and sigma_hat = sqrt(beta_hat).
struct ParamEstimate {
    int at_index = 0;
    double at_time = 0.0;
    double alpha_hat = 0.0;
    double beta_hat = 0.0;
    double mu_hat = 0.0;
    double sigma_hat = 0.0;
    bool degenerate = false;  // all window returns equal (sigma_hat == 0)
};

ParamEstimate mle_estimate(const PricePath& path, int at_index, const EstimationWindow& window,
                           double risk_free);

// Position of the auxiliary (time-consistent) portfolio: (mu - r) / sigma^2,
// with sigma clamped at `sigma_floor` when the estimate degenerates.
struct AuxPosition {
    double value = 0.0;
    bool floored = false;
};

AuxPosition aux_position(const ParamEstimate& est, double risk_free,
                         double sigma_floor = kSigmaFloor);

// Where the auxiliary position takes its coefficients from: the rolling MLE
// (the live algorithm) or the path's truth fields (diagnostics and the
// convergence checks, which assume the true coefficients).
enum class AuxSource { estimated, truth };

// Auxiliary wealth path over grid indices [first_index, first_index + n):
// increment(i) = position(i) * (S_{i+1} - S_i) / S_i, and wealth carries the
// running level starting from 1 (the level itself never feeds back).
struct AuxWealthSeries {
    int first_index = 0;
    std::vector<double> position;
    std::vector<double> increment;
    std::vector<double> wealth;  // size increment.size() + 1

    int size() const { return static_cast<int>(increment.size()); }
    double increment_at(int k) const { return increment[static_cast<std::size_t>(k - first_index)]; }
};

AuxWealthSeries build_aux_wealth(const PricePath& path, const EstimationWindow& window,
                                 int from_index, int to_index, double risk_free,
                                 AuxSource source = AuxSource::estimated,
                                 double sigma_floor = kSigmaFloor);

// Sum of squared increments.
double quadratic_variation(std::span<const double> increments);

// Average-profitability estimate at t_k: the realized quadratic variation of
// the auxiliary wealth over [t_0, t_k) plus the same sum over the mirror
// window [t_{2k-N}, t_k) standing in for the unobserved remainder, divided by
// the horizon. The mirror window may dip into burn-in history; missing
// history is an error, never a silent truncation.
double estimate_ap(const PricePath& path, int at_index, const EstimationWindow& window,
                   double risk_free, AuxSource source = AuxSource::estimated,
                   double sigma_floor = kSigmaFloor);

// The current-profitability estimate equals the average-profitability
// estimate taken at the same time.
inline double estimate_cp(double k_hat) { return k_hat; }

// Error-reduction guarantee for the variance-corrected premium estimate.
// Hypotheses: sigma^2 < sigma_hat^2 and 2 * premium^2 < premium_hat^2.
enum class Theorem2Result { holds, fails, not_applicable };

Theorem2Result theorem2_check(double mu_true, double sigma_true, double mu_hat, double sigma_hat,
                              double risk_free);

// Per-path cache of rolling estimates, auxiliary increments and their
// quadratic-variation prefix sums, shared by every strategy run on the path.
// Estimates cover grid indices [first_estimate_index, N]; the default -N is
// what the trading loop needs (the mirror window reaches back to -N at k=0).
class PathEstimates {
public:
    PathEstimates(const PricePath& path, const EstimationWindow& window, double risk_free,
                  AuxSource source = AuxSource::estimated, double sigma_floor = kSigmaFloor);
    PathEstimates(const PricePath& path, const EstimationWindow& window, double risk_free,
                  int first_estimate_index, AuxSource source = AuxSource::estimated,
                  double sigma_floor = kSigmaFloor);

    const ParamEstimate& at(int k) const;

    // Eq.-style average-profitability estimate at k in [0, N].
    double k_hat(int k) const;

    double aux_increment(int k) const;
    int first_index() const { return first_; }

private:
    int first_ = 0;
    int steps_ = 0;
    double horizon_ = 0.0;
    std::vector<ParamEstimate> estimates_;   // grid [first_, N]
    std::vector<double> increments_;         // grid [first_, N)
    std::vector<double> qv_prefix_;          // qv_prefix_[j] = sum of squared increments below j
};

}  // namespace mvlab
