#pragma once

#include <span>
#include <vector>

#include "mvlab/errors.hpp"

namespace mvlab {

// Per-path (or per-horizon) simple returns (W_T - W_0) / W_0 together with
// the evaluation constants.
struct ReturnSample {
    std::vector<double> returns;
    double risk_free = 0.02;
    double gamma = 1.4;
};

// Certainty-equivalent return: mean - gamma * variance, population (1/n)
// variance so test vectors are exact.
double ceq(const ReturnSample& sample);

// (mean - r) / population standard deviation. Throws when the sample is
// degenerate (zero spread).
double sharpe(const ReturnSample& sample);

// Summed absolute gap between the drifted pre-trade risky weight and the
// post-trade risky weight at each rebalance:
//   sum_i | theta_{i-1} * (S_i / S_{i-1}) / W_i  -  theta_i / W_i |.
// The horizon end carries no forced liquidation, so the terminal term is
// zero and the sum runs over the interior rebalances. `positions` holds
// theta at t_0..t_{N-1}; `wealth` and `prices` hold t_0..t_N. A strategy
// that never trades reports exactly zero through `trade_free`.
double turnover(std::span<const double> positions, std::span<const double> wealth,
                std::span<const double> prices, bool trade_free = false);

struct WelchResult {
    double t = 0.0;
    double dof = 0.0;
    double p = 1.0;
};

// Two-sided Welch unequal-variance test on the sample means.
WelchResult welch_test(std::span<const double> x, std::span<const double> y);

}  // namespace mvlab
