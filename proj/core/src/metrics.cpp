#include "mvlab/metrics.hpp"

#include <cmath>
#include <string>

#include "mvlab/stats.hpp"

namespace mvlab {

double ceq(const ReturnSample& sample) {
    if (sample.returns.size() < 2)
        throw metric_error("ceq: need at least two returns");
    return stats::mean(sample.returns) - sample.gamma * stats::population_variance(sample.returns);
}

double sharpe(const ReturnSample& sample) {
    if (sample.returns.size() < 2)
        throw metric_error("sharpe: need at least two returns");
    const double sd = stats::population_stddev(sample.returns);
    if (!(sd > 0.0))
        throw metric_error("sharpe: undefined for a zero-spread sample");
    return (stats::mean(sample.returns) - sample.risk_free) / sd;
}

double turnover(std::span<const double> positions, std::span<const double> wealth,
                std::span<const double> prices, bool trade_free) {
    if (trade_free)
        return 0.0;
    if (wealth.size() != prices.size() || positions.size() + 1 != wealth.size())
        throw metric_error("turnover: ledger series are misaligned");
    double total = 0.0;
    for (std::size_t i = 1; i < positions.size(); ++i) {
        if (wealth[i] == 0.0)
            throw metric_error("turnover: zero wealth at step " + std::to_string(i));
        const double drifted = positions[i - 1] * (prices[i] / prices[i - 1]) / wealth[i];
        total += std::abs(drifted - positions[i] / wealth[i]);
    }
    return total;
}

WelchResult welch_test(std::span<const double> x, std::span<const double> y) {
    if (x.size() < 2 || y.size() < 2)
        throw metric_error("welch_test: both samples need at least two points");
    const double nx = static_cast<double>(x.size());
    const double ny = static_cast<double>(y.size());
    const double vx = stats::sample_variance(x);
    const double vy = stats::sample_variance(y);
    if (!(vx > 0.0) || !(vy > 0.0))
        throw metric_error("welch_test: degenerate sample variance");

    const double se2 = vx / nx + vy / ny;
    WelchResult result;
    result.t = (stats::mean(x) - stats::mean(y)) / std::sqrt(se2);
    result.dof = se2 * se2 /
                 (vx * vx / (nx * nx * (nx - 1.0)) + vy * vy / (ny * ny * (ny - 1.0)));
    result.p = stats::student_t_two_sided_p(result.t, result.dof);
    return result;
}

}  // namespace mvlab
