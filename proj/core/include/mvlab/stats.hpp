#pragma once

#include <span>

namespace mvlab::stats {

double mean(std::span<const double> xs);

// Population (1/n) variance and standard deviation.
double population_variance(std::span<const double> xs);
double population_stddev(std::span<const double> xs);

// Unbiased (1/(n-1)) variance, used by the significance test.
double sample_variance(std::span<const double> xs);

// Regularized incomplete beta function I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Two-sided tail probability of a Student-t variable with (possibly
// fractional) degrees of freedom.
double student_t_two_sided_p(double t, double dof);

}  // namespace mvlab::stats
