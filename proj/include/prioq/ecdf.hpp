#pragma once

#include <functional>
#include <span>
#include <vector>

namespace prioq {

// Kolmogorov-Smirnov distance sup |F_n - F| between the empirical CDF of
// `samples` and a continuous CDF.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample distance sup |F_n - G_m|.
double ks_distance(std::vector<double> a, std::vector<double> b);

double standard_normal_cdf(double z);

// Standard deviation of a binomial frequency with n trials and success
// probability prob.
double binomial_sigma(double prob, double n);

}  // namespace prioq
