// stats.hpp — small statistical helpers: one-sample KS test, moments

#pragma once

#include <functional>
#include <span>

namespace rydcqed::stats {

struct KsResult {
    double statistic;  // sup |F_n − F|
    double p_value;
};

// Asymptotic Kolmogorov survival function with Stephens' small-n correction.
double kolmogorov_p_value(double statistic, std::size_t n);

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf);
KsResult ks_test_exponential(std::span<const double> samples, double rate);

double mean(std::span<const double> x);
// Sample standard deviation (n − 1 denominator).
double stddev(std::span<const double> x);

} // namespace rydcqed::stats
