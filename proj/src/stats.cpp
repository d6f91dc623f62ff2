// stats.cpp

#include "rydcqed/stats.hpp"

#include "rydcqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace rydcqed::stats {

double kolmogorov_p_value(double statistic, std::size_t n) {
    if (n == 0) throw ParameterError("kolmogorov_p_value: empty sample");
    const double sn = std::sqrt(static_cast<double>(n));
    const double lambda = (sn + 0.12 + 0.11 / sn) * statistic;
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int j = 1; j <= 100; ++j) {
        const double term = sign * std::exp(-2.0 * j * j * lambda * lambda);
        sum += term;
        if (std::abs(term) < 1e-12 * std::abs(sum)) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_test(std::span<const double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw ParameterError("ks_test: empty sample");
    std::vector<double> x(samples.begin(), samples.end());
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double d = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = cdf(x[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return {d, kolmogorov_p_value(d, x.size())};
}

KsResult ks_test_exponential(std::span<const double> samples, double rate) {
    return ks_test(samples, [rate](double t) { return t <= 0.0 ? 0.0 : -std::expm1(-rate * t); });
}

double mean(std::span<const double> x) {
    if (x.empty()) return 0.0;
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double stddev(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

} // namespace rydcqed::stats
