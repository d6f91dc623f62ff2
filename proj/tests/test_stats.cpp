#include "rydcqed/errors.hpp"
#include "rydcqed/stats.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rydcqed;

// Reference values: scipy.stats.kstwobign.sf at the Stephens-corrected λ,
// and scipy.stats.kstwo.sf (exact finite-n distribution).
TEST(Kolmogorov, MatchesReferenceValues) {
    struct Case { double d; std::size_t n; double asymptotic, exact; };
    const Case cases[] = {
        {0.05, 500, 0.15955408974378785, 0.15866260223815387},
        {0.02, 10000, 0.0006580428207401608, 0.0006616848639387309},
        {0.1, 50, 0.676620149700246, 0.6623112704658186},
        {0.3, 20, 0.04313491121487042, 0.04306706665851623},
    };
    for (const auto& c : cases) {
        const double p = stats::kolmogorov_p_value(c.d, c.n);
        EXPECT_NEAR(p, c.asymptotic, 1e-10) << c.d << " " << c.n;
        EXPECT_NEAR(p, c.exact, 0.03 * c.exact);
    }
    EXPECT_EQ(stats::kolmogorov_p_value(0.0, 10), 1.0);
    EXPECT_THROW(stats::kolmogorov_p_value(0.1, 0), ParameterError);
}

TEST(KsTest, StatisticMatchesReference) {
    const std::vector<double> x{0.1, 0.5, 0.9, 1.3, 2.0, 0.05, 0.7};
    const auto r = stats::ks_test_exponential(x, 1.5);
    EXPECT_NEAR(r.statistic, 0.2419191615446996, 1e-14);
}

TEST(KsTest, DetectsWrongRate) {
    std::mt19937_64 rng(1);
    std::exponential_distribution<double> e(2.0);
    std::vector<double> x(20000);
    for (auto& v : x) v = e(rng);
    EXPECT_GT(stats::ks_test_exponential(x, 2.0).p_value, 0.01);
    EXPECT_LT(stats::ks_test_exponential(x, 2.1).p_value, 1e-6);
    EXPECT_THROW(stats::ks_test_exponential(std::vector<double>{}, 1.0), ParameterError);
}

TEST(Moments, MeanAndStddev) {
    const std::vector<double> x{1, 2, 3, 4};
    EXPECT_DOUBLE_EQ(stats::mean(x), 2.5);
    EXPECT_DOUBLE_EQ(stats::stddev(x), std::sqrt(5.0 / 3.0));
    EXPECT_EQ(stats::stddev(std::vector<double>{1.0}), 0.0);
}
