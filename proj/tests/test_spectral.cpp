#include "oracle.hpp"
#include "rydcqed/errors.hpp"
#include "rydcqed/spectral.hpp"

#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

using namespace rydcqed;

TEST(Dressed, SquareRootLadder) {
    PhysicalParams p;
    const double g = effective_coupling(p);
    for (int n = 0; n <= 6; ++n) {
        const auto [plus, minus] = dressed_frequencies(n, p);
        EXPECT_NEAR(plus, g * std::sqrt(double(n)), 1e-12 * g);
        EXPECT_EQ(minus, -plus);
    }
    EXPECT_EQ(dressed_ladder(3, p).size(), 6u);
    EXPECT_THROW(dressed_frequencies(-1, p), ParameterError);
    p.bubbles = 2;
    EXPECT_THROW(dressed_frequencies(1, p), ParameterError);
}

TEST(Dressed, MultiPhotonResonance) {
    PhysicalParams p;
    const double g = effective_coupling(p);
    // n photons at detuning δ reach the n-excitation dressed level: n δ = g √n.
    for (int n = 1; n <= 5; ++n) {
        const auto [plus, minus] = n_photon_resonance(n, p);
        EXPECT_NEAR(n * plus, dressed_frequencies(n, p).first, 1e-12 * g);
        EXPECT_EQ(minus, -plus);
    }
    EXPECT_THROW(n_photon_resonance(0, p), ParameterError);
}

TEST(LadderSpectrum, MatchesDenseOracle) {
    for (int nb : {1, 2, 3, 5}) {
        PhysicalParams p;
        p.bubbles = nb;
        p.photon_cutoff = 5;
        p.alpha = mhz(1.0);        // ignored: the spectrum is taken at α = δ = 0
        p.delta_probe = mhz(4.0);
        const auto H = oracle::ladder_hamiltonian(nb, 5, ladder_couplings(p), 0.0, 0.0);
        const BasisSpec b = p.basis();
        for (int n = 0; n <= 5; ++n) {
            const auto idx = excitation_block(b, n);
            Eigen::MatrixXcd blk(idx.size(), idx.size());
            for (std::size_t r = 0; r < idx.size(); ++r)
                for (std::size_t c = 0; c < idx.size(); ++c) blk(r, c) = H(idx[r], idx[c]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(blk);
            const auto ev = ladder_spectrum(p, n);
            ASSERT_EQ(ev.size(), idx.size());
            for (std::size_t i = 0; i < ev.size(); ++i)
                EXPECT_NEAR(ev[i], es.eigenvalues()[i], 1e-10 * effective_coupling(p));
        }
    }
}

TEST(LadderSpectrum, SpectrumIsSymmetric) {
    PhysicalParams p;
    p.bubbles = 4;
    p.photon_cutoff = 6;
    for (int n = 1; n <= 6; ++n) {
        const auto ev = ladder_spectrum(p, n);
        for (std::size_t i = 0; i < ev.size(); ++i)
            EXPECT_NEAR(ev[i], -ev[ev.size() - 1 - i], 1e-10 * effective_coupling(p));
    }
}

TEST(LadderSpectrum, RejectsExcitationAboveCutoff) {
    PhysicalParams p;
    p.photon_cutoff = 3;
    EXPECT_THROW(ladder_spectrum(p, 4), ParameterError);
    EXPECT_THROW(ladder_spectrum(p, -1), ParameterError);
}

TEST(Blockade, ExactValueIsTheTwoExcitationShift) {
    for (int nb : {1, 2, 3, 5, 10, 40}) {
        PhysicalParams p;
        p.bubbles = nb;
        const double g = effective_coupling(p);
        const auto ev = ladder_spectrum(p, 2);
        const auto bd = blockade_detuning(p);
        EXPECT_NEAR(bd.exact, 2 * g - ev.back(), 1e-10 * g) << "n_b = " << nb;
        EXPECT_DOUBLE_EQ(bd.asymptotic, g / (2.0 * nb));
    }
    // The asymptotic form converges like 1/n_b.
    PhysicalParams p;
    p.bubbles = 1000;
    const auto bd = blockade_detuning(p);
    EXPECT_NEAR(bd.exact / bd.asymptotic, 1.0, 1e-3);
}

TEST(Perturbative, Strengths) {
    PhysicalParams p;
    p.alpha = mhz(0.15);
    const auto s = perturbative_strengths(p);
    EXPECT_DOUBLE_EQ(s.beta1, p.alpha / std::sqrt(2.0));
    EXPECT_NEAR(s.p1, 2 * p.alpha * p.alpha / (p.kappa * p.kappa), 1e-15);
    EXPECT_DOUBLE_EQ(s.n_avg1, s.p1 / 2);
    const double g = effective_coupling(p);
    EXPECT_NEAR(s.beta2, 3 * p.alpha * p.alpha / g, 1e-15);
    EXPECT_DOUBLE_EQ(s.n_avg2, 1.5 * s.p2);
}
