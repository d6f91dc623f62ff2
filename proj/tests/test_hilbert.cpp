#include "oracle.hpp"
#include "rydcqed/errors.hpp"
#include "rydcqed/hilbert.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace rydcqed;

namespace {

double max_abs(const Eigen::MatrixXcd& m) { return m.cwiseAbs().maxCoeff(); }

SparseOperator random_operator(int dim, double fill, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::bernoulli_distribution keep(fill);
    std::vector<Entry> e;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (keep(rng)) e.push_back({i, j, {u(rng), u(rng)}});
    return SparseOperator::from_entries(dim, e);
}

} // namespace

TEST(BasisSpec, FlatIndexRoundTrip) {
    BasisSpec b(3, 4);
    EXPECT_EQ(b.dimension(), 15);
    std::vector<bool> seen(15, false);
    for (int k = 0; k < 3; ++k) {
        for (int n = 0; n <= 4; ++n) {
            const int i = b.flat_index(k, n);
            ASSERT_GE(i, 0);
            ASSERT_LT(i, 15);
            EXPECT_FALSE(seen[i]);
            seen[i] = true;
            const auto [kk, nn] = b.unflatten(i);
            EXPECT_EQ(kk, k);
            EXPECT_EQ(nn, n);
        }
    }
}

TEST(BasisSpec, RejectsBadArguments) {
    EXPECT_THROW(BasisSpec(1, 3), Error);
    EXPECT_THROW(BasisSpec(2, 0), Error);
    BasisSpec b(2, 3);
    EXPECT_THROW(b.flat_index(2, 0), IndexError);
    EXPECT_THROW(b.flat_index(0, 4), IndexError);
    EXPECT_THROW(b.flat_index(-1, 0), IndexError);
}

TEST(SparseOperator, CanonicalFormSumsDuplicatesAndDropsZeros) {
    auto op = SparseOperator::from_entries(3, {{2, 1, 1.0}, {0, 0, 2.0}, {2, 1, -1.0}, {0, 2, 3.0}});
    EXPECT_EQ(op.nonzeros(), 2u);
    EXPECT_EQ(op.coeff(0, 0), cplx(2.0));
    EXPECT_EQ(op.coeff(2, 1), cplx(0.0));
    auto same = SparseOperator::from_entries(3, {{0, 2, 3.0}, {0, 0, 2.0}});
    EXPECT_TRUE(op == same);
}

TEST(SparseOperator, RejectsOutOfRangeEntries) {
    EXPECT_THROW(SparseOperator::from_entries(2, {{2, 0, 1.0}}), IndexError);
    EXPECT_THROW(SparseOperator::from_entries(2, {{0, -1, 1.0}}), IndexError);
}

TEST(SparseOperator, AlgebraMatchesDense) {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
        const int dim = 1 + trial % 9;
        auto a = random_operator(dim, 0.3, rng);
        auto b = random_operator(dim, 0.3, rng);
        const Eigen::MatrixXcd A = a.to_dense(), B = b.to_dense();
        EXPECT_LT(max_abs((a * b).to_dense() - A * B), 1e-12);
        EXPECT_LT(max_abs((a + b).to_dense() - (A + B)), 1e-15);
        EXPECT_LT(max_abs((a - b).to_dense() - (A - B)), 1e-15);
        EXPECT_LT(max_abs(a.adjoint().to_dense() - A.adjoint()), 1e-15);
        EXPECT_LT(max_abs(a.scaled({0.5, -2.0}).to_dense() - cplx(0.5, -2.0) * A), 1e-14);
        Eigen::VectorXcd v = Eigen::VectorXcd::Random(dim);
        EXPECT_LT((a * v - A * v).cwiseAbs().maxCoeff(), 1e-13);
        EXPECT_LT(max_abs(Eigen::MatrixXcd(a.to_eigen()) - A), 1e-15);
        EXPECT_TRUE(SparseOperator::from_dense(A) == a);
    }
}

TEST(SparseOperator, DimensionMismatchThrows) {
    auto a = SparseOperator::identity(2);
    auto b = SparseOperator::identity(3);
    EXPECT_THROW(a * b, DimensionError);
    EXPECT_THROW(a + b, DimensionError);
    EXPECT_THROW(a * Eigen::VectorXcd(Eigen::VectorXcd::Zero(3)), DimensionError);
}

TEST(Operators, MatchKroneckerConstruction) {
    const int L = 3, n_max = 4;
    BasisSpec b(L, n_max);
    const auto a = oracle::kron(oracle::eye(L), oracle::destroy(n_max));
    EXPECT_LT(max_abs(annihilation(b).to_dense() - a), 1e-15);
    EXPECT_LT(max_abs(number_operator(b).to_dense() - a.adjoint() * a), 1e-14);

    const std::vector<double> g{0.7, 1.3};
    Eigen::MatrixXcd raise = Eigen::MatrixXcd::Zero(b.dimension(), b.dimension());
    Eigen::MatrixXcd lower = raise, exc = raise;
    for (int k = 1; k < L; ++k) {
        raise += g[k - 1] * oracle::kron(oracle::ket_bra(L, k, k - 1), oracle::eye(n_max + 1));
        lower += std::sqrt(double(k)) *
                 oracle::kron(oracle::ket_bra(L, k - 1, k), oracle::eye(n_max + 1));
        exc += double(k) * oracle::kron(oracle::ket_bra(L, k, k), oracle::eye(n_max + 1));
    }
    EXPECT_LT(max_abs(ladder_raising(g, b).to_dense() - raise), 1e-15);
    EXPECT_LT(max_abs(ladder_collective_lowering(b).to_dense() - lower), 1e-15);
    EXPECT_LT(max_abs(ladder_excitation(b).to_dense() - exc), 1e-15);
    EXPECT_LT(max_abs(excitation_number(b).to_dense() - (exc + a.adjoint() * a)), 1e-14);
}

TEST(Operators, CommutatorIsIdentityBelowCutoff) {
    BasisSpec b(2, 6);
    auto a = annihilation(b);
    auto comm = (a * a.adjoint() - a.adjoint() * a).to_dense();
    for (int k = 0; k < 2; ++k) {
        for (int n = 0; n < 6; ++n) {
            const int i = b.flat_index(k, n);
            EXPECT_NEAR(comm(i, i).real(), 1.0, 1e-14);
        }
        // The truncation shows up only in the top Fock state.
        const int top = b.flat_index(k, 6);
        EXPECT_NEAR(comm(top, top).real(), -6.0, 1e-13);
    }
}

TEST(Operators, LadderRaisingLengthMismatch) {
    BasisSpec b(3, 2);
    const std::vector<double> g{1.0};
    EXPECT_THROW(ladder_raising(g, b), ConfigError);
}

TEST(Operators, ExcitationBlock) {
    BasisSpec b(2, 3);
    auto blk = excitation_block(b, 2);
    ASSERT_EQ(blk.size(), 2u);
    for (int i : blk) {
        const auto [k, n] = b.unflatten(i);
        EXPECT_EQ(k + n, 2);
    }
    EXPECT_EQ(excitation_block(b, 0).size(), 1u);
    EXPECT_EQ(excitation_block(b, 4).size(), 1u);  // |E,3> only
}

TEST(StateVector, ObservablesAndNormalization) {
    BasisSpec b(2, 3);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(b.dimension());
    v[b.flat_index(0, 2)] = 3.0;
    v[b.flat_index(1, 1)] = cplx(0.0, 4.0);
    StateVector psi(b, v);
    EXPECT_NEAR(psi.norm_squared(), 25.0, 1e-14);
    auto n = psi.normalized();
    EXPECT_NEAR(n.norm_squared(), 1.0, 1e-15);
    EXPECT_NEAR(n.mean_photon(), (9.0 * 2 + 16.0 * 1) / 25.0, 1e-15);
    EXPECT_NEAR(n.mean_photon(), expectation(number_operator(b), n).real(), 1e-14);
    auto pops = n.ladder_populations();
    EXPECT_NEAR(pops[0], 9.0 / 25.0, 1e-15);
    EXPECT_NEAR(pops[1], 16.0 / 25.0, 1e-15);
}

TEST(StateVector, ZeroOrNonFiniteRejected) {
    BasisSpec b(2, 1);
    StateVector zero(b, Eigen::VectorXcd::Zero(b.dimension()));
    EXPECT_THROW(zero.normalized(), NumericalError);
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(b.dimension());
    v[0] = std::numeric_limits<double>::quiet_NaN();
    StateVector bad(b, v);
    EXPECT_FALSE(bad.is_finite());
    EXPECT_THROW(bad.normalized(), NumericalError);
    EXPECT_THROW(StateVector(b, Eigen::VectorXcd::Zero(3)), DimensionError);
}

TEST(StateVector, ApplyAnnihilation) {
    BasisSpec b(2, 3);
    auto psi = StateVector::basis_state(b, 1, 3);
    auto out = apply(annihilation(b), psi);
    EXPECT_NEAR(std::abs(out.amplitude(1, 2)), std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(out.norm_squared(), 3.0, 1e-14);
}
