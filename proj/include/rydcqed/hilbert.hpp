// hilbert.hpp — truncated (atomic ladder ⊗ Fock) basis, state vectors and
// compressed sparse operators acting on it.
//
// Layout: the product state |E_k, n> lives at flat index k*(n_max+1) + n.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rydcqed {

using cplx = std::complex<double>;

class BasisSpec {
public:
    // ladder_levels = n_b + 1 (|E_0> ≡ |G> ... |E_{n_b}>), photon_cutoff = n_max.
    BasisSpec(int ladder_levels, int photon_cutoff);

    int ladder_levels() const noexcept { return ladder_levels_; }
    int photon_cutoff() const noexcept { return photon_cutoff_; }
    int fock_size() const noexcept { return photon_cutoff_ + 1; }
    int dimension() const noexcept { return ladder_levels_ * fock_size(); }

    int flat_index(int k, int n) const;
    std::pair<int, int> unflatten(int index) const;

    bool operator==(const BasisSpec&) const = default;

private:
    int ladder_levels_;
    int photon_cutoff_;
};

int flat_index(int k, int n, const BasisSpec& basis);

class StateVector {
public:
    StateVector(BasisSpec basis, Eigen::VectorXcd amplitudes);

    // |E_k, n>
    static StateVector basis_state(const BasisSpec& basis, int k, int n);

    const BasisSpec& basis() const noexcept { return basis_; }
    const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
    Eigen::VectorXcd& amplitudes() noexcept { return amps_; }
    cplx amplitude(int k, int n) const { return amps_[basis_.flat_index(k, n)]; }

    double norm_squared() const { return amps_.squaredNorm(); }
    bool is_finite() const;

    // Throws NumericalError for a zero or non-finite vector.
    StateVector normalized() const;
    void normalize();

    // Diagonal observables evaluated directly from the amplitudes.
    double mean_photon() const;
    std::vector<double> ladder_populations() const;

private:
    BasisSpec basis_;
    Eigen::VectorXcd amps_;
};

struct Entry {
    int row;
    int col;
    cplx value;
};

// Immutable CSR matrix. Entries are canonical: row-major, columns ascending,
// duplicates summed, exact zeros dropped; so `==` is a bit-exact comparison.
class SparseOperator {
public:
    SparseOperator() = default;
    static SparseOperator from_entries(int dimension, std::vector<Entry> entries,
                                       bool hermitian = false);
    static SparseOperator identity(int dimension);
    static SparseOperator zero(int dimension);
    static SparseOperator from_dense(const Eigen::MatrixXcd& m, bool hermitian = false);

    int dimension() const noexcept { return dim_; }
    std::size_t nonzeros() const noexcept { return values_.size(); }
    bool hermitian_flag() const noexcept { return hermitian_; }
    std::vector<Entry> entries() const;
    cplx coeff(int row, int col) const;

    // out = this * in; spans must have length dimension() and must not alias.
    void multiply(std::span<const cplx> in, std::span<cplx> out) const;
    Eigen::VectorXcd operator*(const Eigen::VectorXcd& v) const;

    SparseOperator adjoint() const;
    SparseOperator operator*(const SparseOperator& rhs) const;
    SparseOperator operator+(const SparseOperator& rhs) const;
    SparseOperator operator-(const SparseOperator& rhs) const;
    SparseOperator scaled(cplx factor) const;
    SparseOperator with_hermitian_flag(bool flag) const;

    double max_hermiticity_defect() const;   // ‖H − H†‖_max
    Eigen::MatrixXcd to_dense() const;
    Eigen::SparseMatrix<cplx> to_eigen() const;

    bool operator==(const SparseOperator& o) const {
        return dim_ == o.dim_ && row_ptr_ == o.row_ptr_ && cols_ == o.cols_ &&
               values_ == o.values_;
    }

private:
    int dim_ = 0;
    std::vector<int> row_ptr_{0};
    std::vector<int> cols_;
    std::vector<cplx> values_;
    bool hermitian_ = false;
};

// Exact sparse mat-vec; unnormalized result.
StateVector apply(const SparseOperator& op, const StateVector& psi);
// <ψ|O|ψ> without normalization.
cplx expectation(const SparseOperator& op, const StateVector& psi);

// â ⊗ identity on the ladder factor.
SparseOperator annihilation(const BasisSpec& basis);
SparseOperator number_operator(const BasisSpec& basis);
// Σ_k g_k |E_k, n><E_{k-1}, n|; couplings.size() must be ladder_levels − 1.
SparseOperator ladder_raising(std::span<const double> couplings, const BasisSpec& basis);
// Σ_k k |E_k><E_k|
SparseOperator ladder_excitation(const BasisSpec& basis);
// L|E_k, n> = √k |E_{k-1}, n>
SparseOperator ladder_collective_lowering(const BasisSpec& basis);
// â†â + Σ_k k|E_k><E_k|
SparseOperator excitation_number(const BasisSpec& basis);
// Flat indices of the states with total excitation k + n == n_exc.
std::vector<int> excitation_block(const BasisSpec& basis, int n_exc);

} // namespace rydcqed
