// hilbert.cpp — basis indexing and sparse operator algebra

#include "rydcqed/hilbert.hpp"

#include "rydcqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rydcqed {

BasisSpec::BasisSpec(int ladder_levels, int photon_cutoff)
    : ladder_levels_(ladder_levels), photon_cutoff_(photon_cutoff) {
    if (ladder_levels < 2) {
        throw ParameterError("BasisSpec: ladder_levels must be >= 2, got " +
                             std::to_string(ladder_levels));
    }
    if (photon_cutoff < 1) {
        throw ParameterError("BasisSpec: photon_cutoff must be >= 1, got " +
                             std::to_string(photon_cutoff));
    }
}

int BasisSpec::flat_index(int k, int n) const {
    if (k < 0 || k >= ladder_levels_) {
        throw IndexError("flat_index: ladder level " + std::to_string(k) + " out of range [0, " +
                         std::to_string(ladder_levels_) + ")");
    }
    if (n < 0 || n > photon_cutoff_) {
        throw IndexError("flat_index: photon number " + std::to_string(n) +
                         " out of range [0, " + std::to_string(photon_cutoff_) + "]");
    }
    return k * fock_size() + n;
}

std::pair<int, int> BasisSpec::unflatten(int index) const {
    if (index < 0 || index >= dimension()) {
        throw IndexError("unflatten: index " + std::to_string(index) + " out of range");
    }
    return {index / fock_size(), index % fock_size()};
}

int flat_index(int k, int n, const BasisSpec& basis) { return basis.flat_index(k, n); }

// ---------------------------------------------------------------------------

StateVector::StateVector(BasisSpec basis, Eigen::VectorXcd amplitudes)
    : basis_(basis), amps_(std::move(amplitudes)) {
    if (amps_.size() != basis_.dimension()) {
        throw DimensionError("StateVector: amplitude length " + std::to_string(amps_.size()) +
                             " != basis dimension " + std::to_string(basis_.dimension()));
    }
}

StateVector StateVector::basis_state(const BasisSpec& basis, int k, int n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(basis.dimension());
    v[basis.flat_index(k, n)] = 1.0;
    return {basis, std::move(v)};
}

bool StateVector::is_finite() const { return amps_.allFinite(); }

void StateVector::normalize() {
    const double n2 = amps_.squaredNorm();
    if (!std::isfinite(n2) || n2 <= 0.0) {
        throw NumericalError("StateVector::normalize: norm is zero or non-finite");
    }
    amps_ /= std::sqrt(n2);
}

StateVector StateVector::normalized() const {
    StateVector out = *this;
    out.normalize();
    return out;
}

double StateVector::mean_photon() const {
    const int f = basis_.fock_size();
    double acc = 0.0;
    for (int i = 0; i < amps_.size(); ++i) acc += std::norm(amps_[i]) * (i % f);
    return acc;
}

std::vector<double> StateVector::ladder_populations() const {
    const int f = basis_.fock_size();
    std::vector<double> pops(basis_.ladder_levels(), 0.0);
    for (int i = 0; i < amps_.size(); ++i) pops[i / f] += std::norm(amps_[i]);
    return pops;
}

// ---------------------------------------------------------------------------

SparseOperator SparseOperator::from_entries(int dimension, std::vector<Entry> entries,
                                            bool hermitian) {
    if (dimension < 0) throw DimensionError("SparseOperator: negative dimension");
    for (const auto& e : entries) {
        if (e.row < 0 || e.row >= dimension || e.col < 0 || e.col >= dimension) {
            throw IndexError("SparseOperator: entry (" + std::to_string(e.row) + ", " +
                             std::to_string(e.col) + ") outside dimension " +
                             std::to_string(dimension));
        }
    }
    std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseOperator op;
    op.dim_ = dimension;
    op.hermitian_ = hermitian;
    op.row_ptr_.assign(static_cast<std::size_t>(dimension) + 1, 0);
    for (std::size_t i = 0; i < entries.size();) {
        const int r = entries[i].row;
        const int c = entries[i].col;
        cplx sum = 0.0;
        for (; i < entries.size() && entries[i].row == r && entries[i].col == c; ++i) {
            sum += entries[i].value;
        }
        if (sum != cplx(0.0)) {
            op.cols_.push_back(c);
            op.values_.push_back(sum);
            ++op.row_ptr_[static_cast<std::size_t>(r) + 1];
        }
    }
    for (int r = 0; r < dimension; ++r) op.row_ptr_[r + 1] += op.row_ptr_[r];
    return op;
}

SparseOperator SparseOperator::identity(int dimension) {
    std::vector<Entry> e;
    e.reserve(dimension);
    for (int i = 0; i < dimension; ++i) e.push_back({i, i, 1.0});
    return from_entries(dimension, std::move(e), true);
}

SparseOperator SparseOperator::zero(int dimension) { return from_entries(dimension, {}, true); }

SparseOperator SparseOperator::from_dense(const Eigen::MatrixXcd& m, bool hermitian) {
    if (m.rows() != m.cols()) throw DimensionError("from_dense: matrix must be square");
    std::vector<Entry> e;
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c)
            if (m(r, c) != cplx(0.0)) e.push_back({r, c, m(r, c)});
    return from_entries(static_cast<int>(m.rows()), std::move(e), hermitian);
}

std::vector<Entry> SparseOperator::entries() const {
    std::vector<Entry> out;
    out.reserve(values_.size());
    for (int r = 0; r < dim_; ++r)
        for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) out.push_back({r, cols_[p], values_[p]});
    return out;
}

cplx SparseOperator::coeff(int row, int col) const {
    if (row < 0 || row >= dim_ || col < 0 || col >= dim_) {
        throw IndexError("SparseOperator::coeff: index out of range");
    }
    const auto first = cols_.begin() + row_ptr_[row];
    const auto last = cols_.begin() + row_ptr_[row + 1];
    const auto it = std::lower_bound(first, last, col);
    return (it != last && *it == col) ? values_[it - cols_.begin()] : cplx(0.0);
}

void SparseOperator::multiply(std::span<const cplx> in, std::span<cplx> out) const {
    const int* rp = row_ptr_.data();
    const int* ci = cols_.data();
    const cplx* v = values_.data();
    for (int r = 0; r < dim_; ++r) {
        cplx acc = 0.0;
        for (int p = rp[r]; p < rp[r + 1]; ++p) acc += v[p] * in[ci[p]];
        out[r] = acc;
    }
}

Eigen::VectorXcd SparseOperator::operator*(const Eigen::VectorXcd& v) const {
    if (v.size() != dim_) {
        throw DimensionError("SparseOperator: vector length " + std::to_string(v.size()) +
                             " != dimension " + std::to_string(dim_));
    }
    Eigen::VectorXcd out(dim_);
    multiply({v.data(), static_cast<std::size_t>(dim_)}, {out.data(), static_cast<std::size_t>(dim_)});
    return out;
}

SparseOperator SparseOperator::adjoint() const {
    std::vector<Entry> e;
    e.reserve(values_.size());
    for (const auto& x : entries()) e.push_back({x.col, x.row, std::conj(x.value)});
    return from_entries(dim_, std::move(e), hermitian_);
}

SparseOperator SparseOperator::operator*(const SparseOperator& rhs) const {
    if (rhs.dim_ != dim_) throw DimensionError("SparseOperator product: dimension mismatch");
    std::vector<Entry> e;
    for (int r = 0; r < dim_; ++r)
        for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p) {
            const int k = cols_[p];
            for (int q = rhs.row_ptr_[k]; q < rhs.row_ptr_[k + 1]; ++q)
                e.push_back({r, rhs.cols_[q], values_[p] * rhs.values_[q]});
        }
    return from_entries(dim_, std::move(e), false);
}

SparseOperator SparseOperator::operator+(const SparseOperator& rhs) const {
    if (rhs.dim_ != dim_) throw DimensionError("SparseOperator sum: dimension mismatch");
    auto e = entries();
    auto f = rhs.entries();
    e.insert(e.end(), f.begin(), f.end());
    return from_entries(dim_, std::move(e), hermitian_ && rhs.hermitian_);
}

SparseOperator SparseOperator::operator-(const SparseOperator& rhs) const {
    return *this + rhs.scaled(-1.0);
}

SparseOperator SparseOperator::scaled(cplx factor) const {
    auto e = entries();
    for (auto& x : e) x.value *= factor;
    return from_entries(dim_, std::move(e), hermitian_ && factor.imag() == 0.0);
}

SparseOperator SparseOperator::with_hermitian_flag(bool flag) const {
    SparseOperator out = *this;
    out.hermitian_ = flag;
    return out;
}

double SparseOperator::max_hermiticity_defect() const {
    double worst = 0.0;
    for (int r = 0; r < dim_; ++r)
        for (int p = row_ptr_[r]; p < row_ptr_[r + 1]; ++p)
            worst = std::max(worst, std::abs(values_[p] - std::conj(coeff(cols_[p], r))));
    return worst;
}

Eigen::MatrixXcd SparseOperator::to_dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim_, dim_);
    for (const auto& x : entries()) m(x.row, x.col) = x.value;
    return m;
}

Eigen::SparseMatrix<cplx> SparseOperator::to_eigen() const {
    std::vector<Eigen::Triplet<cplx>> t;
    t.reserve(values_.size());
    for (const auto& x : entries()) t.emplace_back(x.row, x.col, x.value);
    Eigen::SparseMatrix<cplx> m(dim_, dim_);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

// ---------------------------------------------------------------------------

StateVector apply(const SparseOperator& op, const StateVector& psi) {
    return {psi.basis(), op * psi.amplitudes()};
}

cplx expectation(const SparseOperator& op, const StateVector& psi) {
    return psi.amplitudes().dot(op * psi.amplitudes());
}

SparseOperator annihilation(const BasisSpec& basis) {
    std::vector<Entry> e;
    for (int k = 0; k < basis.ladder_levels(); ++k)
        for (int n = 1; n <= basis.photon_cutoff(); ++n)
            e.push_back({basis.flat_index(k, n - 1), basis.flat_index(k, n), std::sqrt(double(n))});
    return SparseOperator::from_entries(basis.dimension(), std::move(e));
}

SparseOperator number_operator(const BasisSpec& basis) {
    std::vector<Entry> e;
    for (int k = 0; k < basis.ladder_levels(); ++k)
        for (int n = 1; n <= basis.photon_cutoff(); ++n)
            e.push_back({basis.flat_index(k, n), basis.flat_index(k, n), double(n)});
    return SparseOperator::from_entries(basis.dimension(), std::move(e), true);
}

SparseOperator ladder_raising(std::span<const double> couplings, const BasisSpec& basis) {
    if (static_cast<int>(couplings.size()) != basis.ladder_levels() - 1) {
        throw ConfigError("ladder_raising: expected " + std::to_string(basis.ladder_levels() - 1) +
                          " couplings, got " + std::to_string(couplings.size()));
    }
    std::vector<Entry> e;
    for (int k = 1; k < basis.ladder_levels(); ++k)
        for (int n = 0; n <= basis.photon_cutoff(); ++n)
            e.push_back({basis.flat_index(k, n), basis.flat_index(k - 1, n), couplings[k - 1]});
    return SparseOperator::from_entries(basis.dimension(), std::move(e));
}

SparseOperator ladder_excitation(const BasisSpec& basis) {
    std::vector<Entry> e;
    for (int k = 1; k < basis.ladder_levels(); ++k)
        for (int n = 0; n <= basis.photon_cutoff(); ++n)
            e.push_back({basis.flat_index(k, n), basis.flat_index(k, n), double(k)});
    return SparseOperator::from_entries(basis.dimension(), std::move(e), true);
}

SparseOperator ladder_collective_lowering(const BasisSpec& basis) {
    std::vector<Entry> e;
    for (int k = 1; k < basis.ladder_levels(); ++k)
        for (int n = 0; n <= basis.photon_cutoff(); ++n)
            e.push_back({basis.flat_index(k - 1, n), basis.flat_index(k, n), std::sqrt(double(k))});
    return SparseOperator::from_entries(basis.dimension(), std::move(e));
}

SparseOperator excitation_number(const BasisSpec& basis) {
    return number_operator(basis) + ladder_excitation(basis);
}

std::vector<int> excitation_block(const BasisSpec& basis, int n_exc) {
    std::vector<int> idx;
    for (int k = 0; k < basis.ladder_levels(); ++k) {
        const int n = n_exc - k;
        if (n >= 0 && n <= basis.photon_cutoff()) idx.push_back(basis.flat_index(k, n));
    }
    return idx;
}

} // namespace rydcqed
