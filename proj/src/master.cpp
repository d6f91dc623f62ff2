// master.cpp

#include "rydcqed/master.hpp"

#include "rydcqed/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include <cmath>
#include <string>

namespace rydcqed {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd rho) : rho_(std::move(rho)) {
    if (rho_.rows() != rho_.cols()) throw DimensionError("DensityMatrix: matrix must be square");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    const auto& v = psi.amplitudes();
    return DensityMatrix(v * v.adjoint());
}

double DensityMatrix::hermiticity_defect() const {
    return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
    const Eigen::MatrixXcd h = 0.5 * (rho_ + rho_.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

void DensityMatrix::validate() const {
    if (!rho_.allFinite()) throw NumericalError("DensityMatrix: non-finite entries");
    if (hermiticity_defect() > 1e-10) throw NumericalError("DensityMatrix: not Hermitian");
    if (std::abs(trace() - 1.0) > 1e-9) throw NumericalError("DensityMatrix: trace != 1");
    if (min_eigenvalue() < -1e-8) throw NumericalError("DensityMatrix: negative eigenvalue");
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    const Eigen::MatrixXcd d = a - b;
    const Eigen::MatrixXcd h = 0.5 * (d + d.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

cplx expectation(const SparseOperator& op, const DensityMatrix& rho) {
    return (op.to_eigen() * rho.matrix()).trace();
}

namespace {

// Sparse pieces of the generator, converted once.
struct Lindbladian {
    Eigen::SparseMatrix<cplx> heff;  // H − (i/2) Σ C†C
    std::vector<Eigen::SparseMatrix<cplx>> c;

    Lindbladian(const SparseOperator& H, const std::vector<JumpChannel>& jumps) {
        SparseOperator decay = SparseOperator::zero(H.dimension());
        for (const auto& j : jumps) {
            if (j.op.dimension() != H.dimension()) {
                throw DimensionError("jump operator dimension does not match the Hamiltonian");
            }
            decay = decay + j.op.adjoint() * j.op;
            c.push_back(j.op.to_eigen());
        }
        heff = (H + decay.scaled(cplx(0.0, -0.5))).to_eigen();
    }

    // Assumes ρ Hermitian: ρ H_eff† = (H_eff ρ)†.
    void apply(const Eigen::MatrixXcd& rho, Eigen::MatrixXcd& out) const {
        const Eigen::MatrixXcd x = cplx(0.0, -1.0) * (heff * rho);
        out = x + x.adjoint();
        for (const auto& cm : c) {
            const Eigen::MatrixXcd y = cm * rho;
            out.noalias() += cm * y.adjoint();
        }
    }
};

void check_cap(int dim, int cap) {
    if (dim > cap) {
        throw CapacityError("master equation: dimension " + std::to_string(dim) +
                            " exceeds oracle cap " + std::to_string(cap));
    }
}

void rk4_advance(const Lindbladian& lv, Eigen::MatrixXcd& rho, double span, double dt) {
    if (span <= 0.0) return;
    const int steps = static_cast<int>(std::ceil(span / dt - 1e-9));
    const double h = span / steps;
    Eigen::MatrixXcd k1, k2, k3, k4;
    for (int s = 0; s < steps; ++s) {
        lv.apply(rho, k1);
        lv.apply(rho + (0.5 * h) * k1, k2);
        lv.apply(rho + (0.5 * h) * k2, k3);
        lv.apply(rho + h * k3, k4);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
}

} // namespace

Eigen::MatrixXcd lindblad_rhs(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                              const Eigen::MatrixXcd& rho) {
    if (rho.rows() != H.dimension()) throw DimensionError("lindblad_rhs: dimension mismatch");
    // General form, no Hermiticity assumption on ρ.
    const Eigen::SparseMatrix<cplx> h = H.to_eigen();
    Eigen::MatrixXcd out = cplx(0.0, -1.0) * (h * rho - rho * h);
    for (const auto& j : jumps) {
        const Eigen::SparseMatrix<cplx> c = j.op.to_eigen();
        const Eigen::SparseMatrix<cplx> cd = c.adjoint();
        const Eigen::SparseMatrix<cplx> cdc = cd * c;
        out += c * rho * cd - 0.5 * (cdc * rho + rho * cdc);
    }
    return out;
}

DensityMatrix master_propagate(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                               const DensityMatrix& rho0, double t_final, double dt,
                               int dimension_cap) {
    return master_propagate_sampled(H, jumps, rho0, {t_final}, dt, dimension_cap).front();
}

std::vector<DensityMatrix> master_propagate_sampled(const SparseOperator& H,
                                                    const std::vector<JumpChannel>& jumps,
                                                    const DensityMatrix& rho0,
                                                    const std::vector<double>& times, double dt,
                                                    int dimension_cap) {
    check_cap(H.dimension(), dimension_cap);
    if (rho0.dimension() != H.dimension()) throw DimensionError("master_propagate: ρ0 dimension mismatch");
    if (!(dt > 0.0)) throw ParameterError("master_propagate: dt must be > 0");
    const Lindbladian lv(H, jumps);
    Eigen::MatrixXcd rho = rho0.matrix();
    double t = 0.0;
    std::vector<DensityMatrix> out;
    out.reserve(times.size());
    for (double target : times) {
        if (target < t) throw ParameterError("master_propagate: sample times must be ascending and >= 0");
        rk4_advance(lv, rho, target - t, dt);
        t = target;
        if (!rho.allFinite()) throw NumericalError("master_propagate: non-finite density matrix");
        out.emplace_back(rho);
    }
    return out;
}

DensityMatrix steady_state(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                           int dimension_cap) {
    const int d = H.dimension();
    check_cap(d, dimension_cap);
    const long n = static_cast<long>(d) * d;

    SparseOperator decay = SparseOperator::zero(d);
    for (const auto& j : jumps) decay = decay + j.op.adjoint() * j.op;
    const SparseOperator heff = H + decay.scaled(cplx(0.0, -0.5));

    // Column-major vec: ρ(i, j) ↦ i + j d. Row 0 carries the trace constraint.
    std::vector<Eigen::Triplet<cplx>> t;
    auto push = [&](long row, long col, cplx v) {
        if (row != 0) t.emplace_back(row, col, v);
    };
    const cplx I(0.0, 1.0);
    for (const auto& e : heff.entries()) {
        for (int j = 0; j < d; ++j) push(e.row + long(j) * d, e.col + long(j) * d, -I * e.value);
        for (int i = 0; i < d; ++i) push(i + long(e.row) * d, i + long(e.col) * d, I * std::conj(e.value));
    }
    for (const auto& jc : jumps) {
        const auto ce = jc.op.entries();
        for (const auto& a : ce)
            for (const auto& b : ce)
                push(a.row + long(b.row) * d, a.col + long(b.col) * d, a.value * std::conj(b.value));
    }
    for (int m = 0; m < d; ++m) t.emplace_back(0, m + long(m) * d, 1.0);

    Eigen::SparseMatrix<cplx> L(n, n);
    L.setFromTriplets(t.begin(), t.end());
    L.makeCompressed();
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n);
    rhs[0] = 1.0;

    Eigen::SparseLU<Eigen::SparseMatrix<cplx>> lu;
    lu.compute(L);
    if (lu.info() != Eigen::Success) {
        throw DegeneracyError("steady_state: Liouvillian with trace constraint is singular (" +
                              lu.lastErrorMessage() + "); the stationary state is not unique");
    }
    Eigen::VectorXcd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) {
        throw DegeneracyError("steady_state: solve failed; the stationary state is not unique");
    }
    const Eigen::VectorXcd r = rhs - L * x;
    x += lu.solve(r);

    Eigen::MatrixXcd rho = Eigen::Map<Eigen::MatrixXcd>(x.data(), d, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();

    const double residual = lindblad_rhs(H, jumps, rho).cwiseAbs().maxCoeff();
    if (!(residual <= 1e-10)) {
        throw DegeneracyError("steady_state: residual max|L(ρ)| = " + std::to_string(residual) +
                              " exceeds 1e-10; null space is degenerate or ill-conditioned");
    }
    return DensityMatrix(std::move(rho));
}

} // namespace rydcqed
