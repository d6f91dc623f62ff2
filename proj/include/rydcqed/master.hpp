// master.hpp — Lindblad master equation: propagation and steady state.
//
//   dρ/dt = −i[H, ρ] + Σ_m (C_m ρ C_m† − ½{C_m† C_m, ρ})
//
// Dense ρ with sparse operator products; used as the exact oracle for the
// trajectory ensemble.

#pragma once

#include "rydcqed/hilbert.hpp"
#include "rydcqed/models.hpp"

#include <Eigen/Dense>

#include <vector>

namespace rydcqed {

constexpr int kDefaultOracleCap = 256;

class DensityMatrix {
public:
    explicit DensityMatrix(Eigen::MatrixXcd rho);
    static DensityMatrix pure(const StateVector& psi);

    int dimension() const noexcept { return static_cast<int>(rho_.rows()); }
    const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }

    double trace() const { return rho_.trace().real(); }
    double hermiticity_defect() const;
    double min_eigenvalue() const;
    // Throws NumericalError unless Hermitian to 1e−10, trace 1 ± 1e−9 and
    // min eigenvalue ≥ −1e−8.
    void validate() const;

private:
    Eigen::MatrixXcd rho_;
};

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);
cplx expectation(const SparseOperator& op, const DensityMatrix& rho);

// L(ρ) evaluated densely.
Eigen::MatrixXcd lindblad_rhs(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                              const Eigen::MatrixXcd& rho);

// Fixed-step RK4 to t_final with step ≤ dt.
DensityMatrix master_propagate(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                               const DensityMatrix& rho0, double t_final, double dt,
                               int dimension_cap = kDefaultOracleCap);

// ρ(t) at each of the ascending `times` (t ≥ 0), same integrator.
std::vector<DensityMatrix> master_propagate_sampled(const SparseOperator& H,
                                                    const std::vector<JumpChannel>& jumps,
                                                    const DensityMatrix& rho0,
                                                    const std::vector<double>& times, double dt,
                                                    int dimension_cap = kDefaultOracleCap);

// Null vector of the Liouvillian with unit trace, via sparse LU on the
// vectorized generator with one row replaced by the trace constraint.
// Throws DegeneracyError if the stationary state is not unique.
DensityMatrix steady_state(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                           int dimension_cap = kDefaultOracleCap);

} // namespace rydcqed
