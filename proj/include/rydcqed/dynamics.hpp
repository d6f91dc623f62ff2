// dynamics.hpp — Monte-Carlo wave-function trajectories with quantum jumps.
//
// Between jumps the unnormalized state follows
//     dψ/dt = −i H_eff ψ,   H_eff = H − (i/2) Σ_m C_m† C_m
// integrated with fixed-step RK4. A jump happens when ‖ψ‖² falls to a uniform
// threshold r; the crossing time is bisected to `jump_time_tol`, the channel is
// drawn with weight ‖C_m ψ‖², and ψ ← C_m ψ / ‖C_m ψ‖.

#pragma once

#include "rydcqed/hilbert.hpp"
#include "rydcqed/models.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

namespace rydcqed {

struct TrajectoryConfig {
    double t_final = 20.0;        // µs
    double dt_max = 1e-3;         // µs
    double sample_dt = 0.01;      // µs
    std::uint64_t seed = 1;
    double jump_time_tol = 1e-6;  // µs
    double norm_floor = 1e-30;
    bool record_states = false;   // keep normalized ψ at every sample time

    // 0 < dt_max ≤ sample_dt ≤ t_final, jump_time_tol ≤ dt_max / 10.
    void validate() const;
    int sample_count() const;     // number of samples after t = 0
};

struct ClickEvent {
    double time;
    Channel channel;
    double photon_before;  // <n> of the normalized state just before the jump
    double photon_after;   // <n> just after
};

struct ClickRecord {
    std::vector<ClickEvent> events;

    std::size_t count(Channel c) const;
    std::vector<double> times(Channel c) const;
};

struct TrajectoryRecord {
    std::vector<double> sample_times;
    std::vector<double> mean_photon;
    std::vector<std::vector<double>> ladder_populations;  // [level][sample]
    // Cavity clicks in (t_{k−1}, t_k]; 0 or 1 for a single trajectory, the mean
    // over trajectories for an ensemble average.
    std::vector<double> click_in_interval;
    ClickRecord clicks;
    std::uint64_t seed_used = 0;
    std::uint64_t stream = 0;
    std::vector<Eigen::VectorXcd> states;  // filled when record_states
};

// Cψ / ‖Cψ‖; throws InvalidJumpError when Cψ = 0.
StateVector apply_jump(const SparseOperator& C, const StateVector& psi);

TrajectoryRecord run_trajectory(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                                const StateVector& psi0, const TrajectoryConfig& cfg,
                                std::uint64_t stream = 0);

// As run_trajectory, but H is replaced by `H_after_click` at the first cavity
// click (the probe-off quench).
TrajectoryRecord run_trajectory_with_quench(const SparseOperator& H,
                                            const SparseOperator& H_after_click,
                                            const std::vector<JumpChannel>& jumps,
                                            const StateVector& psi0, const TrajectoryConfig& cfg,
                                            std::uint64_t stream = 0);

enum class Execution { serial, parallel };

struct EnsembleOptions {
    std::size_t trajectories = 1;
    Execution execution = Execution::parallel;
    int workers = 0;  // 0: OpenMP default
    std::optional<SparseOperator> quench_hamiltonian;
};

struct EnsembleResult {
    TrajectoryRecord average;                  // clicks empty; see per_trajectory
    std::vector<ClickRecord> per_trajectory;   // indexed by trajectory
    std::vector<Eigen::MatrixXcd> density;     // ⟨|ψ><ψ|⟩ per sample when record_states
};

// Trajectory i uses stream (cfg.seed, i). The merged result is bit-identical
// for every execution mode and worker count.
EnsembleResult run_ensemble(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                            const StateVector& psi0, const TrajectoryConfig& cfg,
                            const EnsembleOptions& options);

} // namespace rydcqed
