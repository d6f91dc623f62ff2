// models.hpp — Hamiltonians and jump operators for the Rydberg super-atom
// coupled to a driven cavity mode.
//
// Units: every frequency and rate is an angular frequency in rad/µs (ħ = 1).
// Use `mhz()` to convert a value quoted as 2π × ν MHz.

#pragma once

#include "rydcqed/hilbert.hpp"

#include <numbers>
#include <string_view>
#include <vector>

namespace rydcqed {

constexpr double mhz(double nu) { return 2.0 * std::numbers::pi * nu; }
constexpr double to_mhz(double omega) { return omega / (2.0 * std::numbers::pi); }

struct PhysicalParams {
    double atoms = 1000.0;        // N
    double g0 = mhz(10.0);        // single-atom cavity coupling on g → i
    double Omega = mhz(30.0);     // classical Rabi frequency on i → e
    double Delta = mhz(900.0);    // intermediate-state detuning
    double kappa = mhz(1.3);      // cavity field (amplitude) decay rate
    double gamma = mhz(0.00055);  // Rydberg decay rate
    double alpha = 0.0;           // probe amplitude
    double delta_probe = 0.0;     // probe detuning ω − ω_c
    int bubbles = 1;              // n_b
    int photon_cutoff = 6;        // n_max
    // Optional diagonal energy correction per ladder level k (dispersive shifts);
    // empty means zero.
    std::vector<double> level_shifts;

    static PhysicalParams defaults() { return {}; }

    // Photons leave the cavity at rate 2κ: C_cav = √(2κ) â.
    double photon_decay_rate() const { return 2.0 * kappa; }

    BasisSpec basis() const { return {bubbles + 1, photon_cutoff}; }

    // Throws ParameterError naming the offending field.
    void validate() const;
};

// √N g0 Ω / Δ
double effective_coupling(const PhysicalParams& p);

// g_k = √((n_b − k + 1) k) √(N / n_b) g0 Ω / Δ, k = 1..n_b.
std::vector<double> ladder_couplings(const PhysicalParams& p);

// Probe-frame ladder Hamiltonian
//   H = −δ â†â − δ Σ k|E_k><E_k| + [â Σ g_k |E_k><E_{k−1}| + h.c.] + α(â + â†)
// For n_b = 1 this is the driven Jaynes-Cummings model.
SparseOperator build_ladder_hamiltonian(const PhysicalParams& p);

enum class Channel { cavity, rydberg };
std::string_view channel_name(Channel c);

struct JumpChannel {
    Channel channel;
    SparseOperator op;
};

// {C_cav = √(2κ) â, C_ryd = √γ L} with L|E_k, n> = √k |E_{k−1}, n>.
std::vector<JumpChannel> jump_operators(const PhysicalParams& p);

// ---------------------------------------------------------------------------
// Full three-level collective model in the permutation-symmetric sector.

class ThreeLevelBasisSpec {
public:
    struct Label {
        int n_g, n_i, n_e, photons;
    };

    ThreeLevelBasisSpec(int atoms, int max_rydberg, int photon_cutoff);

    int atoms() const noexcept { return atoms_; }
    int max_rydberg() const noexcept { return max_rydberg_; }
    int photon_cutoff() const noexcept { return photon_cutoff_; }
    int dimension() const noexcept { return static_cast<int>(labels_.size()); }

    const Label& label(int index) const { return labels_.at(index); }
    // −1 when the label is outside the truncated basis.
    int index_of(int n_g, int n_i, int n_e, int photons) const;

private:
    int atoms_;
    int max_rydberg_;
    int photon_cutoff_;
    std::vector<Label> labels_;
};

// Probe-frame version of
//   H = −Δ n_i + [g0 â† Σ|g_j><i_j| + h.c.] + [Ω Σ|e_j><i_j| + h.c.]
// with −δ per excitation quantum (photons, i- and e-excitations), the probe
// drive α(â + â†), and U_shift on states with n_e ≥ 2.
SparseOperator build_three_level_full(const ThreeLevelBasisSpec& spec, const PhysicalParams& p,
                                      double U_shift, int dimension_cap = 4096);

// Σ_j |e_j><e_j| on the three-level basis.
SparseOperator three_level_rydberg_number(const ThreeLevelBasisSpec& spec);
SparseOperator three_level_photon_number(const ThreeLevelBasisSpec& spec);

} // namespace rydcqed
