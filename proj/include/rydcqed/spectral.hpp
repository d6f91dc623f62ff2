// spectral.hpp — dressed-state ladder, multi-photon resonances, perturbative
// line strengths and the combinatorial blockade detuning.
//
// All frequencies are rotating-frame offsets (relative to n ω_c) in rad/µs.

#pragma once

#include "rydcqed/models.hpp"

#include <utility>
#include <vector>

namespace rydcqed {

struct DressedLevel {
    int n;
    int branch;               // +1 or −1
    double frequency_offset;  // branch · g_eff √n
};

// (+g_eff √n, −g_eff √n); requires n_b == 1. n == 0 gives (0, 0).
std::pair<double, double> dressed_frequencies(int n, const PhysicalParams& p);
std::vector<DressedLevel> dressed_ladder(int n_max, const PhysicalParams& p);

// Probe detunings (+g_eff/√n, −g_eff/√n) of the n-photon resonances.
std::pair<double, double> n_photon_resonance(int n, const PhysicalParams& p);

struct PerturbativeStrengths {
    double beta1;   // α/√2
    double p1;      // β1² / (κ²/4)
    double n_avg1;  // p1 / 2
    double beta2;   // 3α² / g_eff
    double p2;      // β2² / κ'², κ' = 3κ/2
    double n_avg2;  // 3 p2 / 2
};

// Order-of-magnitude estimates on resonance (δ measured from the dressed state = 0).
PerturbativeStrengths perturbative_strengths(const PhysicalParams& p);

// Ascending eigenvalues of the n_exc-excitation block of the undriven ladder
// Hamiltonian at δ = 0.
std::vector<double> ladder_spectrum(const PhysicalParams& p, int n_exc);

struct BlockadeDetuning {
    double exact;       // 2(1 − √(1 − 1/(2 n_b))) g_eff
    double asymptotic;  // g_eff / (2 n_b)
};
BlockadeDetuning blockade_detuning(const PhysicalParams& p);

} // namespace rydcqed
