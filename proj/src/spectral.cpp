// spectral.cpp

#include "rydcqed/spectral.hpp"

#include "rydcqed/errors.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <string>

namespace rydcqed {

std::pair<double, double> dressed_frequencies(int n, const PhysicalParams& p) {
    if (p.bubbles != 1) {
        throw ParameterError("dressed_frequencies: closed form holds for n_b = 1 only; "
                             "use ladder_spectrum for n_b = " + std::to_string(p.bubbles));
    }
    if (n < 0) throw ParameterError("dressed_frequencies: n must be >= 0");
    const double w = effective_coupling(p) * std::sqrt(double(n));
    return {w, -w};
}

std::vector<DressedLevel> dressed_ladder(int n_max, const PhysicalParams& p) {
    std::vector<DressedLevel> out;
    for (int n = 1; n <= n_max; ++n) {
        const auto [plus, minus] = dressed_frequencies(n, p);
        out.push_back({n, +1, plus});
        out.push_back({n, -1, minus});
    }
    return out;
}

std::pair<double, double> n_photon_resonance(int n, const PhysicalParams& p) {
    if (n < 1) throw ParameterError("n_photon_resonance: n must be >= 1");
    const double d = effective_coupling(p) / std::sqrt(double(n));
    return {d, -d};
}

PerturbativeStrengths perturbative_strengths(const PhysicalParams& p) {
    const double g = effective_coupling(p);
    PerturbativeStrengths s{};
    s.beta1 = p.alpha / std::sqrt(2.0);
    s.p1 = s.beta1 * s.beta1 / (p.kappa * p.kappa / 4.0);
    s.n_avg1 = s.p1 / 2.0;
    s.beta2 = g > 0.0 ? 3.0 * p.alpha * p.alpha / g : 0.0;
    const double kappa_prime = 1.5 * p.kappa;
    s.p2 = s.beta2 * s.beta2 / (kappa_prime * kappa_prime);
    s.n_avg2 = 1.5 * s.p2;
    return s;
}

std::vector<double> ladder_spectrum(const PhysicalParams& p, int n_exc) {
    if (n_exc < 0 || n_exc > p.photon_cutoff) {
        throw ParameterError("ladder_spectrum: n_exc = " + std::to_string(n_exc) +
                             " exceeds photon cutoff n_max = " + std::to_string(p.photon_cutoff));
    }
    PhysicalParams q = p;
    q.alpha = 0.0;
    q.delta_probe = 0.0;
    const SparseOperator h = build_ladder_hamiltonian(q);
    const auto idx = excitation_block(q.basis(), n_exc);
    const int m = static_cast<int>(idx.size());
    Eigen::MatrixXcd block(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) block(r, c) = h.coeff(idx[r], idx[c]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("ladder_spectrum: eigensolver failed");
    std::vector<double> ev(es.eigenvalues().data(), es.eigenvalues().data() + m);
    std::sort(ev.begin(), ev.end());
    return ev;
}

BlockadeDetuning blockade_detuning(const PhysicalParams& p) {
    if (p.bubbles < 1) throw ParameterError("n_b: must be >= 1");
    const double g = effective_coupling(p);
    const double nb = p.bubbles;
    return {2.0 * (1.0 - std::sqrt(1.0 - 1.0 / (2.0 * nb))) * g, g / (2.0 * nb)};
}

} // namespace rydcqed
