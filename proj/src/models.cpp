// models.cpp — effective ladder model, jump operators, three-level oracle model

#include "rydcqed/models.hpp"

#include "rydcqed/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rydcqed {

void PhysicalParams::validate() const {
    auto require = [](bool ok, const char* key, const std::string& why) {
        if (!ok) throw ParameterError(std::string(key) + ": " + why);
    };
    require(std::isfinite(atoms) && atoms >= 1.0, "N", "atom count must be >= 1");
    require(std::isfinite(g0) && g0 >= 0.0, "g0", "must be finite and >= 0");
    require(std::isfinite(Omega) && Omega >= 0.0, "Omega", "must be finite and >= 0");
    require(std::isfinite(Delta) && Delta != 0.0, "Delta", "must be finite and nonzero");
    require(std::isfinite(kappa) && kappa > 0.0, "kappa", "must be > 0");
    require(std::isfinite(gamma) && gamma >= 0.0, "gamma", "must be >= 0");
    require(std::isfinite(alpha) && alpha >= 0.0, "alpha", "must be finite and >= 0");
    require(std::isfinite(delta_probe), "delta_probe", "must be finite");
    require(bubbles >= 1, "n_b", "must be >= 1");
    require(photon_cutoff >= 1, "n_max", "must be >= 1");
    require(level_shifts.empty() || static_cast<int>(level_shifts.size()) == bubbles + 1,
            "level_shifts", "must be empty or have n_b + 1 entries");
}

double effective_coupling(const PhysicalParams& p) {
    if (p.Delta == 0.0) throw ParameterError("Delta: must be nonzero");
    return std::sqrt(p.atoms) * p.g0 * p.Omega / p.Delta;
}

std::vector<double> ladder_couplings(const PhysicalParams& p) {
    if (p.bubbles < 1) throw ParameterError("n_b: must be >= 1");
    if (p.Delta == 0.0) throw ParameterError("Delta: must be nonzero");
    const double nb = p.bubbles;
    const double per_bubble = std::sqrt(p.atoms / nb) * p.g0 * p.Omega / p.Delta;
    std::vector<double> g(p.bubbles);
    for (int k = 1; k <= p.bubbles; ++k) g[k - 1] = std::sqrt((nb - k + 1) * k) * per_bubble;
    return g;
}

SparseOperator build_ladder_hamiltonian(const PhysicalParams& p) {
    p.validate();
    const BasisSpec basis = p.basis();
    const auto g = ladder_couplings(p);
    const SparseOperator a = annihilation(basis);
    const SparseOperator coupling = a * ladder_raising(g, basis);

    SparseOperator h = coupling + coupling.adjoint();
    h = h + excitation_number(basis).scaled(-p.delta_probe);
    if (p.alpha != 0.0) h = h + (a + a.adjoint()).scaled(p.alpha);
    if (!p.level_shifts.empty()) {
        std::vector<Entry> e;
        for (int k = 0; k < basis.ladder_levels(); ++k)
            for (int n = 0; n <= basis.photon_cutoff(); ++n)
                e.push_back({basis.flat_index(k, n), basis.flat_index(k, n), p.level_shifts[k]});
        h = h + SparseOperator::from_entries(basis.dimension(), std::move(e));
    }
    return h.with_hermitian_flag(true);
}

std::string_view channel_name(Channel c) {
    return c == Channel::cavity ? "cavity" : "rydberg";
}

std::vector<JumpChannel> jump_operators(const PhysicalParams& p) {
    p.validate();
    const BasisSpec basis = p.basis();
    return {
        {Channel::cavity, annihilation(basis).scaled(std::sqrt(p.photon_decay_rate()))},
        {Channel::rydberg, ladder_collective_lowering(basis).scaled(std::sqrt(p.gamma))},
    };
}

// ---------------------------------------------------------------------------

ThreeLevelBasisSpec::ThreeLevelBasisSpec(int atoms, int max_rydberg, int photon_cutoff)
    : atoms_(atoms), max_rydberg_(max_rydberg), photon_cutoff_(photon_cutoff) {
    if (atoms < 1) throw ParameterError("ThreeLevelBasisSpec: atoms must be >= 1");
    if (max_rydberg < 0) throw ParameterError("ThreeLevelBasisSpec: max_rydberg must be >= 0");
    if (photon_cutoff < 0) throw ParameterError("ThreeLevelBasisSpec: photon_cutoff must be >= 0");
    for (int ne = 0; ne <= std::min(atoms, max_rydberg); ++ne)
        for (int ni = 0; ni + ne <= atoms; ++ni)
            for (int n = 0; n <= photon_cutoff; ++n) labels_.push_back({atoms - ni - ne, ni, ne, n});
}

int ThreeLevelBasisSpec::index_of(int n_g, int n_i, int n_e, int photons) const {
    if (n_g < 0 || n_i < 0 || n_e < 0 || n_g + n_i + n_e != atoms_ || n_e > max_rydberg_ ||
        photons < 0 || photons > photon_cutoff_) {
        return -1;
    }
    // labels_ is ordered by (n_e, n_i, photons); count preceding blocks.
    int idx = 0;
    for (int ne = 0; ne < n_e; ++ne) idx += (atoms_ - ne + 1) * (photon_cutoff_ + 1);
    idx += n_i * (photon_cutoff_ + 1) + photons;
    return idx;
}

SparseOperator build_three_level_full(const ThreeLevelBasisSpec& spec, const PhysicalParams& p,
                                      double U_shift, int dimension_cap) {
    if (spec.dimension() > dimension_cap) {
        throw CapacityError("build_three_level_full: dimension " + std::to_string(spec.dimension()) +
                            " exceeds cap " + std::to_string(dimension_cap));
    }
    const int dim = spec.dimension();
    std::vector<Entry> e;
    for (int s = 0; s < dim; ++s) {
        const auto [ng, ni, ne, n] = spec.label(s);
        const double excitations = n + ni + ne;
        double diag = -p.Delta * ni - p.delta_probe * excitations;
        if (ne >= 2) diag += U_shift;
        if (diag != 0.0) e.push_back({s, s, diag});

        // g0 â Σ|i_j><g_j|: absorbs a photon, g → i.
        if (n >= 1 && ng >= 1) {
            const int t = spec.index_of(ng - 1, ni + 1, ne, n - 1);
            if (t >= 0) {
                const double m = p.g0 * std::sqrt(double(ng) * (ni + 1)) * std::sqrt(double(n));
                e.push_back({t, s, m});
                e.push_back({s, t, m});
            }
        }
        // Ω Σ|e_j><i_j|
        if (ni >= 1) {
            const int t = spec.index_of(ng, ni - 1, ne + 1, n);
            if (t >= 0) {
                const double m = p.Omega * std::sqrt(double(ni) * (ne + 1));
                e.push_back({t, s, m});
                e.push_back({s, t, m});
            }
        }
        // α â†
        if (p.alpha != 0.0 && n < spec.photon_cutoff()) {
            const int t = spec.index_of(ng, ni, ne, n + 1);
            const double m = p.alpha * std::sqrt(double(n + 1));
            e.push_back({t, s, m});
            e.push_back({s, t, m});
        }
    }
    return SparseOperator::from_entries(dim, std::move(e), true);
}

SparseOperator three_level_rydberg_number(const ThreeLevelBasisSpec& spec) {
    std::vector<Entry> e;
    for (int s = 0; s < spec.dimension(); ++s)
        if (spec.label(s).n_e > 0) e.push_back({s, s, double(spec.label(s).n_e)});
    return SparseOperator::from_entries(spec.dimension(), std::move(e), true);
}

SparseOperator three_level_photon_number(const ThreeLevelBasisSpec& spec) {
    std::vector<Entry> e;
    for (int s = 0; s < spec.dimension(); ++s)
        if (spec.label(s).photons > 0) e.push_back({s, s, double(spec.label(s).photons)});
    return SparseOperator::from_entries(spec.dimension(), std::move(e), true);
}

} // namespace rydcqed
