// observables.hpp — transmission spectra, photon statistics and burst analysis
// built on steady states and trajectory records.

#pragma once

#include "rydcqed/dynamics.hpp"
#include "rydcqed/master.hpp"
#include "rydcqed/models.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace rydcqed {

struct SpectrumResult {
    std::vector<double> detunings;       // rad/µs
    std::vector<double> mean_photon_ss;
    std::vector<double> output_flux;     // photons/µs leaving the cavity, 2κ <n>
    std::vector<double> g2_zero;         // NaN where <n> = 0
};

// Steady state at every probe detuning in `grid`.
SpectrumResult transmission_spectrum(const PhysicalParams& p, std::span<const double> grid,
                                     Execution execution = Execution::parallel, int workers = 0);

double mean_photon(const DensityMatrix& rho, const BasisSpec& basis);
// <a†a†aa> / <a†a>²
double g2_zero(const DensityMatrix& rho, const BasisSpec& basis);
// <a†a†aa> / <a†a>: mean photon number just after a click, averaged over clicks.
double post_click_photon(const DensityMatrix& rho, const BasisSpec& basis);

// (1/w) ∫_0^w g²(τ) dτ from the quantum regression theorem, starting at ρ_ss.
double g2_window_from_density(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                              const DensityMatrix& rho_ss, const BasisSpec& basis, double window,
                              double dt);

// Mean over all cavity clicks of <n>(t_click + τ). τ = 0 uses the exact
// post-jump value; τ > 0 interpolates the sampled record. nullopt when the
// records contain no cavity click. Delays with no usable click yield NaN.
std::optional<std::vector<double>> conditional_mean_photon_after_click(
    std::span<const TrajectoryRecord> records, std::span<const double> delays);

struct Histogram {
    std::vector<double> edges;   // ascending, size = counts.size() + 1
    std::vector<long> counts;
    long overflow = 0;           // values ≥ edges.back()
    long total() const;
};

// Consecutive cavity inter-click intervals within each record.
std::vector<double> waiting_times(std::span<const ClickRecord> clicks);
// nullopt with fewer than two pooled clicks.
std::optional<Histogram> waiting_time_histogram(std::span<const ClickRecord> clicks,
                                                std::span<const double> edges);

struct BurstHistogram {
    double window = 0.0;
    std::map<int, long> counts;  // multiplicity → occurrences

    long bursts() const;
    long total_clicks() const;
    double mean_multiplicity() const;
    void merge(const BurstHistogram& other);
};

// Greedy clustering of ascending click times: a click joins the current burst
// when its gap to the previous click is ≤ window.
BurstHistogram burst_statistics(std::span<const double> times, double window);
BurstHistogram burst_statistics(std::span<const ClickRecord> clicks, double window);
// Multiplicity of the burst containing the first cavity click; 0 without clicks.
int first_burst_multiplicity(const ClickRecord& clicks, double window);

struct G2Estimate {
    double value = 0.0;
    double std_error = 0.0;
    long clicks = 0;
    long coincidences = 0;
    bool sufficient = false;  // at least 100 clicks
};

// Coincidence estimator over cavity clicks in [t_begin, t_end]: pairs closer
// than `window`, normalized by the squared mean rate. std_error is the larger
// of a trajectory bootstrap and the Poisson error of the coincidence count
// (floored at one count).
G2Estimate g2_zero_from_clicks(std::span<const ClickRecord> clicks, double window, double t_begin,
                               double t_end, int bootstrap_samples = 400,
                               std::uint64_t bootstrap_seed = 7);

} // namespace rydcqed
