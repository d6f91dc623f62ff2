// observables.cpp

#include "rydcqed/observables.hpp"

#include "rydcqed/errors.hpp"
#include "rydcqed/rng.hpp"
#include "rydcqed/stats.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace rydcqed {

namespace {

// <a†^m a^m> for a diagonal-in-Fock-number evaluation: Σ_i ρ_ii n(n−1)…(n−m+1).
double factorial_moment(const DensityMatrix& rho, const BasisSpec& basis, int m) {
    if (rho.dimension() != basis.dimension()) {
        throw DimensionError("density matrix does not match the basis");
    }
    double acc = 0.0;
    for (int i = 0; i < basis.dimension(); ++i) {
        const int n = i % basis.fock_size();
        double f = 1.0;
        for (int j = 0; j < m; ++j) f *= (n - j);
        acc += rho.matrix()(i, i).real() * f;
    }
    return acc;
}

} // namespace

double mean_photon(const DensityMatrix& rho, const BasisSpec& basis) {
    return factorial_moment(rho, basis, 1);
}

double g2_zero(const DensityMatrix& rho, const BasisSpec& basis) {
    const double n = factorial_moment(rho, basis, 1);
    if (!(n > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return factorial_moment(rho, basis, 2) / (n * n);
}

double post_click_photon(const DensityMatrix& rho, const BasisSpec& basis) {
    const double n = factorial_moment(rho, basis, 1);
    if (!(n > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    return factorial_moment(rho, basis, 2) / n;
}

SpectrumResult transmission_spectrum(const PhysicalParams& p, std::span<const double> grid,
                                     Execution execution, int workers) {
    if (grid.empty()) throw ParameterError("transmission_spectrum: empty detuning grid");
    p.validate();
    const auto count = static_cast<long>(grid.size());
    SpectrumResult out;
    out.detunings.assign(grid.begin(), grid.end());
    out.mean_photon_ss.resize(grid.size());
    out.output_flux.resize(grid.size());
    out.g2_zero.resize(grid.size());
    std::vector<std::string> failure(grid.size()), kind(grid.size());
    const BasisSpec basis = p.basis();

    auto solve_one = [&](long i) {
        try {
            PhysicalParams q = p;
            q.delta_probe = grid[i];
            const DensityMatrix rho = steady_state(build_ladder_hamiltonian(q), jump_operators(q));
            const double n = mean_photon(rho, basis);
            out.mean_photon_ss[i] = n;
            out.output_flux[i] = q.photon_decay_rate() * n;
            out.g2_zero[i] = g2_zero(rho, basis);
        } catch (const Error& e) {
            kind[i] = e.kind();
            failure[i] = e.what();
        }
    };

    if (execution == Execution::parallel) {
        const int nt = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic, 4) num_threads(nt)
        for (long i = 0; i < count; ++i) solve_one(i);
    } else {
        for (long i = 0; i < count; ++i) solve_one(i);
    }
    for (long i = 0; i < count; ++i) {
        if (!failure[i].empty()) {
            throw Error(kind[i], "transmission_spectrum at delta = " + std::to_string(grid[i]) +
                                     " rad/us: " + failure[i]);
        }
    }
    return out;
}

double g2_window_from_density(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                              const DensityMatrix& rho_ss, const BasisSpec& basis, double window,
                              double dt) {
    if (!(window > 0.0)) throw ParameterError("g2_window_from_density: window must be > 0");
    const double n = mean_photon(rho_ss, basis);
    if (!(n > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const Eigen::SparseMatrix<cplx> a = annihilation(basis).to_eigen();
    const DensityMatrix conditioned(a * rho_ss.matrix() * a.adjoint());

    constexpr int intervals = 64;  // even, for Simpson's rule
    std::vector<double> times(intervals + 1);
    for (int i = 0; i <= intervals; ++i) times[i] = window * i / intervals;
    const auto states = master_propagate_sampled(H, jumps, conditioned, times, dt);
    double integral = 0.0;
    for (int i = 0; i <= intervals; ++i) {
        const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 ? 4.0 : 2.0);
        integral += w * mean_photon(states[i], basis);
    }
    integral *= (window / intervals) / 3.0;
    return integral / window / (n * n);
}

std::optional<std::vector<double>> conditional_mean_photon_after_click(
    std::span<const TrajectoryRecord> records, std::span<const double> delays) {
    std::vector<double> sum(delays.size(), 0.0);
    std::vector<long> used(delays.size(), 0);
    bool any = false;
    for (const auto& rec : records) {
        const auto& ts = rec.sample_times;
        for (const auto& e : rec.clicks.events) {
            if (e.channel != Channel::cavity) continue;
            any = true;
            for (std::size_t d = 0; d < delays.size(); ++d) {
                const double tau = delays[d];
                if (tau < 0.0) throw ParameterError("conditional_mean_photon_after_click: negative delay");
                if (tau == 0.0) {
                    sum[d] += e.photon_after;
                    ++used[d];
                    continue;
                }
                const double t = e.time + tau;
                if (ts.empty() || t > ts.back()) continue;
                const auto it = std::upper_bound(ts.begin(), ts.end(), t);
                const std::size_t hi = std::min<std::size_t>(it - ts.begin(), ts.size() - 1);
                const std::size_t lo = hi - 1;
                const double f = (t - ts[lo]) / (ts[hi] - ts[lo]);
                sum[d] += (1.0 - f) * rec.mean_photon[lo] + f * rec.mean_photon[hi];
                ++used[d];
            }
        }
    }
    if (!any) return std::nullopt;
    std::vector<double> out(delays.size());
    for (std::size_t d = 0; d < delays.size(); ++d)
        out[d] = used[d] ? sum[d] / used[d] : std::numeric_limits<double>::quiet_NaN();
    return out;
}

long Histogram::total() const {
    long s = overflow;
    for (long c : counts) s += c;
    return s;
}

std::vector<double> waiting_times(std::span<const ClickRecord> clicks) {
    std::vector<double> out;
    for (const auto& rec : clicks) {
        const auto t = rec.times(Channel::cavity);
        for (std::size_t i = 1; i < t.size(); ++i) out.push_back(t[i] - t[i - 1]);
    }
    return out;
}

std::optional<Histogram> waiting_time_histogram(std::span<const ClickRecord> clicks,
                                                std::span<const double> edges) {
    if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end())) {
        throw ParameterError("waiting_time_histogram: need at least two ascending bin edges");
    }
    std::size_t pooled = 0;
    for (const auto& rec : clicks) pooled += rec.count(Channel::cavity);
    if (pooled < 2) return std::nullopt;

    Histogram h;
    h.edges.assign(edges.begin(), edges.end());
    h.counts.assign(edges.size() - 1, 0);
    for (double w : waiting_times(clicks)) {
        if (w < edges.front()) continue;
        if (w >= edges.back()) {
            ++h.overflow;
            continue;
        }
        const auto it = std::upper_bound(edges.begin(), edges.end(), w);
        ++h.counts[(it - edges.begin()) - 1];
    }
    return h;
}

long BurstHistogram::bursts() const {
    long s = 0;
    for (const auto& [m, c] : counts) s += c;
    return s;
}

long BurstHistogram::total_clicks() const {
    long s = 0;
    for (const auto& [m, c] : counts) s += m * c;
    return s;
}

double BurstHistogram::mean_multiplicity() const {
    const long b = bursts();
    return b ? static_cast<double>(total_clicks()) / b : 0.0;
}

void BurstHistogram::merge(const BurstHistogram& other) {
    for (const auto& [m, c] : other.counts) counts[m] += c;
}

BurstHistogram burst_statistics(std::span<const double> times, double window) {
    if (!(window > 0.0)) throw ParameterError("burst_statistics: window must be > 0");
    BurstHistogram h;
    h.window = window;
    if (times.empty()) return h;
    int current = 1;
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (times[i] - times[i - 1] <= window) {
            ++current;
        } else {
            ++h.counts[current];
            current = 1;
        }
    }
    ++h.counts[current];
    return h;
}

BurstHistogram burst_statistics(std::span<const ClickRecord> clicks, double window) {
    if (!(window > 0.0)) throw ParameterError("burst_statistics: window must be > 0");
    BurstHistogram h;
    h.window = window;
    for (const auto& rec : clicks) h.merge(burst_statistics(rec.times(Channel::cavity), window));
    return h;
}

int first_burst_multiplicity(const ClickRecord& clicks, double window) {
    const auto t = clicks.times(Channel::cavity);
    if (t.empty()) return 0;
    int m = 1;
    while (m < static_cast<int>(t.size()) && t[m] - t[m - 1] <= window) ++m;
    return m;
}

G2Estimate g2_zero_from_clicks(std::span<const ClickRecord> clicks, double window, double t_begin,
                               double t_end, int bootstrap_samples, std::uint64_t bootstrap_seed) {
    if (!(window > 0.0)) throw ParameterError("g2_zero_from_clicks: window must be > 0");
    if (!(t_end - t_begin > window)) throw ParameterError("g2_zero_from_clicks: interval shorter than window");
    const std::size_t m = clicks.size();
    if (m == 0) throw ParameterError("g2_zero_from_clicks: no click records");

    std::vector<long> n(m), c(m);
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> t;
        for (const auto& e : clicks[i].events)
            if (e.channel == Channel::cavity && e.time >= t_begin && e.time <= t_end) t.push_back(e.time);
        n[i] = static_cast<long>(t.size());
        for (std::size_t a = 0; a < t.size(); ++a)
            for (std::size_t b = a + 1; b < t.size() && t[b] - t[a] <= window; ++b) ++c[i];
    }
    const double span = t_end - t_begin;
    // Expected ordered pairs for a Poisson process of rate R on [0, T]: R² w (T − w/2).
    auto estimate = [&](auto&& index) {
        double clicks_sum = 0.0, pairs = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            clicks_sum += n[index(k)];
            pairs += c[index(k)];
        }
        const double rate = clicks_sum / (m * span);
        const double norm = rate * rate * window * m * (span - 0.5 * window);
        return std::pair{norm > 0.0 ? pairs / norm : std::numeric_limits<double>::quiet_NaN(), norm};
    };

    G2Estimate g;
    const auto [value, norm] = estimate([](std::size_t k) { return k; });
    g.value = value;
    for (std::size_t i = 0; i < m; ++i) {
        g.clicks += n[i];
        g.coincidences += c[i];
    }
    g.sufficient = g.clicks >= 100;

    std::vector<double> boot;
    StreamRng rng(bootstrap_seed, 0);
    std::vector<std::size_t> pick(m);
    for (int b = 0; b < bootstrap_samples; ++b) {
        for (auto& k : pick) k = static_cast<std::size_t>(rng.next_u64() % m);
        const double v = estimate([&](std::size_t k) { return pick[k]; }).first;
        if (std::isfinite(v)) boot.push_back(v);
    }
    const double poisson = norm > 0.0 ? std::sqrt(std::max<double>(g.coincidences, 1.0)) / norm
                                      : std::numeric_limits<double>::infinity();
    g.std_error = std::max(stats::stddev(boot), poisson);
    return g;
}

} // namespace rydcqed
