// dynamics.cpp — waiting-time MCWF engine and deterministic ensemble reduction

#include "rydcqed/dynamics.hpp"

#include "rydcqed/errors.hpp"
#include "rydcqed/rng.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <string>

namespace rydcqed {

void TrajectoryConfig::validate() const {
    auto require = [](bool ok, const char* key, const std::string& why) {
        if (!ok) throw ConfigError(std::string(key) + ": " + why);
    };
    require(std::isfinite(dt_max) && dt_max > 0.0, "dt_max", "must be > 0");
    require(std::isfinite(sample_dt) && sample_dt >= dt_max, "sample_dt", "must be >= dt_max");
    require(std::isfinite(t_final) && t_final >= sample_dt, "t_final", "must be >= sample_dt");
    require(std::isfinite(jump_time_tol) && jump_time_tol > 0.0 && jump_time_tol <= dt_max / 10.0,
            "jump_time_tol", "must be in (0, dt_max/10]");
    require(std::isfinite(norm_floor) && norm_floor > 0.0 && norm_floor < 1.0, "norm_floor",
            "must be in (0, 1)");
}

int TrajectoryConfig::sample_count() const {
    return static_cast<int>(std::floor(t_final / sample_dt + 1e-9));
}

std::size_t ClickRecord::count(Channel c) const {
    return static_cast<std::size_t>(
        std::count_if(events.begin(), events.end(), [c](const ClickEvent& e) { return e.channel == c; }));
}

std::vector<double> ClickRecord::times(Channel c) const {
    std::vector<double> t;
    for (const auto& e : events)
        if (e.channel == c) t.push_back(e.time);
    return t;
}

StateVector apply_jump(const SparseOperator& C, const StateVector& psi) {
    StateVector out = apply(C, psi);
    const double n2 = out.norm_squared();
    if (!(n2 > 0.0)) throw InvalidJumpError("apply_jump: channel has zero weight on this state");
    out.normalize();
    return out;
}

namespace {

// −i H_eff = −i H − ½ Σ C†C
SparseOperator generator(const SparseOperator& H, const std::vector<JumpChannel>& jumps) {
    SparseOperator decay = SparseOperator::zero(H.dimension());
    for (const auto& j : jumps) {
        if (j.op.dimension() != H.dimension()) {
            throw DimensionError("jump operator dimension does not match the Hamiltonian");
        }
        decay = decay + j.op.adjoint() * j.op;
    }
    return H.scaled(cplx(0.0, -1.0)) + decay.scaled(-0.5);
}

void check_hamiltonian(const SparseOperator& H) {
    const double defect = H.max_hermiticity_defect();
    if (defect > 1e-12) {
        throw ParameterError("trajectory Hamiltonian is not Hermitian (defect " +
                             std::to_string(defect) + ")");
    }
}

class Rk4Stepper {
public:
    explicit Rk4Stepper(int dim) : k1_(dim), k2_(dim), k3_(dim), k4_(dim), tmp_(dim) {}

    void step(const SparseOperator& gen, const Eigen::VectorXcd& in, double h,
              Eigen::VectorXcd& out) {
        mul(gen, in, k1_);
        tmp_ = in + (0.5 * h) * k1_;
        mul(gen, tmp_, k2_);
        tmp_ = in + (0.5 * h) * k2_;
        mul(gen, tmp_, k3_);
        tmp_ = in + h * k3_;
        mul(gen, tmp_, k4_);
        out = in + (h / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
    }

private:
    static void mul(const SparseOperator& a, const Eigen::VectorXcd& x, Eigen::VectorXcd& y) {
        const auto n = static_cast<std::size_t>(x.size());
        a.multiply({x.data(), n}, {y.data(), n});
    }

    Eigen::VectorXcd k1_, k2_, k3_, k4_, tmp_;
};

double photon_number(const Eigen::VectorXcd& psi, int fock) {
    double acc = 0.0;
    for (int i = 0; i < psi.size(); ++i) acc += std::norm(psi[i]) * (i % fock);
    return acc;
}

TrajectoryRecord simulate(const SparseOperator& H, const SparseOperator* H_after,
                          const std::vector<JumpChannel>& jumps, const StateVector& psi0,
                          const TrajectoryConfig& cfg, std::uint64_t stream) {
    cfg.validate();
    const BasisSpec basis = psi0.basis();
    const int dim = basis.dimension();
    const int fock = basis.fock_size();
    const int levels = basis.ladder_levels();
    if (H.dimension() != dim) throw DimensionError("Hamiltonian dimension does not match ψ0");
    check_hamiltonian(H);
    if (H_after) {
        if (H_after->dimension() != dim) throw DimensionError("quench Hamiltonian dimension mismatch");
        check_hamiltonian(*H_after);
    }
    if (std::abs(psi0.norm_squared() - 1.0) > 1e-10) {
        throw ParameterError("run_trajectory: ψ0 must be normalized");
    }

    const SparseOperator gen_before = generator(H, jumps);
    const SparseOperator gen_after = H_after ? generator(*H_after, jumps) : SparseOperator{};
    const SparseOperator* gen = &gen_before;
    bool quench_pending = H_after != nullptr;

    StreamRng rng(cfg.seed, stream);
    Rk4Stepper stepper(dim);

    const int n_samples = cfg.sample_count();
    const int n_sub = static_cast<int>(std::ceil(cfg.sample_dt / cfg.dt_max - 1e-9));
    const double h_grid = cfg.sample_dt / n_sub;

    TrajectoryRecord rec;
    rec.seed_used = cfg.seed;
    rec.stream = stream;
    rec.sample_times.resize(n_samples + 1);
    rec.mean_photon.resize(n_samples + 1);
    rec.ladder_populations.assign(levels, std::vector<double>(n_samples + 1, 0.0));
    rec.click_in_interval.assign(n_samples + 1, 0.0);

    Eigen::VectorXcd psi = psi0.amplitudes();
    Eigen::VectorXcd next(dim), trial(dim), best(dim);
    std::vector<Eigen::VectorXcd> jumped(jumps.size(), Eigen::VectorXcd(dim));
    double norm2 = psi.squaredNorm();
    double threshold = rng.uniform_open();
    double t = 0.0;

    auto record = [&](int k) {
        rec.sample_times[k] = k * cfg.sample_dt;
        rec.mean_photon[k] = photon_number(psi, fock) / norm2;
        for (int i = 0; i < dim; ++i) rec.ladder_populations[i / fock][k] += std::norm(psi[i]) / norm2;
        if (cfg.record_states) rec.states.push_back(psi / std::sqrt(norm2));
    };
    record(0);

    for (int k = 1; k <= n_samples; ++k) {
        for (int j = 0; j < n_sub; ++j) {
            const double t_target = (j + 1 == n_sub) ? k * cfg.sample_dt
                                                     : (k - 1) * cfg.sample_dt + (j + 1) * h_grid;
            while (true) {
                const double h = t_target - t;
                if (h <= 1e-13 * std::max(1.0, t_target)) {
                    t = t_target;
                    break;
                }
                stepper.step(*gen, psi, h, next);
                const double n_next = next.squaredNorm();
                if (!std::isfinite(n_next)) {
                    throw NumericalError("run_trajectory: non-finite amplitudes at t = " +
                                         std::to_string(t));
                }
                if (n_next > norm2 * (1.0 + 1e-10)) {
                    throw IntegratorError("run_trajectory: norm increased during a step at t = " +
                                          std::to_string(t) + "; reduce dt_max");
                }
                if (n_next > threshold) {
                    psi.swap(next);
                    norm2 = n_next;
                    t = t_target;
                    break;
                }
                if (n_next < cfg.norm_floor && threshold < cfg.norm_floor) {
                    throw IntegratorError("run_trajectory: norm underflow below norm_floor at t = " +
                                          std::to_string(t));
                }

                // Localize the crossing ‖ψ(t + s)‖² = threshold within [0, h].
                double lo = 0.0;
                double hi = h;
                double n_hi = n_next;
                best = next;
                while (hi - lo > cfg.jump_time_tol) {
                    const double mid = 0.5 * (lo + hi);
                    stepper.step(*gen, psi, mid, trial);
                    const double n_mid = trial.squaredNorm();
                    if (n_mid > threshold) {
                        lo = mid;
                    } else {
                        hi = mid;
                        n_hi = n_mid;
                        best.swap(trial);
                    }
                }
                t = (hi == h) ? t_target : t + hi;

                double total = 0.0;
                std::vector<double> weight(jumps.size());
                for (std::size_t m = 0; m < jumps.size(); ++m) {
                    const auto n = static_cast<std::size_t>(dim);
                    jumps[m].op.multiply({best.data(), n}, {jumped[m].data(), n});
                    weight[m] = jumped[m].squaredNorm();
                    total += weight[m];
                }
                if (!(total > 0.0)) {
                    throw NumericalError("run_trajectory: norm decayed but no channel has weight");
                }
                const double u = rng.uniform_open() * total;
                std::size_t m = 0;
                for (double acc = weight[0]; acc < u && m + 1 < jumps.size();) acc += weight[++m];
                while (weight[m] == 0.0) --m;  // u landed on a zero-width tail

                const double before = photon_number(best, fock) / n_hi;
                psi = jumped[m] / std::sqrt(weight[m]);
                norm2 = psi.squaredNorm();
                rec.clicks.events.push_back({t, jumps[m].channel, before, photon_number(psi, fock) / norm2});
                if (jumps[m].channel == Channel::cavity) {
                    rec.click_in_interval[k] = 1.0;
                    if (quench_pending) {
                        gen = &gen_after;
                        quench_pending = false;
                    }
                }
                threshold = rng.uniform_open();
                if (t == t_target) break;
            }
        }
        record(k);
    }
    return rec;
}

// ---------------------------------------------------------------------------
// Deterministic reduction: a fixed batch size and a fixed pairwise tree, so the
// sum never depends on which worker produced which record.

constexpr std::size_t kBatch = 256;

struct Accumulator {
    std::vector<double> photon;
    std::vector<double> populations;  // level-major
    std::vector<double> clicks;
    std::vector<Eigen::MatrixXcd> density;

    static Accumulator from(const TrajectoryRecord& r) {
        Accumulator a;
        a.photon = r.mean_photon;
        for (const auto& lvl : r.ladder_populations)
            a.populations.insert(a.populations.end(), lvl.begin(), lvl.end());
        a.clicks = r.click_in_interval;
        for (const auto& s : r.states) a.density.push_back(s * s.adjoint());
        return a;
    }

    void add(const Accumulator& o) {
        for (std::size_t i = 0; i < photon.size(); ++i) photon[i] += o.photon[i];
        for (std::size_t i = 0; i < populations.size(); ++i) populations[i] += o.populations[i];
        for (std::size_t i = 0; i < clicks.size(); ++i) clicks[i] += o.clicks[i];
        for (std::size_t i = 0; i < density.size(); ++i) density[i] += o.density[i];
    }
};

Accumulator pairwise_sum(std::vector<Accumulator>& items, std::size_t lo, std::size_t hi) {
    if (hi - lo == 1) return std::move(items[lo]);
    const std::size_t mid = lo + (hi - lo) / 2;
    Accumulator left = pairwise_sum(items, lo, mid);
    left.add(pairwise_sum(items, mid, hi));
    return left;
}

} // namespace

TrajectoryRecord run_trajectory(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                                const StateVector& psi0, const TrajectoryConfig& cfg,
                                std::uint64_t stream) {
    return simulate(H, nullptr, jumps, psi0, cfg, stream);
}

TrajectoryRecord run_trajectory_with_quench(const SparseOperator& H,
                                            const SparseOperator& H_after_click,
                                            const std::vector<JumpChannel>& jumps,
                                            const StateVector& psi0, const TrajectoryConfig& cfg,
                                            std::uint64_t stream) {
    return simulate(H, &H_after_click, jumps, psi0, cfg, stream);
}

EnsembleResult run_ensemble(const SparseOperator& H, const std::vector<JumpChannel>& jumps,
                            const StateVector& psi0, const TrajectoryConfig& cfg,
                            const EnsembleOptions& options) {
    if (options.trajectories < 1) throw ConfigError("trajectories: must be >= 1");
    cfg.validate();
    const std::size_t M = options.trajectories;
    const SparseOperator* quench = options.quench_hamiltonian ? &*options.quench_hamiltonian : nullptr;
    const int workers = options.workers > 0 ? options.workers : omp_get_max_threads();

    EnsembleResult result;
    result.per_trajectory.resize(M);
    std::vector<Accumulator> partials;
    TrajectoryRecord first;

    for (std::size_t start = 0; start < M; start += kBatch) {
        const std::size_t stop = std::min(M, start + kBatch);
        const auto count = static_cast<long>(stop - start);
        std::vector<TrajectoryRecord> records(stop - start);
        std::vector<std::string> failures(stop - start);
        std::vector<std::string> failure_kind(stop - start);

        auto run_one = [&](long local) {
            const std::size_t i = start + static_cast<std::size_t>(local);
            try {
                records[local] = simulate(H, quench, jumps, psi0, cfg, i);
            } catch (const Error& e) {
                failure_kind[local] = e.kind();
                failures[local] = e.what();
            } catch (const std::exception& e) {
                failure_kind[local] = "internal";
                failures[local] = e.what();
            }
        };

        if (options.execution == Execution::parallel) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(workers)
            for (long local = 0; local < count; ++local) run_one(local);
        } else {
            for (long local = 0; local < count; ++local) run_one(local);
        }

        for (long local = 0; local < count; ++local) {
            if (!failures[local].empty()) {
                throw Error(failure_kind[local], "trajectory " + std::to_string(start + local) +
                                                     ": " + failures[local]);
            }
        }

        std::vector<Accumulator> items;
        items.reserve(records.size());
        for (auto& r : records) {
            result.per_trajectory[r.stream] = std::move(r.clicks);
            items.push_back(Accumulator::from(r));
        }
        if (start == 0) {
            first.sample_times = records.front().sample_times;
            first.seed_used = cfg.seed;
        }
        partials.push_back(pairwise_sum(items, 0, items.size()));
    }

    Accumulator total = pairwise_sum(partials, 0, partials.size());
    const double inv = 1.0 / static_cast<double>(M);
    TrajectoryRecord& avg = result.average;
    avg = std::move(first);
    const std::size_t ns = avg.sample_times.size();
    avg.mean_photon.resize(ns);
    avg.click_in_interval.resize(ns);
    for (std::size_t i = 0; i < ns; ++i) {
        avg.mean_photon[i] = total.photon[i] * inv;
        avg.click_in_interval[i] = total.clicks[i] * inv;
    }
    const std::size_t levels = total.populations.size() / ns;
    avg.ladder_populations.assign(levels, std::vector<double>(ns));
    for (std::size_t l = 0; l < levels; ++l)
        for (std::size_t i = 0; i < ns; ++i) avg.ladder_populations[l][i] = total.populations[l * ns + i] * inv;
    result.density.reserve(total.density.size());
    for (auto& d : total.density) result.density.push_back(d * inv);
    return result;
}

} // namespace rydcqed
