// runner.cpp — mode dispatch and artifact serialization.

#include "rydcqed/runner.hpp"

#include "rydcqed/errors.hpp"
#include "rydcqed/master.hpp"
#include "rydcqed/observables.hpp"
#include "rydcqed/spectral.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#ifndef RYDCQED_VERSION
#define RYDCQED_VERSION "unknown"
#endif

namespace rydcqed {

std::string version() { return RYDCQED_VERSION; }

std::string error_json(const std::string& kind, const std::string& message, int exit_code) {
    nlohmann::json j = {{"error", kind}, {"message", message}, {"exit_code", exit_code}};
    return j.dump();
}

namespace {

namespace fs = std::filesystem;

// Shortest text that reads back to the same double.
std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const fs::path& path, const std::string& units, const std::vector<std::string>& cols)
        : path_(path), out_(path, std::ios::binary | std::ios::trunc) {
        if (!out_) throw IoError("cannot open '" + path.string() + "' for writing");
        out_ << "# " << units << '\n';
        row(cols);
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

    void close() {
        out_.close();
        if (!out_) throw IoError("failed writing '" + path_.string() + "'");
    }

private:
    fs::path path_;
    std::ofstream out_;
};

std::vector<std::string> record_columns(int bubbles) {
    std::vector<std::string> cols{"t_us", "mean_photon"};
    for (int k = 1; k <= bubbles; ++k) cols.push_back("pop_E" + std::to_string(k));
    cols.push_back("click");
    return cols;
}

void write_record(const fs::path& dir, const TrajectoryRecord& rec, int bubbles,
                  const std::string& click_units) {
    CsvWriter w(dir / "record.csv",
                "t_us [us], mean_photon [photons], pop_Ek [probability], click [" + click_units + "]",
                record_columns(bubbles));
    for (std::size_t s = 0; s < rec.sample_times.size(); ++s) {
        std::vector<std::string> cells{num(rec.sample_times[s]), num(rec.mean_photon[s])};
        for (int k = 1; k <= bubbles; ++k) cells.push_back(num(rec.ladder_populations[k][s]));
        cells.push_back(num(rec.click_in_interval[s]));
        w.row(cells);
    }
    w.close();
}

void write_clicks(const fs::path& dir, std::span<const ClickRecord> records, bool with_index) {
    std::vector<std::string> cols{"t_us", "channel"};
    if (with_index) cols.insert(cols.begin(), "trajectory");
    CsvWriter w(dir / "clicks.csv",
                with_index ? "trajectory [index], t_us [us], channel [cavity|rydberg]"
                           : "t_us [us], channel [cavity|rydberg]",
                cols);
    for (std::size_t i = 0; i < records.size(); ++i) {
        for (const auto& e : records[i].events) {
            std::vector<std::string> cells{num(e.time), std::string(channel_name(e.channel))};
            if (with_index) cells.insert(cells.begin(), std::to_string(i));
            w.row(cells);
        }
    }
    w.close();
}

void write_bursts(const fs::path& dir, const BurstHistogram& h) {
    CsvWriter w(dir / "bursts.csv",
                "multiplicity [cavity clicks per burst, window " + num(h.window) + " us], count [bursts]",
                {"multiplicity", "count"});
    for (const auto& [m, c] : h.counts) w.row({std::to_string(m), std::to_string(c)});
    w.close();
}

StateVector vacuum(const PhysicalParams& p) { return StateVector::basis_state(p.basis(), 0, 0); }

void run_trajectory_mode(const RunConfig& cfg, const fs::path& dir) {
    const auto& p = cfg.params;
    const SparseOperator H = build_ladder_hamiltonian(p);
    const auto jumps = jump_operators(p);
    TrajectoryRecord rec;
    if (cfg.quench) {
        PhysicalParams off = p;
        off.alpha = 0.0;
        rec = run_trajectory_with_quench(H, build_ladder_hamiltonian(off), jumps, vacuum(p),
                                         cfg.trajectory);
    } else {
        rec = run_trajectory(H, jumps, vacuum(p), cfg.trajectory);
    }
    write_record(dir, rec, p.bubbles, "cavity clicks in (t_prev, t], 0|1");
    write_clicks(dir, std::span<const ClickRecord>(&rec.clicks, 1), false);
    write_bursts(dir, burst_statistics(std::span<const ClickRecord>(&rec.clicks, 1),
                                       *cfg.burst_window));
}

void run_ensemble_mode(const RunConfig& cfg, const fs::path& dir) {
    const auto& p = cfg.params;
    EnsembleOptions opt;
    opt.trajectories = cfg.trajectories;
    opt.workers = cfg.workers;
    opt.execution = cfg.workers > 1 ? Execution::parallel : Execution::serial;
    if (cfg.quench) {
        PhysicalParams off = p;
        off.alpha = 0.0;
        opt.quench_hamiltonian = build_ladder_hamiltonian(off);
    }
    const auto res = run_ensemble(build_ladder_hamiltonian(p), jump_operators(p), vacuum(p),
                                  cfg.trajectory, opt);
    write_record(dir, res.average, p.bubbles, "mean cavity clicks per trajectory in (t_prev, t]");
    write_clicks(dir, res.per_trajectory, true);
    write_bursts(dir, burst_statistics(res.per_trajectory, *cfg.burst_window));
}

void run_master_mode(const RunConfig& cfg, const fs::path& dir) {
    const auto& p = cfg.params;
    const auto basis = p.basis();
    const int n_samples = cfg.trajectory.sample_count();
    std::vector<double> times(static_cast<std::size_t>(n_samples) + 1);
    for (int s = 0; s <= n_samples; ++s) times[s] = s * cfg.trajectory.sample_dt;
    const auto states = master_propagate_sampled(build_ladder_hamiltonian(p), jump_operators(p),
                                                 DensityMatrix::pure(vacuum(p)), times,
                                                 cfg.master_dt, basis.dimension());

    TrajectoryRecord rec;
    rec.sample_times = times;
    rec.ladder_populations.assign(static_cast<std::size_t>(p.bubbles) + 1, {});
    for (const auto& rho : states) {
        rec.mean_photon.push_back(mean_photon(rho, basis));
        for (int k = 0; k <= p.bubbles; ++k) {
            double pk = 0.0;
            for (int n = 0; n <= basis.photon_cutoff(); ++n) {
                const int i = basis.flat_index(k, n);
                pk += rho.matrix()(i, i).real();
            }
            rec.ladder_populations[k].push_back(pk);
        }
    }
    // Expected cavity clicks per interval: 2κ ∫ <n> dt, trapezoidal.
    rec.click_in_interval.assign(times.size(), 0.0);
    for (std::size_t s = 1; s < times.size(); ++s) {
        rec.click_in_interval[s] = p.photon_decay_rate() * 0.5 *
                                   (rec.mean_photon[s] + rec.mean_photon[s - 1]) *
                                   (times[s] - times[s - 1]);
    }
    write_record(dir, rec, p.bubbles, "expected cavity clicks in (t_prev, t]");
}

void run_spectrum_mode(const RunConfig& cfg, const fs::path& dir) {
    const int n = cfg.spectrum_points;
    std::vector<double> grid(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        grid[i] = n == 1 ? *cfg.spectrum_min
                         : *cfg.spectrum_min + (*cfg.spectrum_max - *cfg.spectrum_min) * i / (n - 1);
    }
    const auto res = transmission_spectrum(
        cfg.params, grid, cfg.workers > 1 ? Execution::parallel : Execution::serial, cfg.workers);
    CsvWriter w(dir / "spectrum.csv",
                "delta_rad_per_us [rad/us], mean_photon_ss [photons], flux [photons/us], g2_zero [1]",
                {"delta_rad_per_us", "mean_photon_ss", "flux", "g2_zero"});
    for (std::size_t i = 0; i < grid.size(); ++i) {
        w.row({num(res.detunings[i]), num(res.mean_photon_ss[i]), num(res.output_flux[i]),
               num(res.g2_zero[i])});
    }
    w.close();
}

void run_ladder_mode(const RunConfig& cfg, const fs::path& dir) {
    const auto& p = cfg.params;
    CsvWriter w(dir / "eigenvalues.csv", "block [n_b], n_exc [excitations], value [rad/us]",
                {"block", "n_exc", "value"});
    for (int n = 0; n <= p.photon_cutoff; ++n) {
        for (double e : ladder_spectrum(p, n)) {
            w.row({std::to_string(p.bubbles), std::to_string(n), num(e)});
        }
    }
    w.close();
}

void write_manifest(const RunConfig& cfg, const fs::path& dir, double wall_seconds) {
    nlohmann::json j;
    j["resolved_config"] = config_to_json(cfg);
    j["seed"] = cfg.trajectory.seed;
    j["code_version"] = version();
    j["wall_time_s"] = wall_seconds;
    std::ofstream out(dir / "manifest.json", std::ios::trunc);
    if (!out) throw IoError("cannot open '" + (dir / "manifest.json").string() + "' for writing");
    out << j.dump(2) << '\n';
    out.close();
    if (!out) throw IoError("failed writing manifest.json");
}

} // namespace

int run(const RunConfig& cfg, std::ostream& err) {
    const auto start = std::chrono::steady_clock::now();
    try {
        cfg.validate();
        if (!cfg.spectrum_min || !cfg.spectrum_max || !cfg.burst_window) {
            throw ConfigError("run: configuration is not resolved");
        }
        const fs::path dir(cfg.output_dir);
        std::error_code ec;
        fs::create_directories(dir, ec);
        if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());

        switch (cfg.mode) {
            case Mode::trajectory: run_trajectory_mode(cfg, dir); break;
            case Mode::ensemble: run_ensemble_mode(cfg, dir); break;
            case Mode::master: run_master_mode(cfg, dir); break;
            case Mode::spectrum: run_spectrum_mode(cfg, dir); break;
            case Mode::ladder_spectrum: run_ladder_mode(cfg, dir); break;
        }
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        write_manifest(cfg, dir, wall);
        return exit_ok;
    } catch (const ConfigError& e) {
        err << error_json(e.kind(), e.what(), exit_config) << '\n';
        return exit_config;
    } catch (const IoError& e) {
        err << error_json(e.kind(), e.what(), exit_io) << '\n';
        return exit_io;
    } catch (const Error& e) {
        err << error_json(e.kind(), e.what(), exit_solver) << '\n';
        return exit_solver;
    } catch (const std::exception& e) {
        err << error_json("internal", e.what(), exit_solver) << '\n';
        return exit_solver;
    }
}

} // namespace rydcqed
