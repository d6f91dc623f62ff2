// rydcqed_cli.cpp — command-line front end.
//
//   rydcqed trajectory --config run.ini --seed 3 --out out/
//   rydcqed preset fig4 --branch -1
//   rydcqed ensemble --trajectories 1000 --workers 8

#include "rydcqed/config.hpp"
#include "rydcqed/errors.hpp"
#include "rydcqed/runner.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace rydcqed;

namespace {

struct Flags {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
    std::optional<std::string> out;
    std::optional<std::size_t> trajectories;
    std::optional<double> t_final;
    std::optional<int> branch;
    bool quench = false;
    std::string preset;
    std::string preset_mode = "trajectory";
};

void add_common(CLI::App* sub, Flags& f) {
    sub->add_option("--config", f.config, "INI config or manifest.json")->check(CLI::ExistingFile);
    sub->add_option("--seed", f.seed, "base RNG seed");
    sub->add_option("--workers", f.workers, "parallel workers")->check(CLI::PositiveNumber);
    sub->add_option("--out", f.out, "output directory");
    sub->add_option("--trajectories", f.trajectories, "ensemble size")->check(CLI::PositiveNumber);
    sub->add_option("--t-final", f.t_final, "trajectory duration [us]");
    sub->add_option("--branch", f.branch, "preset detuning sign (+1 or -1)")
        ->check(CLI::IsMember({-1, 1}));
    sub->add_flag("--quench", f.quench, "switch the probe off at the first cavity click");
}

RunConfig build(const Flags& f, std::optional<Mode> mode) {
    RunConfig cfg = f.config.empty() ? parse_config_text("") : parse_config_file(f.config);
    if (mode) cfg.mode = *mode;
    if (f.branch) cfg.branch = *f.branch;
    if (!f.preset.empty()) cfg.preset = parse_preset(f.preset);
    if (cfg.preset) apply_preset(cfg.params, *cfg.preset, cfg.branch);
    if (f.seed) cfg.trajectory.seed = *f.seed;
    if (f.workers) cfg.workers = *f.workers;
    if (f.out) cfg.output_dir = *f.out;
    if (f.trajectories) cfg.trajectories = *f.trajectories;
    if (f.t_final) cfg.trajectory.t_final = *f.t_final;
    if (f.quench) cfg.quench = true;
    cfg.resolve();
    cfg.validate();
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-trajectory simulator for a blockaded Rydberg ensemble in a cavity"};
    app.set_version_flag("--version", version());
    app.require_subcommand(1);

    Flags flags;
    std::optional<Mode> mode;
    const std::pair<const char*, Mode> verbs[] = {
        {"spectrum", Mode::spectrum},
        {"trajectory", Mode::trajectory},
        {"ensemble", Mode::ensemble},
        {"master", Mode::master},
        {"ladder-spectrum", Mode::ladder_spectrum},
    };
    for (const auto& [name, m] : verbs) {
        auto* sub = app.add_subcommand(name, std::string("run in ") + name + " mode");
        add_common(sub, flags);
        sub->callback([&mode, m = m] { mode = m; });
    }
    auto* preset = app.add_subcommand("preset", "run a detection-record preset");
    preset->add_option("name", flags.preset, "fig3 | fig4 | fig5 | fig6")
        ->required()
        ->check(CLI::IsMember({"fig3", "fig4", "fig5", "fig6"}));
    preset->add_option("--mode", flags.preset_mode, "mode to run the preset in")
        ->check(CLI::IsMember({"spectrum", "trajectory", "ensemble", "master", "ladder-spectrum"}));
    add_common(preset, flags);
    preset->callback([&] { mode = parse_mode(flags.preset_mode); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_config;
    }

    RunConfig cfg;
    try {
        cfg = build(flags, mode);
    } catch (const Error& e) {
        std::cerr << error_json(e.kind(), e.what(), exit_config) << '\n';
        return exit_config;
    }
    return run(cfg, std::cerr);
}
