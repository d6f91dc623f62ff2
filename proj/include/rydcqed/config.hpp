// config.hpp — run configuration: INI-style files, presets, manifest round-trip.
//
// Config files have sections [params], [trajectory] and [run]. Frequencies in
// [params] are given in MHz and read as ν with ω = 2πν; times are in µs.
// Unknown keys are rejected.

#pragma once

#include "rydcqed/dynamics.hpp"
#include "rydcqed/models.hpp"

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace rydcqed {

enum class Mode { spectrum, trajectory, ensemble, master, ladder_spectrum };
enum class Preset { fig3, fig4, fig5, fig6 };

std::string_view mode_name(Mode m);
Mode parse_mode(std::string_view s);
std::string_view preset_name(Preset p);
Preset parse_preset(std::string_view s);

struct RunConfig {
    PhysicalParams params;
    TrajectoryConfig trajectory;
    Mode mode = Mode::trajectory;
    std::optional<Preset> preset;
    int branch = +1;                  // sign of the preset detuning
    std::string output_dir = "out";
    int workers = 1;
    std::size_t trajectories = 1;     // ensemble size
    bool quench = false;              // α → 0 at the first cavity click
    std::optional<double> spectrum_min;  // rad/µs; default −2 g_eff
    std::optional<double> spectrum_max;  // rad/µs; default +2 g_eff
    int spectrum_points = 201;
    std::optional<double> burst_window;  // µs; default 2/κ
    double master_dt = 1e-3;             // µs

    // Fills defaults that depend on other fields (spectrum range, burst window).
    void resolve();
    // Throws ConfigError naming the offending key.
    void validate() const;

    bool operator==(const RunConfig& o) const;
};

// Overwrites α and δ with the detection-record settings:
// fig3 α = 2π×0.15 MHz, δ = ±g_eff;   fig4 α = 2π×1.5 MHz, δ = ±g_eff/√2;
// fig5 α = 2π×1.25 MHz, δ = ±g_eff/√3; fig6 α = 2π×2 MHz, δ = ±g_eff/√3.
void apply_preset(PhysicalParams& p, Preset preset, int branch = +1);

// INI text. The preset (if any) is applied after the file values.
RunConfig parse_config_text(std::string_view text);
// `.json` files are read as manifests; anything else as INI.
RunConfig parse_config_file(const std::string& path);

// Resolved configuration in internal units (exact round-trip).
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

} // namespace rydcqed
