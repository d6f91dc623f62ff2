#include "rydcqed/config.hpp"
#include "rydcqed/errors.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace rydcqed;

namespace {

std::string error_of(std::string_view text) {
    try {
        parse_config_text(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

} // namespace

TEST(Config, EmptyTextGivesDefaults) {
    const auto cfg = parse_config_text("");
    EXPECT_EQ(cfg.params.atoms, 1000.0);
    EXPECT_DOUBLE_EQ(cfg.params.kappa, mhz(1.3));
    EXPECT_EQ(cfg.params.photon_cutoff, 6);
    EXPECT_EQ(cfg.mode, Mode::trajectory);
    EXPECT_EQ(cfg.workers, 1);
    EXPECT_DOUBLE_EQ(*cfg.spectrum_min, -2 * effective_coupling(cfg.params));
    EXPECT_DOUBLE_EQ(*cfg.burst_window, 2.0 / cfg.params.kappa);
}

TEST(Config, PresetOverwritesDrive) {
    const auto cfg = parse_config_text("[run]\npreset = fig3\n[params]\nalpha = 9\n");
    const double g = effective_coupling(cfg.params);
    EXPECT_DOUBLE_EQ(cfg.params.alpha, 2 * std::numbers::pi * 0.15);
    EXPECT_DOUBLE_EQ(cfg.params.delta_probe, g);
    EXPECT_DOUBLE_EQ(cfg.params.g0, mhz(10));

    PhysicalParams p;
    apply_preset(p, Preset::fig4);
    EXPECT_DOUBLE_EQ(p.alpha, mhz(1.5));
    EXPECT_DOUBLE_EQ(p.delta_probe, g / std::sqrt(2.0));
    apply_preset(p, Preset::fig5, -1);
    EXPECT_DOUBLE_EQ(p.alpha, mhz(1.25));
    EXPECT_DOUBLE_EQ(p.delta_probe, -g / std::sqrt(3.0));
    apply_preset(p, Preset::fig6);
    EXPECT_DOUBLE_EQ(p.alpha, mhz(2.0));
    EXPECT_DOUBLE_EQ(p.delta_probe, g / std::sqrt(3.0));
    EXPECT_THROW(apply_preset(p, Preset::fig6, 0), ConfigError);

    const auto neg = parse_config_text("[run]\npreset = fig4\nbranch = -1\n");
    EXPECT_DOUBLE_EQ(neg.params.delta_probe, -g / std::sqrt(2.0));
}

TEST(Config, MegahertzConversion) {
    const auto cfg = parse_config_text("[params]\nkappa = 1.3\ndelta_probe = -2.5 # comment\n");
    EXPECT_DOUBLE_EQ(cfg.params.kappa, 2 * std::numbers::pi * 1.3);
    EXPECT_DOUBLE_EQ(cfg.params.delta_probe, -2 * std::numbers::pi * 2.5);
    const auto run = parse_config_text("[run]\nspectrum_min = -5\nspectrum_max = 5\nburst_window = 0.3\n");
    EXPECT_DOUBLE_EQ(*run.spectrum_max, mhz(5));
    EXPECT_DOUBLE_EQ(*run.burst_window, 0.3);  // µs, no conversion
}

TEST(Config, ErrorsNameTheKey) {
    EXPECT_NE(error_of("[params]\nn_max = 0\n").find("n_max"), std::string::npos);
    EXPECT_NE(error_of("[params]\nkapa = 1\n").find("params.kapa"), std::string::npos);
    EXPECT_NE(error_of("[params]\nkappa = fast\n").find("kappa"), std::string::npos);
    EXPECT_NE(error_of("[run]\nworkers = 0\n").find("workers"), std::string::npos);
    EXPECT_NE(error_of("[run]\ntrajectories = 0\n").find("trajectories"), std::string::npos);
    EXPECT_NE(error_of("[run]\nmode = movie\n").find("mode"), std::string::npos);
    EXPECT_NE(error_of("[run]\npreset = fig9\n").find("preset"), std::string::npos);
    EXPECT_NE(error_of("[trajectory]\ndt_max = 1\n").find("sample_dt"), std::string::npos);
    EXPECT_NE(error_of("[extra]\n").find("unknown section"), std::string::npos);
    EXPECT_NE(error_of("kappa = 1\n").find("outside"), std::string::npos);
    EXPECT_NE(error_of("[params]\nkappa = 1\nkappa = 2\n").find("duplicate"), std::string::npos);
    EXPECT_NE(error_of("[params\n").find("line 1"), std::string::npos);
    EXPECT_NE(error_of("[params]\nkappa\n").find("line 2"), std::string::npos);
}

TEST(Config, ModeNames) {
    for (Mode m : {Mode::spectrum, Mode::trajectory, Mode::ensemble, Mode::master, Mode::ladder_spectrum})
        EXPECT_EQ(parse_mode(mode_name(m)), m);
    EXPECT_EQ(parse_mode("ladder-spectrum"), Mode::ladder_spectrum);
    for (Preset p : {Preset::fig3, Preset::fig4, Preset::fig5, Preset::fig6})
        EXPECT_EQ(parse_preset(preset_name(p)), p);
}

TEST(Config, JsonRoundTripIsExact) {
    const auto cfg = parse_config_text(
        "[params]\nN = 2\ng0 = 0.3333333333333333\nn_b = 3\nn_max = 4\ngamma = 0.01\n"
        "[trajectory]\nt_final = 7.5\nseed = 18446744073709551615\n"
        "[run]\nmode = ensemble\npreset = fig5\nbranch = -1\ntrajectories = 64\nworkers = 8\nquench = true\n"
        "output_dir = results/x\n");
    const auto back = config_from_json(config_to_json(cfg));
    EXPECT_TRUE(back == cfg);
    EXPECT_EQ(back.trajectory.seed, 18446744073709551615ull);
    EXPECT_EQ(back.params.delta_probe, cfg.params.delta_probe);
    // Text round trip through dump/parse keeps every bit.
    const auto again = config_from_json(nlohmann::json::parse(config_to_json(cfg).dump()));
    EXPECT_TRUE(again == cfg);
}

TEST(Config, JsonRejectsUnknownAndMissingKeys) {
    auto j = config_to_json(parse_config_text(""));
    auto extra = j;
    extra["params"]["Kappa"] = 1.0;
    EXPECT_THROW(config_from_json(extra), ConfigError);
    auto missing = j;
    missing["trajectory"].erase("seed");
    EXPECT_THROW(config_from_json(missing), ConfigError);
    auto wrong_type = j;
    wrong_type["run"]["workers"] = "many";
    EXPECT_THROW(config_from_json(wrong_type), ConfigError);
}

TEST(Config, MissingFile) {
    EXPECT_THROW(parse_config_file("/nonexistent/run.ini"), ConfigError);
}
