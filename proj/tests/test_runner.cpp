#include "rydcqed/config.hpp"
#include "rydcqed/runner.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace rydcqed;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("rydcqed_test_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const fs::path& p) {
    std::vector<std::string> out;
    std::ifstream in(p);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

RunConfig short_config(Mode mode, const fs::path& dir, const std::string& extra = "") {
    auto cfg = parse_config_text("[params]\nn_max = 3\n[trajectory]\nt_final = 1\n[run]\npreset = fig3\n" +
                                 extra);
    cfg.mode = mode;
    cfg.output_dir = dir.string();
    return cfg;
}

} // namespace

TEST(Runner, TrajectoryArtifacts) {
    const auto dir = scratch("traj");
    std::ostringstream err;
    ASSERT_EQ(run(short_config(Mode::trajectory, dir), err), 0) << err.str();
    const auto rec = lines(dir / "record.csv");
    ASSERT_GE(rec.size(), 3u);
    EXPECT_EQ(rec[0].rfind("# t_us [us]", 0), 0u);
    EXPECT_EQ(rec[1], "t_us,mean_photon,pop_E1,click");
    EXPECT_EQ(rec.size(), 2u + 101u);
    const auto clicks = lines(dir / "clicks.csv");
    EXPECT_EQ(clicks[0][0], '#');
    EXPECT_EQ(clicks[1], "t_us,channel");
    EXPECT_EQ(lines(dir / "bursts.csv")[1], "multiplicity,count");

    // The manifest reproduces the resolved configuration exactly.
    const auto again = parse_config_file((dir / "manifest.json").string());
    EXPECT_TRUE(again == short_config(Mode::trajectory, dir));
    const auto manifest = nlohmann::json::parse(slurp(dir / "manifest.json"));
    EXPECT_EQ(manifest.at("seed").get<std::uint64_t>(), 1u);
    EXPECT_EQ(manifest.at("code_version").get<std::string>(), version());
    EXPECT_TRUE(manifest.contains("wall_time_s"));
}

TEST(Runner, RepeatedRunsAreByteIdentical) {
    const auto a = scratch("rep_a"), b = scratch("rep_b");
    std::ostringstream err;
    ASSERT_EQ(run(short_config(Mode::trajectory, a, "[trajectory]\nseed = 77\n"), err), 0);
    ASSERT_EQ(run(short_config(Mode::trajectory, b, "[trajectory]\nseed = 77\n"), err), 0);
    for (const char* f : {"record.csv", "clicks.csv", "bursts.csv"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Runner, EnsembleIndependentOfWorkerCount) {
    const auto a = scratch("ens_1"), b = scratch("ens_4");
    auto cfg = short_config(Mode::ensemble, a, "trajectories = 64\n");
    std::ostringstream err;
    ASSERT_EQ(run(cfg, err), 0) << err.str();
    cfg.output_dir = b.string();
    cfg.workers = 4;
    ASSERT_EQ(run(cfg, err), 0) << err.str();
    for (const char* f : {"record.csv", "clicks.csv", "bursts.csv"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
    EXPECT_EQ(lines(a / "clicks.csv")[1], "trajectory,t_us,channel");
}

TEST(Runner, SpectrumArtifacts) {
    const auto dir = scratch("spec");
    auto cfg = short_config(Mode::spectrum, dir);
    cfg.spectrum_points = 11;
    std::ostringstream err;
    ASSERT_EQ(run(cfg, err), 0) << err.str();
    const auto s = lines(dir / "spectrum.csv");
    EXPECT_EQ(s[1], "delta_rad_per_us,mean_photon_ss,flux,g2_zero");
    ASSERT_EQ(s.size(), 13u);
    const double g = effective_coupling(cfg.params);
    EXPECT_DOUBLE_EQ(std::stod(s[2].substr(0, s[2].find(','))), -2 * g);
    EXPECT_DOUBLE_EQ(std::stod(s[12].substr(0, s[12].find(','))), 2 * g);
}

TEST(Runner, MasterAndLadderArtifacts) {
    const auto dir = scratch("master");
    std::ostringstream err;
    ASSERT_EQ(run(short_config(Mode::master, dir), err), 0) << err.str();
    EXPECT_EQ(lines(dir / "record.csv")[1], "t_us,mean_photon,pop_E1,click");
    const auto lad = scratch("ladder");
    ASSERT_EQ(run(short_config(Mode::ladder_spectrum, lad, "[params]\nn_b = 3\n"), err), 0) << err.str();
    const auto ev = lines(lad / "eigenvalues.csv");
    EXPECT_EQ(ev[1], "block,n_exc,value");
    EXPECT_EQ(ev[2], "3,0,0");
}

TEST(Runner, ExitCodes) {
    std::ostringstream err;
    auto cfg = short_config(Mode::trajectory, scratch("bad"));
    cfg.workers = 0;
    EXPECT_EQ(run(cfg, err), 1);
    EXPECT_NE(err.str().find("\"error\":\"config\""), std::string::npos) << err.str();

    // A file where the output directory should be.
    const auto blocker = scratch("blocker");
    std::ofstream(blocker.string()) << "x";
    err.str("");
    EXPECT_EQ(run(short_config(Mode::trajectory, blocker / "sub"), err), 3);
    EXPECT_NE(err.str().find("\"exit_code\":3"), std::string::npos) << err.str();
    fs::remove(blocker);

    cfg = short_config(Mode::trajectory, scratch("unstable"));
    cfg.params.g0 = mhz(5000.0);
    err.str("");
    EXPECT_EQ(run(cfg, err), 2);
    EXPECT_NE(err.str().find("integrator"), std::string::npos) << err.str();
}

TEST(Cli, PresetVerbAndFlags) {
    const auto dir = scratch("cli");
    const std::string cli = RYDCQED_CLI_PATH;
    const std::string cmd = cli + " preset fig4 --t-final 0.5 --seed 5 --out " + dir.string() + " 2>/dev/null";
    ASSERT_EQ(std::system(cmd.c_str()), 0);
    const auto cfg = parse_config_file((dir / "manifest.json").string());
    EXPECT_EQ(cfg.preset, Preset::fig4);
    EXPECT_EQ(cfg.trajectory.seed, 5u);
    EXPECT_DOUBLE_EQ(cfg.params.alpha, mhz(1.5));
    EXPECT_TRUE(fs::exists(dir / "record.csv"));

    const std::string bad = cli + " trajectory --config /nonexistent.ini > /dev/null 2>&1";
    const int status = std::system(bad.c_str());
    EXPECT_EQ(WEXITSTATUS(status), 1);
}
