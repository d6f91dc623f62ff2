// config.cpp

#include "rydcqed/config.hpp"

#include "rydcqed/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rydcqed {

std::string_view mode_name(Mode m) {
    switch (m) {
        case Mode::spectrum: return "spectrum";
        case Mode::trajectory: return "trajectory";
        case Mode::ensemble: return "ensemble";
        case Mode::master: return "master";
        case Mode::ladder_spectrum: return "ladder-spectrum";
    }
    return "?";
}

Mode parse_mode(std::string_view s) {
    for (Mode m : {Mode::spectrum, Mode::trajectory, Mode::ensemble, Mode::master, Mode::ladder_spectrum})
        if (mode_name(m) == s) return m;
    throw ConfigError("mode: unknown value '" + std::string(s) + "'");
}

std::string_view preset_name(Preset p) {
    switch (p) {
        case Preset::fig3: return "fig3";
        case Preset::fig4: return "fig4";
        case Preset::fig5: return "fig5";
        case Preset::fig6: return "fig6";
    }
    return "?";
}

Preset parse_preset(std::string_view s) {
    for (Preset p : {Preset::fig3, Preset::fig4, Preset::fig5, Preset::fig6})
        if (preset_name(p) == s) return p;
    throw ConfigError("preset: unknown value '" + std::string(s) + "'");
}

void apply_preset(PhysicalParams& p, Preset preset, int branch) {
    if (branch != 1 && branch != -1) throw ConfigError("branch: must be +1 or -1");
    const double g = effective_coupling(p);
    switch (preset) {
        case Preset::fig3:
            p.alpha = mhz(0.15);
            p.delta_probe = branch * g;
            break;
        case Preset::fig4:
            p.alpha = mhz(1.5);
            p.delta_probe = branch * g / std::sqrt(2.0);
            break;
        case Preset::fig5:
            p.alpha = mhz(1.25);
            p.delta_probe = branch * g / std::sqrt(3.0);
            break;
        case Preset::fig6:
            p.alpha = mhz(2.0);
            p.delta_probe = branch * g / std::sqrt(3.0);
            break;
    }
}

void RunConfig::resolve() {
    const double g = effective_coupling(params);
    if (!spectrum_min) spectrum_min = -2.0 * g;
    if (!spectrum_max) spectrum_max = 2.0 * g;
    if (!burst_window) burst_window = 2.0 / params.kappa;
}

void RunConfig::validate() const {
    try {
        params.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    trajectory.validate();
    if (workers < 1) throw ConfigError("workers: must be >= 1");
    if (trajectories < 1) throw ConfigError("trajectories: must be >= 1");
    if (branch != 1 && branch != -1) throw ConfigError("branch: must be +1 or -1");
    if (spectrum_points < 1) throw ConfigError("spectrum_points: must be >= 1");
    if (spectrum_min && spectrum_max && *spectrum_max < *spectrum_min) {
        throw ConfigError("spectrum_max: must be >= spectrum_min");
    }
    if (burst_window && !(*burst_window > 0.0)) throw ConfigError("burst_window: must be > 0");
    if (!(master_dt > 0.0)) throw ConfigError("master_dt: must be > 0");
    if (output_dir.empty()) throw ConfigError("output_dir: must not be empty");
}

bool RunConfig::operator==(const RunConfig& o) const {
    return config_to_json(*this) == config_to_json(o);
}

// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(out)) {
        throw ConfigError(key + ": expected a number, got '" + v + "'");
    }
    return out;
}

long long to_int(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError(key + ": expected an integer, got '" + v + "'");
    }
    return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || ptr != v.data() + v.size()) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
    }
    return out;
}

bool to_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError(key + ": expected true/false, got '" + v + "'");
}

int to_branch(const std::string& key, const std::string& v) {
    if (v == "+" || v == "+1" || v == "1") return 1;
    if (v == "-" || v == "-1") return -1;
    throw ConfigError(key + ": expected +1 or -1, got '" + v + "'");
}

using Sections = std::map<std::string, std::map<std::string, std::string>>;

Sections read_ini(std::string_view text) {
    static const std::set<std::string> known{"params", "trajectory", "run"};
    Sections out;
    std::string section;
    std::istringstream in{std::string(text)};
    std::string raw;
    for (int line_no = 1; std::getline(in, raw); ++line_no) {
        const auto hash = raw.find_first_of("#;");
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        const std::string where = "line " + std::to_string(line_no);
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(where + ": malformed section header");
            section = trim(std::string_view(line).substr(1, line.size() - 2));
            if (!known.count(section)) throw ConfigError(where + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + ": expected key = value");
        if (section.empty()) throw ConfigError(where + ": key outside of a section");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (!out[section].emplace(key, value).second) {
            throw ConfigError(where + ": duplicate key '" + key + "'");
        }
    }
    return out;
}

} // namespace

RunConfig parse_config_text(std::string_view text) {
    const Sections s = read_ini(text);
    RunConfig cfg;
    auto& p = cfg.params;
    auto& t = cfg.trajectory;
    std::optional<int> branch;

    for (const auto& [section, kv] : s) {
        for (const auto& [key, v] : kv) {
            const std::string name = section + "." + key;
            if (section == "params") {
                if (key == "N") p.atoms = to_double(key, v);
                else if (key == "g0") p.g0 = mhz(to_double(key, v));
                else if (key == "Omega") p.Omega = mhz(to_double(key, v));
                else if (key == "Delta") p.Delta = mhz(to_double(key, v));
                else if (key == "kappa") p.kappa = mhz(to_double(key, v));
                else if (key == "gamma") p.gamma = mhz(to_double(key, v));
                else if (key == "alpha") p.alpha = mhz(to_double(key, v));
                else if (key == "delta_probe") p.delta_probe = mhz(to_double(key, v));
                else if (key == "n_b") p.bubbles = static_cast<int>(to_int(key, v));
                else if (key == "n_max") p.photon_cutoff = static_cast<int>(to_int(key, v));
                else throw ConfigError("unknown key '" + name + "'");
            } else if (section == "trajectory") {
                if (key == "t_final") t.t_final = to_double(key, v);
                else if (key == "dt_max") t.dt_max = to_double(key, v);
                else if (key == "sample_dt") t.sample_dt = to_double(key, v);
                else if (key == "seed") t.seed = to_u64(key, v);
                else if (key == "jump_time_tol") t.jump_time_tol = to_double(key, v);
                else if (key == "norm_floor") t.norm_floor = to_double(key, v);
                else throw ConfigError("unknown key '" + name + "'");
            } else {
                if (key == "mode") cfg.mode = parse_mode(v);
                else if (key == "preset") cfg.preset = parse_preset(v);
                else if (key == "branch") branch = to_branch(key, v);
                else if (key == "output_dir") cfg.output_dir = v;
                else if (key == "workers") cfg.workers = static_cast<int>(to_int(key, v));
                else if (key == "trajectories") {
                    const long long m = to_int(key, v);
                    if (m < 1) throw ConfigError("trajectories: must be >= 1");
                    cfg.trajectories = static_cast<std::size_t>(m);
                }
                else if (key == "quench") cfg.quench = to_bool(key, v);
                else if (key == "spectrum_min") cfg.spectrum_min = mhz(to_double(key, v));
                else if (key == "spectrum_max") cfg.spectrum_max = mhz(to_double(key, v));
                else if (key == "spectrum_points") cfg.spectrum_points = static_cast<int>(to_int(key, v));
                else if (key == "burst_window") cfg.burst_window = to_double(key, v);
                else if (key == "master_dt") cfg.master_dt = to_double(key, v);
                else throw ConfigError("unknown key '" + name + "'");
            }
        }
    }
    if (branch) cfg.branch = *branch;
    try {
        p.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    if (cfg.preset) apply_preset(p, *cfg.preset, cfg.branch);
    cfg.resolve();
    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(buf.str());
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("manifest: ") + e.what());
        }
        if (!j.contains("resolved_config")) throw ConfigError("manifest: missing 'resolved_config'");
        return config_from_json(j.at("resolved_config"));
    }
    return parse_config_text(buf.str());
}

// ---------------------------------------------------------------------------

nlohmann::json config_to_json(const RunConfig& cfg) {
    const auto& p = cfg.params;
    const auto& t = cfg.trajectory;
    nlohmann::json j;
    j["units"] = "rad/us and us";
    j["params"] = {{"N", p.atoms},          {"g0", p.g0},
                   {"Omega", p.Omega},      {"Delta", p.Delta},
                   {"kappa", p.kappa},      {"gamma", p.gamma},
                   {"alpha", p.alpha},      {"delta_probe", p.delta_probe},
                   {"n_b", p.bubbles},      {"n_max", p.photon_cutoff}};
    j["trajectory"] = {{"t_final", t.t_final},
                       {"dt_max", t.dt_max},
                       {"sample_dt", t.sample_dt},
                       {"seed", t.seed},
                       {"jump_time_tol", t.jump_time_tol},
                       {"norm_floor", t.norm_floor}};
    nlohmann::json run = {{"mode", mode_name(cfg.mode)},
                          {"branch", cfg.branch},
                          {"output_dir", cfg.output_dir},
                          {"workers", cfg.workers},
                          {"trajectories", cfg.trajectories},
                          {"quench", cfg.quench},
                          {"spectrum_points", cfg.spectrum_points},
                          {"master_dt", cfg.master_dt}};
    run["preset"] = cfg.preset ? nlohmann::json(preset_name(*cfg.preset)) : nlohmann::json(nullptr);
    run["spectrum_min"] = cfg.spectrum_min ? nlohmann::json(*cfg.spectrum_min) : nlohmann::json(nullptr);
    run["spectrum_max"] = cfg.spectrum_max ? nlohmann::json(*cfg.spectrum_max) : nlohmann::json(nullptr);
    run["burst_window"] = cfg.burst_window ? nlohmann::json(*cfg.burst_window) : nlohmann::json(nullptr);
    j["run"] = run;
    return j;
}

RunConfig config_from_json(const nlohmann::json& j) {
    auto strict = [](const nlohmann::json& obj, const std::string& section,
                     std::initializer_list<const char*> keys) {
        if (!obj.is_object()) throw ConfigError("manifest: section '" + section + "' must be an object");
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (const auto& [k, v] : obj.items())
            if (!allowed.count(k)) throw ConfigError("unknown key '" + section + "." + k + "'");
        for (const char* k : keys)
            if (!obj.contains(k)) throw ConfigError("manifest: missing key '" + section + "." + k + "'");
    };
    try {
        strict(j, "resolved_config", {"units", "params", "trajectory", "run"});
        const auto& jp = j.at("params");
        const auto& jt = j.at("trajectory");
        const auto& jr = j.at("run");
        strict(jp, "params", {"N", "g0", "Omega", "Delta", "kappa", "gamma", "alpha", "delta_probe", "n_b", "n_max"});
        strict(jt, "trajectory", {"t_final", "dt_max", "sample_dt", "seed", "jump_time_tol", "norm_floor"});
        strict(jr, "run", {"mode", "preset", "branch", "output_dir", "workers", "trajectories", "quench",
                           "spectrum_min", "spectrum_max", "spectrum_points", "burst_window", "master_dt"});

        RunConfig cfg;
        auto& p = cfg.params;
        p.atoms = jp.at("N").get<double>();
        p.g0 = jp.at("g0").get<double>();
        p.Omega = jp.at("Omega").get<double>();
        p.Delta = jp.at("Delta").get<double>();
        p.kappa = jp.at("kappa").get<double>();
        p.gamma = jp.at("gamma").get<double>();
        p.alpha = jp.at("alpha").get<double>();
        p.delta_probe = jp.at("delta_probe").get<double>();
        p.bubbles = jp.at("n_b").get<int>();
        p.photon_cutoff = jp.at("n_max").get<int>();
        auto& t = cfg.trajectory;
        t.t_final = jt.at("t_final").get<double>();
        t.dt_max = jt.at("dt_max").get<double>();
        t.sample_dt = jt.at("sample_dt").get<double>();
        t.seed = jt.at("seed").get<std::uint64_t>();
        t.jump_time_tol = jt.at("jump_time_tol").get<double>();
        t.norm_floor = jt.at("norm_floor").get<double>();
        cfg.mode = parse_mode(jr.at("mode").get<std::string>());
        if (!jr.at("preset").is_null()) cfg.preset = parse_preset(jr.at("preset").get<std::string>());
        cfg.branch = jr.at("branch").get<int>();
        cfg.output_dir = jr.at("output_dir").get<std::string>();
        cfg.workers = jr.at("workers").get<int>();
        cfg.trajectories = jr.at("trajectories").get<std::size_t>();
        cfg.quench = jr.at("quench").get<bool>();
        if (!jr.at("spectrum_min").is_null()) cfg.spectrum_min = jr.at("spectrum_min").get<double>();
        if (!jr.at("spectrum_max").is_null()) cfg.spectrum_max = jr.at("spectrum_max").get<double>();
        cfg.spectrum_points = jr.at("spectrum_points").get<int>();
        if (!jr.at("burst_window").is_null()) cfg.burst_window = jr.at("burst_window").get<double>();
        cfg.master_dt = jr.at("master_dt").get<double>();
        // Values are already resolved (preset applied); validate only.
        cfg.validate();
        return cfg;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("manifest: ") + e.what());
    }
}

} // namespace rydcqed
