#include <micropolar/config.hpp>

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace micropolar {

using nlohmann::ordered_json;

const char* scheme_name(Scheme s) {
    return s == Scheme::imex_euler ? "imex_euler" : "cnab2";
}

Scheme scheme_from_name(const std::string& name) {
    if (name == "imex_euler") return Scheme::imex_euler;
    if (name == "cnab2") return Scheme::cnab2;
    throw ConfigError("stepper.scheme: must be \"imex_euler\" or \"cnab2\", got \"" + name + "\"");
}

void RunConfig::validate() const {
    try {
        domain.validate();
        Resolution r = resolution;
        r.finalize();  // also applies the quadrature lower bounds
        params.validate();
        stepper.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (!initial.checkpoint.empty() && initial.checkpoint.front() == '\0')
        throw ConfigError("initial.checkpoint: invalid path");
    for (Real d : experiment.deltas)
        if (!(d >= 0.0) || !std::isfinite(d))
            throw ConfigError("experiment.deltas: entries must be finite and >= 0");
    if (experiment.resolutions.size() < 2)
        throw ConfigError("experiment.resolutions: need at least two entries");
    for (size_t i = 0; i < experiment.resolutions.size(); ++i) {
        if (experiment.resolutions[i] < 1)
            throw ConfigError("experiment.resolutions: entries must be >= 1");
        if (i > 0 && experiment.resolutions[i] <= experiment.resolutions[i - 1])
            throw ConfigError("experiment.resolutions: must be strictly ascending");
    }
    if (experiment.trials < 0) throw ConfigError("experiment.trials: must be >= 0");
    if (out_dir.empty()) throw ConfigError("out_dir: must not be empty");
}

namespace {

[[noreturn]] void bad_type(const std::string& path, const char* want) {
    throw ConfigError(path + ": expected " + want);
}

Real need_number(const ordered_json& v, const std::string& path) {
    if (!v.is_number()) bad_type(path, "a number");
    return v.get<Real>();
}

int need_int(const ordered_json& v, const std::string& path) {
    if (!v.is_number_integer()) bad_type(path, "an integer");
    return v.get<int>();
}

std::string need_string(const ordered_json& v, const std::string& path) {
    if (!v.is_string()) bad_type(path, "a string");
    return v.get<std::string>();
}

/// Walks one object section, dispatching each key through `fields` and
/// rejecting keys the schema does not know.
template <class F>
void walk_section(const ordered_json& obj, const std::string& name, F&& field) {
    if (!obj.is_object()) bad_type(name, "an object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!field(it.key(), it.value()))
            throw ConfigError(name + "." + it.key() + ": unknown field");
    }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    ordered_json root;
    try {
        root = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ConfigError(std::string("config: not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("config: top level must be an object");

    RunConfig cfg;
    bool saw_params = false;
    bool saw[5] = {};  // Pr, Ra, Nsq, Lsq, D

    for (auto it = root.begin(); it != root.end(); ++it) {
        const std::string& key = it.key();
        const ordered_json& v = it.value();
        if (key == "domain") {
            walk_section(v, key, [&](const std::string& f, const ordered_json& x) {
                if (f == "l") cfg.domain.l = need_number(x, "domain.l");
                else return false;
                return true;
            });
        } else if (key == "resolution") {
            walk_section(v, key, [&](const std::string& f, const ordered_json& x) {
                const std::string p = "resolution." + f;
                if (f == "Nx") cfg.resolution.Nx = need_int(x, p);
                else if (f == "My") cfg.resolution.My = need_int(x, p);
                else if (f == "Jy") cfg.resolution.Jy = need_int(x, p);
                else if (f == "quad_x") cfg.resolution.quad_x = need_int(x, p);
                else if (f == "quad_y") cfg.resolution.quad_y = need_int(x, p);
                else return false;
                return true;
            });
        } else if (key == "params") {
            saw_params = true;
            walk_section(v, key, [&](const std::string& f, const ordered_json& x) {
                const std::string p = "params." + f;
                if (f == "Pr") { cfg.params.Pr = need_number(x, p); saw[0] = true; }
                else if (f == "Ra") { cfg.params.Ra = need_number(x, p); saw[1] = true; }
                else if (f == "Nsq") { cfg.params.Nsq = need_number(x, p); saw[2] = true; }
                else if (f == "Lsq") { cfg.params.Lsq = need_number(x, p); saw[3] = true; }
                else if (f == "D") { cfg.params.D = need_number(x, p); saw[4] = true; }
                else return false;
                return true;
            });
        } else if (key == "stepper") {
            walk_section(v, key, [&](const std::string& f, const ordered_json& x) {
                const std::string p = "stepper." + f;
                if (f == "scheme") cfg.stepper.scheme = scheme_from_name(need_string(x, p));
                else if (f == "dt") cfg.stepper.dt = need_number(x, p);
                else if (f == "t_end") cfg.stepper.t_end = need_number(x, p);
                else if (f == "ledger_stride") cfg.stepper.ledger_stride = need_int(x, p);
                else return false;
                return true;
            });
        } else if (key == "initial") {
            walk_section(v, key, [&](const std::string& f, const ordered_json& x) {
                const std::string p = "initial." + f;
                if (f == "preset") {
                    try {
                        cfg.initial.preset = preset_from_name(need_string(x, p));
                    } catch (const std::invalid_argument& e) {
                        throw ConfigError(p + ": " + e.what());
                    }
                } else if (f == "checkpoint") {
                    cfg.initial.checkpoint = need_string(x, p);
                } else return false;
                return true;
            });
        } else if (key == "experiment") {
            walk_section(v, key, [&](const std::string& f, const ordered_json& x) {
                const std::string p = "experiment." + f;
                if (f == "deltas") {
                    if (!x.is_array()) bad_type(p, "an array of numbers");
                    cfg.experiment.deltas.clear();
                    for (const auto& e : x) cfg.experiment.deltas.push_back(need_number(e, p));
                } else if (f == "resolutions") {
                    if (!x.is_array()) bad_type(p, "an array of integers");
                    cfg.experiment.resolutions.clear();
                    for (const auto& e : x) cfg.experiment.resolutions.push_back(need_int(e, p));
                } else if (f == "trials") {
                    cfg.experiment.trials = need_int(x, p);
                } else if (f == "ledger") {
                    cfg.experiment.ledger = need_string(x, p);
                } else return false;
                return true;
            });
        } else if (key == "out_dir") {
            cfg.out_dir = need_string(v, "out_dir");
        } else if (key == "seed") {
            if (!v.is_number_integer() || v.get<long long>() < 0)
                bad_type("seed", "a nonnegative integer");
            cfg.seed = v.get<std::uint64_t>();
        } else {
            throw ConfigError(key + ": unknown field");
        }
    }

    if (!saw_params) throw ConfigError("params: missing required section");
    static const char* pf[5] = {"Pr", "Ra", "Nsq", "Lsq", "D"};
    for (int i = 0; i < 5; ++i)
        if (!saw[i]) throw ConfigError(std::string("params.") + pf[i] + ": missing required field");

    cfg.validate();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("config: cannot read \"" + path + "\"");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void apply_override(RunConfig& cfg, const std::string& keyval) {
    const auto eq = keyval.find('=');
    if (eq == std::string::npos || eq == 0)
        throw ConfigError("override: expected key=value, got \"" + keyval + "\"");
    const std::string key = keyval.substr(0, eq);
    const std::string val = keyval.substr(eq + 1);

    auto as_real = [&] {
        try {
            size_t used = 0;
            Real r = std::stod(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            return r;
        } catch (const std::exception&) {
            throw ConfigError("override " + key + ": \"" + val + "\" is not a number");
        }
    };
    auto as_int = [&] {
        try {
            size_t used = 0;
            int r = std::stoi(val, &used);
            if (used != val.size()) throw std::invalid_argument(val);
            return r;
        } catch (const std::exception&) {
            throw ConfigError("override " + key + ": \"" + val + "\" is not an integer");
        }
    };

    if (key == "domain.l") cfg.domain.l = as_real();
    else if (key == "resolution.Nx") cfg.resolution.Nx = as_int();
    else if (key == "resolution.My") cfg.resolution.My = as_int();
    else if (key == "resolution.Jy") cfg.resolution.Jy = as_int();
    else if (key == "resolution.quad_x") cfg.resolution.quad_x = as_int();
    else if (key == "resolution.quad_y") cfg.resolution.quad_y = as_int();
    else if (key == "params.Pr") cfg.params.Pr = as_real();
    else if (key == "params.Ra") cfg.params.Ra = as_real();
    else if (key == "params.Nsq") cfg.params.Nsq = as_real();
    else if (key == "params.Lsq") cfg.params.Lsq = as_real();
    else if (key == "params.D") cfg.params.D = as_real();
    else if (key == "stepper.scheme") cfg.stepper.scheme = scheme_from_name(val);
    else if (key == "stepper.dt") cfg.stepper.dt = as_real();
    else if (key == "stepper.t_end") cfg.stepper.t_end = as_real();
    else if (key == "stepper.ledger_stride") cfg.stepper.ledger_stride = as_int();
    else if (key == "initial.preset") {
        try {
            cfg.initial.preset = preset_from_name(val);
        } catch (const std::invalid_argument& e) {
            throw ConfigError(std::string("override initial.preset: ") + e.what());
        }
    } else if (key == "initial.checkpoint") cfg.initial.checkpoint = val;
    else if (key == "experiment.trials") cfg.experiment.trials = as_int();
    else if (key == "experiment.ledger") cfg.experiment.ledger = val;
    else if (key == "out_dir") cfg.out_dir = val;
    else if (key == "seed") {
        try {
            cfg.seed = std::stoull(val);
        } catch (const std::exception&) {
            throw ConfigError("override seed: \"" + val + "\" is not an integer");
        }
    } else {
        throw ConfigError("override: unknown or non-scalar field \"" + key + "\"");
    }
}

std::string config_json(const RunConfig& cfg) {
    ordered_json j;
    j["domain"] = {{"l", cfg.domain.l}};
    j["resolution"] = {{"Nx", cfg.resolution.Nx},
                       {"My", cfg.resolution.My},
                       {"Jy", cfg.resolution.Jy},
                       {"quad_x", cfg.resolution.quad_x},
                       {"quad_y", cfg.resolution.quad_y}};
    j["params"] = {{"Pr", cfg.params.Pr},
                   {"Ra", cfg.params.Ra},
                   {"Nsq", cfg.params.Nsq},
                   {"Lsq", cfg.params.Lsq},
                   {"D", cfg.params.D}};
    j["stepper"] = {{"scheme", scheme_name(cfg.stepper.scheme)},
                    {"dt", cfg.stepper.dt},
                    {"t_end", cfg.stepper.t_end},
                    {"ledger_stride", cfg.stepper.ledger_stride}};
    j["initial"] = {{"preset", preset_name(cfg.initial.preset)},
                    {"checkpoint", cfg.initial.checkpoint}};
    j["experiment"] = {{"deltas", cfg.experiment.deltas},
                       {"resolutions", cfg.experiment.resolutions},
                       {"trials", cfg.experiment.trials},
                       {"ledger", cfg.experiment.ledger}};
    j["out_dir"] = cfg.out_dir;
    j["seed"] = cfg.seed;
    return j.dump(2);
}

}  // namespace micropolar
