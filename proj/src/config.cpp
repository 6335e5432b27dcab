#include "mrs/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace mrs {

namespace {

using nlohmann::json;

const std::set<std::string> kKeys = {
    "model",  "params", "n0",       "levels",   "eps",           "mr_order",       "child_factor",
    "safety_radius", "remesh_interval", "cfl", "rk_order", "eno_order", "theta", "t_final",
    "snapshot_times", "snapshot_steps", "max_steps", "output"};
const std::set<std::string> kOutputKeys = {"prefix", "profiles", "significance_map"};

template <class T>
T get(const json& j, const char* key, T fallback) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config field '") + key + "' has the wrong type");
    }
}

double get_number(const json& j, const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError(std::string("config field '") + key + "' must be a number");
    return j.at(key).get<double>();
}

long get_integer(const json& j, const char* key, long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) throw ConfigError(std::string("config field '") + key + "' must be an integer");
    return j.at(key).get<long>();
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!kKeys.count(key)) throw ConfigError("unknown config field '" + key + "'");
    }
    RunConfig rc;
    if (!j.contains("model") || !j.at("model").is_string()) throw ConfigError("config field 'model' is required");
    rc.model = j.at("model").get<std::string>();
    if (j.contains("params")) {
        if (!j.at("params").is_object()) throw ConfigError("config field 'params' must be an object");
        for (const auto& [key, value] : j.at("params").items()) {
            if (!value.is_number()) throw ConfigError("model parameter '" + key + "' must be a number");
            rc.params[key] = value.get<double>();
        }
    }
    ModelProblem m;
    try {
        m = make_model(rc.model, rc.params);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    const bool cells = m.family == ModelFamily::ConvectionDiffusion;

    SolveConfig& s = rc.solve;
    const long n0 = get_integer(j, "n0", 256);
    const long levels = get_integer(j, "levels", 5);
    if (n0 < 4 || levels < 0 || levels > 30 || (n0 >> levels) < 2 || n0 % (1L << levels) != 0)
        throw ConfigError("n0 must be divisible by 2^levels with at least two coarse intervals");
    s.n0 = static_cast<std::size_t>(n0);
    s.levels = static_cast<int>(levels);
    s.policy.eps = get_number(j, "eps", 1e-3);
    s.policy.child_factor = get_number(j, "child_factor", 2.0);
    s.policy.safety_radius = static_cast<int>(get_integer(j, "safety_radius", 1));
    s.mr_order = static_cast<int>(get_integer(j, "mr_order", cells ? 3 : 4));
    s.remesh_interval = static_cast<int>(get_integer(j, "remesh_interval", m.family == ModelFamily::Hyperbolic ? 2 : 1));
    s.cfl = get_number(j, "cfl", 0.5);
    s.rk_order = static_cast<int>(get_integer(j, "rk_order", 2));
    s.scheme.eno_order = static_cast<int>(get_integer(j, "eno_order", 2));
    s.scheme.theta = get_number(j, "theta", 1.0);
    s.t_final = get_number(j, "t_final", 0.0);
    s.max_steps = get_integer(j, "max_steps", s.max_steps);
    s.snapshot_times = get<std::vector<double>>(j, "snapshot_times", {});
    s.snapshot_steps = get<std::vector<long>>(j, "snapshot_steps", {});

    if (s.policy.eps < 0) throw ConfigError("eps must be non-negative");
    if (s.policy.safety_radius < 0) throw ConfigError("safety_radius must be non-negative");
    if (!(s.cfl > 0) || s.cfl > 1.0) throw ConfigError("cfl must lie in (0,1]");
    if (s.rk_order < 1 || s.rk_order > 3) throw ConfigError("rk_order must be 1, 2 or 3");
    if (s.scheme.eno_order < 1 || s.scheme.eno_order > 3) throw ConfigError("eno_order must be 1, 2 or 3");
    if (s.scheme.theta < 0 || s.scheme.theta > 2) throw ConfigError("theta must lie in [0,2]");
    if (s.remesh_interval < 1) throw ConfigError("remesh_interval must be positive");
    if (s.t_final < 0) throw ConfigError("t_final must be non-negative");
    try {
        (void)make_coeffs(cells ? DataKind::CellAverage : DataKind::PointValue, s.mr_order);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (j.contains("output")) {
        const json& o = j.at("output");
        if (!o.is_object()) throw ConfigError("config field 'output' must be an object");
        for (const auto& [key, value] : o.items()) {
            (void)value;
            if (!kOutputKeys.count(key)) throw ConfigError("unknown output field '" + key + "'");
        }
        rc.output.prefix = get<std::string>(o, "prefix", rc.model);
        rc.output.profiles = get<bool>(o, "profiles", true);
        rc.output.significance_map = get<bool>(o, "significance_map", false);
    } else {
        rc.output.prefix = rc.model;
    }
    return rc;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

}  // namespace mrs
