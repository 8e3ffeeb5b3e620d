#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "spreadlab/parallelism.hpp"
#include "spreadlab/report.hpp"

// Run configuration. One JSON schema shared by all subcommands:
//
// {
//   "profile":   {"kind": "regular"|"satz1"|"satz2"|"table", ...params,
//                 "scale": 1.0, "shift": 0.0},          // transform, optional
//   "handedness": 1 | -1,
//   "placement": {"s": 1.0, "t": 0.0},
//   "gamma":     "SO2" | "O2",
//   "oriented":  true,
//   "samples":   1000,
//   "seed":      7,
//   "tol":       {"covering": ..., "pairing": ...}      // optional overrides
// }
//
// A file holding just the profile object is accepted wherever a full
// configuration is.

namespace spreadlab {

struct RunConfig {
    ParallelismSpec spec;
    int samples = 1000;
    std::uint64_t seed = 7;
    double tol_covering = tol::kClassification;
    double tol_pairing = tol::kSolver;
    std::string out; ///< default output path; the CLI flag overrides
};

namespace cfg {

using nlohmann::json;

inline void require_keys(const json& j, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : allowed)
            if (it.key() == k) ok = true;
        if (!ok) throw ConfigError("unknown key \"" + it.key() + "\" in " + where);
    }
}

inline double number(const json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ConfigError(where + " requires numeric \"" + std::string(key) + "\"");
    return j.at(key).get<double>();
}

inline Profile parse_profile(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ConfigError("profile must be an object with a \"kind\" string");
    const std::string kind = j.at("kind").get<std::string>();

    Profile p = profile_regular(1.0);
    if (kind == "regular") {
        require_keys(j, {"kind", "d", "scale", "shift"}, "regular profile");
        p = profile_regular(number(j, "d", "regular profile"));
    } else if (kind == "satz1") {
        require_keys(j, {"kind", "w", "c", "scale", "shift"}, "satz1 profile");
        p = profile_satz1(number(j, "w", "satz1 profile"), number(j, "c", "satz1 profile"));
    } else if (kind == "satz2") {
        require_keys(j, {"kind", "d", "scale", "shift"}, "satz2 profile");
        p = profile_satz2(number(j, "d", "satz2 profile"));
    } else if (kind == "table") {
        require_keys(j, {"kind", "r", "a", "b", "scale", "shift"}, "table profile");
        auto vec = [&](const char* key) {
            if (!j.contains(key) || !j.at(key).is_array())
                throw ConfigError("table profile requires array \"" + std::string(key) + "\"");
            return j.at(key).get<std::vector<double>>();
        };
        p = profile_table(vec("r"), vec("a"), vec("b"));
    } else {
        throw ConfigError("unknown profile kind \"" + kind + "\"");
    }

    const double s = j.contains("scale") ? number(j, "scale", "profile") : 1.0;
    const double t = j.contains("shift") ? number(j, "shift", "profile") : 0.0;
    if (s != 1.0 || t != 0.0) p = transform_profile(p, s, t);
    return p;
}

inline RunConfig parse_config(const json& j) {
    if (!j.is_object()) throw ConfigError("configuration must be a JSON object");

    // bare profile object accepted as a full config
    if (j.contains("kind")) {
        RunConfig rc;
        rc.spec.profile = parse_profile(j);
        return rc;
    }

    require_keys(j,
                 {"profile", "handedness", "placement", "gamma", "oriented", "samples", "seed",
                  "tol", "command", "out"},
                 "configuration");
    if (!j.contains("profile")) throw ConfigError("configuration requires \"profile\"");

    RunConfig rc;
    rc.spec.profile = parse_profile(j.at("profile"));
    if (j.contains("handedness")) {
        const int h = j.at("handedness").get<int>();
        if (h != 1 && h != -1) throw ConfigError("handedness must be 1 or -1");
        rc.spec.handedness = h;
    }
    if (j.contains("placement")) {
        const json& pl = j.at("placement");
        require_keys(pl, {"s", "t"}, "placement");
        rc.spec.placement.s = pl.contains("s") ? number(pl, "s", "placement") : 1.0;
        rc.spec.placement.t = pl.contains("t") ? number(pl, "t", "placement") : 0.0;
        if (!(rc.spec.placement.s > 0.0)) throw ConfigError("placement.s must be positive");
    }
    if (j.contains("gamma")) {
        const std::string g = j.at("gamma").get<std::string>();
        if (g == "SO2") rc.spec.gamma = Gamma::SO2;
        else if (g == "O2") rc.spec.gamma = Gamma::O2;
        else throw ConfigError("gamma must be \"SO2\" or \"O2\"");
    }
    if (j.contains("oriented")) rc.spec.oriented = j.at("oriented").get<bool>();
    if (j.contains("samples")) {
        rc.samples = j.at("samples").get<int>();
        if (rc.samples <= 0) throw ConfigError("samples must be positive");
    }
    if (j.contains("seed")) rc.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("tol")) {
        const json& t = j.at("tol");
        require_keys(t, {"covering", "pairing"}, "tol");
        if (t.contains("covering")) rc.tol_covering = number(t, "covering", "tol");
        if (t.contains("pairing")) rc.tol_pairing = number(t, "pairing", "tol");
    }
    if (j.contains("out")) rc.out = j.at("out").get<std::string>();
    return rc;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return j;
}

inline Json profile_to_json(const Profile& p) {
    Json j = Json::object();
    j.set("kind", Json::str(to_string(p.kind())));
    switch (p.kind()) {
        case ProfileKind::Regular:
        case ProfileKind::Satz2: j.set("d", Json::real(p.param_d())); break;
        case ProfileKind::Satz1:
            j.set("w", Json::real(p.param_w()));
            j.set("c", Json::real(p.param_c()));
            break;
        case ProfileKind::Table: break;
    }
    j.set("scale", Json::real(p.scale()));
    j.set("shift", Json::real(p.shift()));
    return j;
}

} // namespace cfg
} // namespace spreadlab
