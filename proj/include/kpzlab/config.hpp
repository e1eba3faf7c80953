// Run configuration: a single flat JSON document (file and/or flags; flags
// override file values). Unknown keys are rejected. Parameters are
// validated against the preconditions of the modules they will reach
// before any compute starts.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpzlab/io.hpp"

namespace kpzlab {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class Scenario { SimulateLpp, SimulateTasep, LimitCdf, SchurCdf, Verify };

struct RunConfig {
    Scenario scenario = Scenario::Verify;
    std::uint64_t seed = 1;
    int samples = 1000;
    int threads = 1;
    std::string out_dir = "out";
    bool override_resource_guard = false;

    // simulate-lpp
    double eta = 0.5;
    std::optional<double> pi;
    bool exact_offsets = false;
    std::optional<double> gamma;
    std::optional<double> T;
    double tau = 0.0;
    std::optional<int> x, y;

    // simulate-tasep
    double rho_minus = 0.5, rho_plus = 0.5;
    double t_max = 10.0;
    int site = 0;

    // limit-cdf / schur-cdf
    std::string process = "airy2";
    double s_min = -5.0, s_max = 2.0, s_step = 0.1;
    int nodes = 40;
    double cutoff = 10.0;
    int schur_N = 1;
    int schur_n = 1;
    int contour_points = 256;

    // verify
    std::vector<int> only;
};

namespace detail {

inline const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys{
        "scenario",  "seed",      "samples",   "threads",        "out",
        "override-resource-guard", "eta",      "pi",             "exact-offsets",
        "gamma",     "T",         "tau",       "x",              "y",
        "rho-minus", "rho-plus",  "t-max",     "site",           "process",
        "s-min",     "s-max",     "s-step",    "nodes",          "cutoff",
        "N",         "n",         "contour-points",              "only"};
    return keys;
}

inline Scenario scenario_from_string(const std::string& s) {
    if (s == "simulate-lpp") return Scenario::SimulateLpp;
    if (s == "simulate-tasep") return Scenario::SimulateTasep;
    if (s == "limit-cdf") return Scenario::LimitCdf;
    if (s == "schur-cdf") return Scenario::SchurCdf;
    if (s == "verify") return Scenario::Verify;
    throw ConfigError("unknown scenario '" + s +
                      "' (expected simulate-lpp | simulate-tasep | limit-cdf | schur-cdf | verify)");
}

} // namespace detail

// Merge overrides into base (override wins key-by-key).
inline json merge_config(json base, const json& overrides) {
    for (auto it = overrides.begin(); it != overrides.end(); ++it) base[it.key()] = it.value();
    return base;
}

inline RunConfig parse_config(const json& doc) {
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    for (auto it = doc.begin(); it != doc.end(); ++it)
        if (detail::known_keys().count(it.key()) == 0)
            throw ConfigError("unknown config key '" + it.key() + "'");

    RunConfig c;
    if (!doc.contains("scenario")) throw ConfigError("missing required key 'scenario'");
    c.scenario = detail::scenario_from_string(doc.at("scenario").get<std::string>());

    auto get_num = [&](const char* key, double lo, double hi, double dflt) {
        if (!doc.contains(key)) return dflt;
        const double v = doc.at(key).get<double>();
        if (!(v >= lo && v <= hi))
            throw ConfigError(std::string("key '") + key + "' out of range [" +
                              format_double(lo) + ", " + format_double(hi) + "]");
        return v;
    };
    auto get_int = [&](const char* key, int lo, int hi, int dflt) {
        if (!doc.contains(key)) return dflt;
        const int v = doc.at(key).get<int>();
        if (v < lo || v > hi)
            throw ConfigError(std::string("key '") + key + "' out of integer range");
        return v;
    };

    if (doc.contains("seed")) c.seed = doc.at("seed").get<std::uint64_t>();
    c.samples = get_int("samples", 1, 100000000, c.samples);
    c.threads = get_int("threads", 1, 1024, c.threads);
    if (doc.contains("out")) c.out_dir = doc.at("out").get<std::string>();
    if (doc.contains("override-resource-guard"))
        c.override_resource_guard = doc.at("override-resource-guard").get<bool>();

    if (doc.contains("eta")) {
        c.eta = doc.at("eta").get<double>();
        if (!(c.eta > 0.0 && c.eta <= 1.0)) throw ConfigError("eta must lie in (0,1]");
    }
    if (doc.contains("pi")) {
        const double pi = doc.at("pi").get<double>();
        if (!(pi > 0.0 && pi <= 1.0)) throw ConfigError("pi must lie in (0,1]");
        c.pi = pi;
    }
    if (doc.contains("exact-offsets")) c.exact_offsets = doc.at("exact-offsets").get<bool>();
    if (doc.contains("gamma")) {
        const double g = doc.at("gamma").get<double>();
        if (!(g > 0.0)) throw ConfigError("gamma must be positive");
        c.gamma = g;
    }
    if (doc.contains("T")) {
        const double T = doc.at("T").get<double>();
        if (!(T > 0.0)) throw ConfigError("T must be positive");
        c.T = T;
    }
    c.tau = get_num("tau", -100.0, 100.0, c.tau);
    if (doc.contains("x")) c.x = get_int("x", 0, 1 << 28, 0);
    if (doc.contains("y")) c.y = get_int("y", 0, 1 << 28, 0);

    c.rho_minus = get_num("rho-minus", 0.0, 1.0, c.rho_minus);
    c.rho_plus = get_num("rho-plus", 0.0, 1.0, c.rho_plus);
    c.t_max = get_num("t-max", 0.0, 1e7, c.t_max);
    c.site = get_int("site", -(1 << 28), 1 << 28, c.site);

    if (doc.contains("process")) {
        c.process = doc.at("process").get<std::string>();
        if (c.process != "airy2" && c.process != "bm-to-airy2" && c.process != "brownian")
            throw ConfigError("process must be airy2 | bm-to-airy2 | brownian");
    }
    c.s_min = get_num("s-min", -1e6, 1e6, c.s_min);
    c.s_max = get_num("s-max", -1e6, 1e6, c.s_max);
    c.s_step = get_num("s-step", 1e-9, 1e6, c.s_step);
    if (c.s_max < c.s_min) throw ConfigError("s-max must be >= s-min");
    c.nodes = get_int("nodes", 8, 512, c.nodes);
    c.cutoff = get_num("cutoff", 6.0, 200.0, c.cutoff);
    c.schur_N = get_int("N", 1, 12, c.schur_N);
    c.schur_n = get_int("n", 1, 1000, c.schur_n);
    c.contour_points = get_int("contour-points", 16, 65536, c.contour_points);

    if (doc.contains("only")) {
        for (const auto& v : doc.at("only")) {
            const int id = v.get<int>();
            if (id < 1 || id > 11) throw ConfigError("only: criterion ids are 1..11");
            c.only.push_back(id);
        }
    }

    // cross-field requirements
    if (c.scenario == Scenario::SimulateLpp) {
        const bool raw = c.x.has_value() && c.y.has_value();
        const bool frame = c.gamma.has_value() && c.T.has_value();
        if (!raw && !frame)
            throw ConfigError("simulate-lpp needs either x,y or gamma,T");
    }
    if (c.scenario == Scenario::SchurCdf && !doc.contains("eta"))
        throw ConfigError("schur-cdf requires eta");
    return c;
}

} // namespace kpzlab
