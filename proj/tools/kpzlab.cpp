// kpzlab - command-line front end for the simulation and verification
// workbench. Scenarios: simulate-lpp, simulate-tasep, limit-cdf, schur-cdf,
// verify. Configuration comes from a JSON file (--config) and/or flags;
// flags override file values. Exit codes: 0 success, 1 verification
// failure, 2 usage or configuration error, 3 I/O error, 4 resource-guard
// refusal.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "kpzlab/config.hpp"
#include "kpzlab/ensemble.hpp"
#include "kpzlab/fredholm.hpp"
#include "kpzlab/io.hpp"
#include "kpzlab/lpp.hpp"
#include "kpzlab/scaling.hpp"
#include "kpzlab/schur.hpp"
#include "kpzlab/stats.hpp"
#include "kpzlab/tasep.hpp"
#include "kpzlab/verify.hpp"

namespace {

using namespace kpzlab;

json load_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::ios_base::failure("cannot open config file: " + path);
    json doc;
    f >> doc;
    return doc;
}

std::string out_path(const RunConfig& c, const std::string& name) {
    std::filesystem::create_directories(c.out_dir);
    return (std::filesystem::path(c.out_dir) / name).string();
}

int run_simulate_lpp(const RunConfig& c) {
    const BoundaryParams bp = c.pi.has_value()
                                  ? BoundaryParams::two_sided(c.eta, *c.pi, c.exact_offsets)
                                  : BoundaryParams::one_sided(c.eta);
    int x, y;
    bool standardized = false;
    LppFramePoint frame;
    if (c.x && c.y) {
        x = *c.x;
        y = *c.y;
    } else {
        frame = lpp_scaling0(*c.T, *c.gamma, c.tau, 0.0);
        x = static_cast<int>(frame.x);
        y = static_cast<int>(frame.y);
        standardized = true;
    }
    check_resource_budget(static_cast<double>(x + 1) * (y + 1) * c.samples,
                          c.override_resource_guard);
    const auto tuples = run_ensemble_raw(c.samples, c.seed, c.threads,
                                         [&](std::uint64_t key, std::size_t) {
                                             const double L = passage_time_fused(bp, key, x, y);
                                             return std::vector<double>{
                                                 standardized ? lpp_standardize(frame, L) : L};
                                         });
    const auto emp = marginal(tuples, 0);
    const auto mo = moments(emp);

    std::ostringstream csv;
    CsvWriter w(csv, {"sample"});
    for (double v : emp.samples) w.row({v});
    write_text_file(out_path(c, "samples.csv"), csv.str());

    json doc;
    doc["spec"] = {{"scenario", "simulate-lpp"}, {"eta", c.eta},     {"x", x},
                   {"y", y},                     {"seed", c.seed},   {"samples", c.samples},
                   {"standardized", standardized}};
    if (c.pi) doc["spec"]["pi"] = *c.pi;
    doc["per_point"] = json::array({json{{"n", emp.n()},
                                         {"mean", mo.mean},
                                         {"var", mo.variance},
                                         {"se_mean", mo.se_mean}}});
    write_json_file(out_path(c, "summary.json"), doc);
    return 0;
}

int run_simulate_tasep(const RunConfig& c) {
    const double shield = c.t_max + 8.0 * std::sqrt(c.t_max) + 4.0;
    const int margin = static_cast<int>(std::ceil(shield));
    const int lo = c.site - margin, hi = c.site + margin;
    check_resource_budget(static_cast<double>(hi - lo + 1) * c.t_max * c.samples,
                          c.override_resource_guard);
    const auto tuples = run_ensemble_raw(
        c.samples, c.seed, c.threads, [&](std::uint64_t key, std::size_t) {
            const auto init = generate_bernoulli_profile(c.rho_minus, c.rho_plus, lo, hi, key);
            const auto traj = simulate_event_driven(init, c.t_max, mix64(key + 17));
            return std::vector<double>{static_cast<double>(traj.height(c.t_max, c.site))};
        });
    const auto emp = marginal(tuples, 0);
    const auto mo = moments(emp);

    std::ostringstream csv;
    CsvWriter w(csv, {"t", "j", "h"});
    for (double v : emp.samples) w.row({c.t_max, static_cast<double>(c.site), v});
    write_text_file(out_path(c, "heights.csv"), csv.str());

    json doc;
    doc["spec"] = {{"scenario", "simulate-tasep"}, {"rho-minus", c.rho_minus},
                   {"rho-plus", c.rho_plus},       {"t-max", c.t_max},
                   {"site", c.site},               {"seed", c.seed},
                   {"samples", c.samples}};
    doc["per_point"] = json::array({json{{"n", emp.n()},
                                         {"mean", mo.mean},
                                         {"var", mo.variance},
                                         {"se_var", mo.se_variance}}});
    write_json_file(out_path(c, "summary.json"), doc);
    return 0;
}

int run_limit_cdf(const RunConfig& c) {
    KernelSpec spec;
    if (c.process == "airy2")
        spec.process = Process::Airy2;
    else if (c.process == "bm-to-airy2")
        spec.process = Process::BmToAiry2;
    else
        spec.process = Process::Brownian;
    const double tau = (spec.process == Process::Brownian && c.tau == 0.0) ? 1.0 : c.tau;
    QuadratureScheme q;
    q.nodes_per_slice = c.nodes;
    q.domain_cutoff = c.cutoff;

    std::ostringstream csv;
    CsvWriter w(csv, {"s", "value", "convergence_estimate"});
    for (double s = c.s_min; s <= c.s_max + 1e-12; s += c.s_step) {
        spec.times = {tau};
        spec.thresholds = {s};
        const auto r = fredholm_joint_cdf(spec, q);
        w.row({s, r.value, r.convergence_estimate});
    }
    write_text_file(out_path(c, "cdf.csv"), csv.str());
    return 0;
}

int run_schur_cdf(const RunConfig& c) {
    QuadratureScheme q;
    q.nodes_per_slice = std::max(c.nodes, 48);
    q.contour_points = c.contour_points;
    std::ostringstream csv;
    CsvWriter w(csv, {"s", "value", "convergence_estimate"});
    for (double s = c.s_min; s <= c.s_max + 1e-12; s += c.s_step) {
        if (s <= 0.0) continue;  // passage times are positive
        const auto r = schur_joint_cdf(c.eta, c.schur_N, {c.schur_n}, {s}, q);
        w.row({s, r.value, r.convergence_estimate});
    }
    write_text_file(out_path(c, "cdf.csv"), csv.str());
    return 0;
}

int run_verify(const RunConfig& c) {
    VerifyOptions opt;
    opt.threads = c.threads;
    json verdicts = json::array();
    int failures = 0;
    std::vector<int> ids = c.only;
    if (ids.empty())
        for (int id = 1; id <= 11; ++id) ids.push_back(id);
    for (int id : ids) {
        for (const auto& r : run_acceptance(opt, {id})) {
            std::printf("%s  C%02d %-26s (%.1fs)  %s\n", r.pass ? "PASS" : "FAIL", r.id,
                        r.name.c_str(), r.seconds, r.detail.c_str());
            std::fflush(stdout);
            verdicts.push_back(json{{"id", r.id},
                                    {"name", r.name},
                                    {"pass", r.pass},
                                    {"seconds", r.seconds},
                                    {"detail", r.detail}});
            if (!r.pass) ++failures;
        }
    }
    json doc;
    doc["spec"] = {{"scenario", "verify"}, {"threads", c.threads}};
    doc["verdicts"] = verdicts;
    write_json_file(out_path(c, "verdicts.json"), doc);
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"TASEP / last-passage-percolation simulation and verification workbench"};
    std::string config_path, scenario, out_dir, process;
    json flags;

    app.add_option_function<std::string>(
           "--config", [&](const std::string& v) { config_path = v; }, "JSON config file");
    auto opt_str = [&](const char* name, const char* key, const char* help) {
        app.add_option_function<std::string>(
            name, [&flags, key](const std::string& v) { flags[key] = v; }, help);
    };
    auto opt_num = [&](const char* name, const char* key, const char* help) {
        app.add_option_function<double>(
            name, [&flags, key](double v) { flags[key] = v; }, help);
    };
    auto opt_int = [&](const char* name, const char* key, const char* help) {
        app.add_option_function<long long>(
            name, [&flags, key](long long v) { flags[key] = v; }, help);
    };
    auto opt_bool = [&](const char* name, const char* key, const char* help) {
        app.add_flag_function(
            name, [&flags, key](std::int64_t) { flags[key] = true; }, help);
    };

    opt_str("--scenario", "scenario", "simulate-lpp | simulate-tasep | limit-cdf | schur-cdf | verify");
    opt_int("--seed", "seed", "master seed");
    opt_int("--samples", "samples", "ensemble size");
    opt_int("--threads", "threads", "worker threads (default: KPZLAB_THREADS or 1)");
    opt_str("--out", "out", "output directory");
    opt_bool("--override-resource-guard", "override-resource-guard",
             "run even past the predicted-work cap");
    opt_num("--eta", "eta", "left-boundary parameter in (0,1]");
    opt_num("--pi", "pi", "bottom-boundary parameter in (0,1] (two-sided)");
    opt_bool("--exact-offsets", "exact-offsets", "geometric initial offsets");
    opt_num("--gamma", "gamma", "ray parameter y = gamma^2 x");
    opt_num("--T", "T", "macroscopic scale");
    opt_num("--tau", "tau", "frame time parameter");
    opt_int("--x", "x", "raw target column");
    opt_int("--y", "y", "raw target row");
    opt_num("--rho-minus", "rho-minus", "density left of the origin");
    opt_num("--rho-plus", "rho-plus", "density at and right of the origin");
    opt_num("--t-max", "t-max", "simulation horizon");
    opt_int("--site", "site", "height query site");
    opt_str("--process", "process", "airy2 | bm-to-airy2 | brownian");
    opt_num("--s-min", "s-min", "threshold grid start");
    opt_num("--s-max", "s-max", "threshold grid end");
    opt_num("--s-step", "s-step", "threshold grid step");
    opt_int("--nodes", "nodes", "quadrature nodes per slice");
    opt_num("--cutoff", "cutoff", "slice domain cutoff");
    opt_int("--N", "N", "Schur process size N");
    opt_int("--n", "n", "Schur target column");
    opt_int("--contour-points", "contour-points", "trapezoid points per contour");
    std::vector<int> only_ids;
    app.add_option("--only", only_ids, "verify: run only these criterion ids");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        json doc;
        if (!config_path.empty()) doc = load_config_file(config_path);
        doc = merge_config(doc, flags);
        if (!only_ids.empty()) doc["only"] = only_ids;
        if (!doc.contains("threads")) {
            if (const char* env = std::getenv("KPZLAB_THREADS")) doc["threads"] = std::atoi(env);
        }
        const RunConfig cfg = parse_config(doc);
        switch (cfg.scenario) {
            case Scenario::SimulateLpp: return run_simulate_lpp(cfg);
            case Scenario::SimulateTasep: return run_simulate_tasep(cfg);
            case Scenario::LimitCdf: return run_limit_cdf(cfg);
            case Scenario::SchurCdf: return run_schur_cdf(cfg);
            case Scenario::Verify: return run_verify(cfg);
        }
        return 2;
    } catch (const ResourceGuardError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
