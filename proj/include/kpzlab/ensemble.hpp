// Monte Carlo ensemble runner: a parallel map over sample indices with
// deterministic per-sample streams. Results are stored by index, so the
// output is independent of thread count and scheduling.

#pragma once

#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "kpzlab/lpp.hpp"
#include "kpzlab/rng.hpp"
#include "kpzlab/scaling.hpp"
#include "kpzlab/stats.hpp"
#include "kpzlab/tasep.hpp"

namespace kpzlab {

struct ResourceGuardError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Predicted work (grid cells x samples) against the default cap.
inline void check_resource_budget(double predicted_cell_updates, bool override_guard = false,
                                  double cap = 5e9) {
    if (override_guard) return;
    if (predicted_cell_updates > cap)
        throw ResourceGuardError("resource guard: predicted " +
                                 std::to_string(predicted_cell_updates) +
                                 " cell updates exceeds cap " + std::to_string(cap));
}

// Runs fn(stream_key, index) for index in [0, n_samples); each call returns
// a tuple of observables (size tuple_size). Parallelism 0 or 1 runs inline.
template <class Fn>
std::vector<std::vector<double>> run_ensemble_raw(int n_samples, std::uint64_t master_seed,
                                                  int parallelism, Fn&& fn) {
    if (n_samples < 1) throw std::invalid_argument("run_ensemble: n_samples >= 1");
    std::vector<std::vector<double>> out(static_cast<std::size_t>(n_samples));
    const int workers = std::max(1, parallelism);
    if (workers == 1) {
        for (int i = 0; i < n_samples; ++i)
            out[static_cast<std::size_t>(i)] =
                fn(SeedPolicy{master_seed, static_cast<std::uint64_t>(i)}.stream_key(),
                   static_cast<std::size_t>(i));
        return out;
    }
    std::atomic<int> next{0};
    std::exception_ptr err;
    std::mutex err_mu;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const int i = next.fetch_add(1);
                if (i >= n_samples) return;
                try {
                    out[static_cast<std::size_t>(i)] =
                        fn(SeedPolicy{master_seed, static_cast<std::uint64_t>(i)}.stream_key(),
                           static_cast<std::size_t>(i));
                } catch (...) {
                    std::lock_guard<std::mutex> lk(err_mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    return out;
}

// Marginal of component k as a sorted empirical distribution.
inline EmpiricalDistribution marginal(const std::vector<std::vector<double>>& tuples,
                                      std::size_t k) {
    std::vector<double> xs;
    xs.reserve(tuples.size());
    for (const auto& t : tuples) xs.push_back(t.at(k));
    return EmpiricalDistribution::from_samples(std::move(xs));
}

// Joint empirical CDF at a point, by counting (n small enough that O(n m)
// per evaluation is fine).
inline double joint_cdf(const std::vector<std::vector<double>>& tuples,
                        const std::vector<double>& point) {
    std::size_t cnt = 0;
    for (const auto& t : tuples) {
        bool all = true;
        for (std::size_t k = 0; k < point.size(); ++k)
            if (t[k] > point[k]) {
                all = false;
                break;
            }
        if (all) ++cnt;
    }
    return static_cast<double>(cnt) / static_cast<double>(tuples.size());
}

inline double sample_covariance(const std::vector<std::vector<double>>& tuples, std::size_t a,
                                std::size_t b) {
    const double n = static_cast<double>(tuples.size());
    if (n < 2) throw std::invalid_argument("sample_covariance: n >= 2");
    double ma = 0.0, mb = 0.0;
    for (const auto& t : tuples) {
        ma += t[a];
        mb += t[b];
    }
    ma /= n;
    mb /= n;
    double acc = 0.0;
    for (const auto& t : tuples) acc += (t[a] - ma) * (t[b] - mb);
    return acc / (n - 1.0);
}

// Typed ensemble: samples the model named by the frame and returns the
// frame-standardized observables per point, joint samples kept as tuples.
struct EnsembleSpec {
    BoundaryParams params;
    ScalingFrame frame;
    int n_samples = 0;
    std::uint64_t master_seed = 0;
    int parallelism = 1;
    bool override_resource_guard = false;
};

struct EnsembleResult {
    std::vector<std::vector<double>> tuples;  // n_samples x points

    EmpiricalDistribution point(std::size_t k) const { return marginal(tuples, k); }
};

inline EnsembleResult run_ensemble(const EnsembleSpec& spec) {
    if (spec.frame.points.empty()) throw std::invalid_argument("run_ensemble: no frame points");
    const auto& fr = spec.frame;
    EnsembleResult res;

    if (fr.model == FrameModel::LppOneSidedFixedY || fr.model == FrameModel::LppCut) {
        std::vector<LppFramePoint> pts;
        std::vector<GridPoint> targets;
        for (const auto& p : fr.points) {
            const LppFramePoint fp =
                fr.model == FrameModel::LppOneSidedFixedY
                    ? lpp_scaling0(fr.T, fr.geometry, p.tau, 0.0)
                    : lpp_scaling1(fr.T, fr.nu, fr.geometry, p.tau, p.theta, 0.0);
            pts.push_back(fp);
            targets.push_back({static_cast<int>(fp.x), static_cast<int>(fp.y)});
        }
        int bx = 0, by = 0;
        for (const auto& t : targets) {
            bx = std::max(bx, t.x);
            by = std::max(by, t.y);
        }
        check_resource_budget(static_cast<double>(bx + 1) * (by + 1) * spec.n_samples,
                              spec.override_resource_guard);
        res.tuples = run_ensemble_raw(
            spec.n_samples, spec.master_seed, spec.parallelism,
            [&](std::uint64_t key, std::size_t) {
                const auto L = passage_times_fused(spec.params, key, targets);
                std::vector<double> out(L.size());
                for (std::size_t k = 0; k < L.size(); ++k)
                    out[k] = lpp_standardize(pts[k], L[k]);
                return out;
            });
        return res;
    }

    // TasepHeight: height at X(tau, theta), standardized by the frame
    std::vector<TasepFramePoint> pts;
    double t_hi = 0.0;
    int site_lo = 0, site_hi = 0;
    for (const auto& p : fr.points) {
        const auto fp = tasep_scaling(fr.T, fr.nu, fr.geometry, p.tau, p.theta, 0.0);
        pts.push_back(fp);
        t_hi = std::max(t_hi, fr.T + p.theta * std::pow(fr.T, fr.nu));
        site_lo = std::min<int>(site_lo, static_cast<int>(fp.site));
        site_hi = std::max<int>(site_hi, static_cast<int>(fp.site));
    }
    const int margin = static_cast<int>(std::ceil(t_hi + 8.0 * std::sqrt(t_hi))) + 4;
    const int lo = site_lo - margin, hi = site_hi + margin;
    const double rho_minus = spec.params.eta;
    const double rho_plus = 1.0 - spec.params.pi;
    check_resource_budget(static_cast<double>(hi - lo + 1) * t_hi * spec.n_samples,
                          spec.override_resource_guard);
    res.tuples = run_ensemble_raw(
        spec.n_samples, spec.master_seed, spec.parallelism,
        [&](std::uint64_t key, std::size_t) {
            const auto init = generate_bernoulli_profile(rho_minus, rho_plus, lo, hi, key);
            const auto traj = simulate_event_driven(init, t_hi, mix64(key + 17));
            std::vector<double> out(pts.size());
            for (std::size_t k = 0; k < pts.size(); ++k) {
                const double t_k =
                    fr.T + fr.points[k].theta * std::pow(fr.T, fr.nu);
                const int h = traj.height(t_k, static_cast<int>(pts[k].site));
                out[k] = tasep_standardize(pts[k], static_cast<double>(h));
            }
            return out;
        });
    return res;
}

} // namespace kpzlab
