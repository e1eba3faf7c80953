// Verification registry: the acceptance checks of the workbench, each one
// comparing Monte Carlo ensembles of the lattice models against the exact
// finite-N determinants, the limiting Fredholm-determinant laws, or the
// closed-form Gaussian laws. Every tolerance is fixed here.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "kpzlab/ensemble.hpp"
#include "kpzlab/fredholm.hpp"
#include "kpzlab/lpp.hpp"
#include "kpzlab/scaling.hpp"
#include "kpzlab/schur.hpp"
#include "kpzlab/stats.hpp"
#include "kpzlab/suites.hpp"
#include "kpzlab/tasep.hpp"

namespace kpzlab {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

struct VerifyOptions {
    int threads = 2;
    bool include_slow = true;  // the m = 2 joint convergence check in criterion 5
};

namespace detail {

struct Check {
    bool ok = true;
    std::ostringstream os;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            os << "FAILED[" << what << "] ";
        }
    }
    template <class T>
    void note(const std::string& key, T v) {
        os << key << "=" << v << " ";
    }
};

// Tabulated Airy2 one-point CDF with monotone interpolation.
inline MonotoneCubic airy2_cdf_table(double lo, double hi, double step,
                                     const QuadratureScheme& q) {
    std::vector<double> xs, ys;
    for (double s = lo; s <= hi + 1e-12; s += step) {
        xs.push_back(s);
        ys.push_back(airy2_point_cdf(s, q).value);
    }
    return MonotoneCubic(xs, ys);
}

} // namespace detail

// 1. Coupling exactness on 10^3 random 50x50 two-sided fields.
inline CriterionResult criterion_coupling(const VerifyOptions& opt) {
    detail::Check c;
    const auto rep = coupling_suite(0.3, 0.4, 50, 50, 1000, 0xC0117157ull, opt.threads);
    c.require(rep.pass(), "L2 == max(X,Y) and pinned <= L2 on every field");
    c.note("fields", rep.fields_checked);
    c.note("violations", rep.violations);
    return {1, "coupling-exactness", c.ok, c.os.str(), 0.0};
}

// 2. Finite-N determinant vs closed-form and Monte Carlo oracles.
inline CriterionResult criterion_schur_oracle(const VerifyOptions& opt) {
    detail::Check c;
    QuadratureScheme q;
    q.nodes_per_slice = 48;
    {
        const double eta = 0.5;
        double worst = 0.0;
        for (double t : {1.0, 2.0, 4.0}) {
            const auto r = schur_joint_cdf(eta, 1, {1}, {t}, q);
            const double exact = 1.0 - (std::exp(-eta * t) - eta * std::exp(-t)) / (1.0 - eta);
            worst = std::max(worst, std::abs(r.value - exact));
        }
        c.note("N1_worst_abs_err", worst);
        c.require(worst < 1e-6, "N=1 closed form to 1e-6");
    }
    {
        const double eta = 0.6;
        const int n_mc = 1000000;
        const BoundaryParams bp = BoundaryParams::one_sided(eta);
        for (double t : {6.0, 8.0, 11.0}) {
            const auto r = schur_joint_cdf(eta, 3, {3}, {t}, q);
            const auto hits = run_ensemble_raw(n_mc, 0x5C0801ull, opt.threads,
                                               [&](std::uint64_t key, std::size_t) {
                                                   return std::vector<double>{
                                                       passage_time_fused(bp, key, 3, 3) <= t
                                                           ? 1.0
                                                           : 0.0};
                                               });
            double p = 0.0;
            for (const auto& h : hits) p += h[0];
            p /= n_mc;
            const double se = std::sqrt(p * (1.0 - p) / n_mc);
            c.note("t" + std::to_string((int)t) + "_diff", std::abs(r.value - p));
            c.require(std::abs(r.value - p) <= 3.0 * se, "N=3 within 3 MC standard errors");
        }
    }
    return {2, "schur-vs-oracle", c.ok, c.os.str(), 0.0};
}

// 3. Determinant plumbing against kernels with known answers.
inline CriterionResult criterion_fredholm_plumbing(const VerifyOptions&) {
    detail::Check c;
    QuadratureScheme q;
    double worst = 0.0;
    for (double tau : {0.5, 1.0, 2.0})
        for (double s : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
            KernelSpec k;
            k.process = Process::Brownian;
            k.times = {tau};
            k.thresholds = {s};
            const auto r = fredholm_joint_cdf(k, q);
            worst = std::max(worst, std::abs(r.value - normal_cdf(s / std::sqrt(tau))));
        }
    c.note("brownian_worst_abs_err", worst);
    c.require(worst < 1e-6, "Brownian determinant equals Phi(s/sqrt(tau)) to 1e-6");

    // landmark values of the GUE Tracy-Widom law; -1.7711 is its mean with
    // F2 = 0.51501 (oracle-verified), the median sits at -1.8049124
    const auto mean_pt = airy2_point_cdf(-1.7711, q);
    c.note("F2_at_-1.7711", mean_pt.value);
    c.note("refinement", mean_pt.convergence_estimate);
    c.require(std::abs(mean_pt.value - 0.5150097488) < 1e-3,
              "F2(-1.7711) within 1e-3 of the oracle value 0.5150097");
    c.require(mean_pt.convergence_estimate < 1e-6, "doubled-resolution self-oracle to 1e-6");
    const auto med_pt = airy2_point_cdf(-1.8049124089, q);
    c.note("F2_at_median", med_pt.value);
    c.require(std::abs(med_pt.value - 0.5) < 1e-3, "median level 0.5 +- 1e-3");

    double prev = -1.0;
    bool monotone = true, bounded = true;
    for (double s = -5.0; s <= 2.01; s += 0.25) {
        const auto r = airy2_point_cdf(s, q);
        if (r.value < prev - 1e-9) monotone = false;
        if (r.raw_value < -1e-6 || r.raw_value > 1.0 + 1e-6) bounded = false;
        prev = r.value;
    }
    c.require(monotone, "Airy2 CDF monotone");
    c.require(bounded, "Airy2 CDF within [0,1]");
    return {3, "fredholm-plumbing-oracle", c.ok, c.os.str(), 0.0};
}

// 4. Law of large numbers for the one-sided limit shape.
inline CriterionResult criterion_limit_shape_lln(const VerifyOptions& opt) {
    detail::Check c;
    const double T = 2000.0;
    {
        const BoundaryParams bp = BoundaryParams::one_sided(0.75);
        const int tgt = static_cast<int>(T / 4.0);
        const auto xs = run_ensemble_raw(200, 0x11A4ull, opt.threads,
                                         [&](std::uint64_t key, std::size_t) {
                                             return std::vector<double>{
                                                 passage_time_fused(bp, key, tgt, tgt) / T};
                                         });
        double mean = 0.0;
        for (const auto& x : xs) mean += x[0];
        mean /= 200.0;
        c.note("rarefaction_mean", mean);
        c.require(std::abs(mean - 1.0) < 0.02, "|L(T/4,T/4)/T - 1| < 0.02");
    }
    {
        const BoundaryParams bp = BoundaryParams::one_sided(0.25);
        const int tgt = static_cast<int>(T);
        const auto xs = run_ensemble_raw(200, 0x11A5ull, opt.threads,
                                         [&](std::uint64_t key, std::size_t) {
                                             return std::vector<double>{
                                                 passage_time_fused(bp, key, tgt, tgt) / T};
                                         });
        double mean = 0.0;
        for (const auto& x : xs) mean += x[0];
        mean /= 200.0;
        c.note("gaussian_mean", mean);
        c.require(std::abs(mean - 16.0 / 3.0) < 0.02, "|L(T,T)/T - 16/3| < 0.02");
    }
    return {4, "limit-shape-lln", c.ok, c.os.str(), 0.0};
}

// 5. One-point Tracy-Widom convergence (plus the slow m=2 joint check).
//
// Known red at the stated parameters: the standardized law at T = 1500 is
// Tracy-Widom in shape (variance and skewness match to sampling error) but
// carries the O(1) lattice offset of the finite grid (the x+1 column count
// plus the boundary-column gain, about +2.4 waiting-time units, i.e. a
// +1.5 T^{-1/3} mean shift). That pins the honest KS near 0.062, above the
// 0.05 bound, for any correct implementation. The same statistic passes at
// T = 6000 well inside the runtime envelope; it is reported alongside.
inline CriterionResult criterion_tracy_widom(const VerifyOptions& opt) {
    detail::Check c;
    QuadratureScheme q;
    const auto table = detail::airy2_cdf_table(-6.5, 3.5, 0.05, q);
    const double gamma = 1.0, eta = 0.9;
    const BoundaryParams bp = BoundaryParams::one_sided(eta);

    auto standardized_at = [&](double T, double tau, int n, std::uint64_t seed) {
        const auto f = lpp_scaling0(T, gamma, tau, 0.0);
        const auto tuples = run_ensemble_raw(
            n, seed, opt.threads, [&](std::uint64_t key, std::size_t) {
                return std::vector<double>{lpp_standardize(
                    f, passage_time_fused(bp, key, static_cast<int>(f.x),
                                          static_cast<int>(f.y)))};
            });
        return marginal(tuples, 0);
    };

    const double T = 1500.0;
    const int n = 10000;
    const auto emp = standardized_at(T, 0.0, n, 0x771D0ull);
    const double ks = ks_distance(emp, [&](double s) { return table(s); });
    const auto mo = moments(emp);
    c.note("ks_T1500", ks);
    c.note("mean_shift", mo.mean + 1.7710868);
    c.note("var", mo.variance);
    c.require(ks < 0.05, "KS(standardized L at T=1500, F2) < 0.05");

    // convergence diagnostic: the same statistic at T = 6000
    const auto emp6 = standardized_at(6000.0, 0.0, n, 0x771D1ull);
    const double ks6 = ks_distance(emp6, [&](double s) { return table(s); });
    c.note("ks_T6000", ks6);
    c.require(ks6 < 0.05, "KS(standardized L at T=6000, F2) < 0.05");

    if (opt.include_slow) {
        // joint samples at tau = 0 and tau = 1 on shared fields
        const auto f0 = lpp_scaling0(T, gamma, 0.0, 0.0);
        const auto f1 = lpp_scaling0(T, gamma, 1.0, 0.0);
        const std::vector<GridPoint> targets{
            {static_cast<int>(f0.x), static_cast<int>(f0.y)},
            {static_cast<int>(f1.x), static_cast<int>(f1.y)}};
        const auto tuples = run_ensemble_raw(
            n, 0x771D0ull, opt.threads, [&](std::uint64_t key, std::size_t) {
                const auto L = passage_times_fused(bp, key, targets);
                return std::vector<double>{lpp_standardize(f0, L[0]),
                                           lpp_standardize(f1, L[1])};
            });
        double worst = 0.0;
        for (double a : {-1.0, 0.0, 1.0})
            for (double b : {-1.0, 0.0, 1.0}) {
                KernelSpec k;
                k.process = Process::Airy2;
                k.times = {0.0, 1.0};
                k.thresholds = {a, b};
                const double det = fredholm_joint_cdf(k, q).value;
                const double empj = joint_cdf(tuples, {a, b});
                worst = std::max(worst, std::abs(det - empj));
            }
        c.note("joint_worst_abs_err", worst);
        c.require(worst < 0.08, "m=2 joint law at tau-gap 1 within 0.08");
    }
    return {5, "tracy-widom-convergence", c.ok, c.os.str(), 0.0};
}

// 6. Gaussian-regime variance and the Brownian covariance overlap.
inline CriterionResult criterion_gaussian_variance(const VerifyOptions& opt) {
    detail::Check c;
    const double T = 2000.0, eta = 0.25;
    const double g1 = 1.0, g2 = 1.1;
    const BoundaryParams bp = BoundaryParams::one_sided(eta);
    const auto fr1 = gaussian_centering(GaussianEdge::Left, eta, g1, 1.0, T);
    const auto fr2 = gaussian_centering(GaussianEdge::Left, eta, g2, 1.0, T);
    const int y1 = static_cast<int>(std::llround(g1 * g1 * T));
    const int y2 = static_cast<int>(std::llround(g2 * g2 * T));
    const std::vector<GridPoint> targets{{static_cast<int>(T), y1}, {static_cast<int>(T), y2}};
    const int n = 10000;
    const auto tuples =
        run_ensemble_raw(n, 0x6A0551ull, opt.threads, [&](std::uint64_t key, std::size_t) {
            const auto L = passage_times_fused(bp, key, targets);
            return std::vector<double>{gaussian_standardize(fr1, L[0]),
                                       gaussian_standardize(fr2, L[1])};
        });
    const auto mo = moments(marginal(tuples, 0));
    c.note("variance", mo.variance);
    c.note("target", fr1.variance);
    c.require(std::abs(mo.variance - fr1.variance) < 0.05 * fr1.variance,
              "Var within 5% of theta(gamma^2/eta^2 - 1/(1-eta)^2)");
    const double cov = sample_covariance(tuples, 0, 1);
    const double overlap = std::min(fr1.variance, fr2.variance);
    c.note("covariance", cov);
    c.note("overlap", overlap);
    c.require(std::abs(cov - overlap) < 0.10 * overlap,
              "Cov within 10% of the Brownian overlap min(v1,v2)");
    return {6, "gaussian-regime-variance", c.ok, c.os.str(), 0.0};
}

// 7. Product law at the shock.
inline CriterionResult criterion_shock_product(const VerifyOptions& opt) {
    detail::Check c;
    const double T = 2000.0, eta = 0.2, pi = 0.3;
    const double g2 = 7.0 / 12.0;  // = shock_slope(0.2, 0.3)
    const double gamma = std::sqrt(g2);
    const BoundaryParams bp = BoundaryParams::two_sided(eta, pi);
    const auto left = gaussian_centering(GaussianEdge::Left, eta, gamma, 1.0, T);
    const auto bottom = gaussian_centering(GaussianEdge::Bottom, pi, gamma, 1.0, T);
    const int x = static_cast<int>(T);
    const int y = static_cast<int>(std::llround(g2 * T));
    const int n = 10000;
    const auto tuples =
        run_ensemble_raw(n, 0x50C4ull, opt.threads, [&](std::uint64_t key, std::size_t) {
            return std::vector<double>{gaussian_standardize(left, passage_time_fused(bp, key, x, y))};
        });
    const double s1 = std::sqrt(left.variance), s2 = std::sqrt(bottom.variance);
    const auto emp = marginal(tuples, 0);
    const double ks = ks_distance(
        emp, [&](double s) { return normal_cdf(s / s1) * normal_cdf(s / s2); });
    c.note("ks", ks);
    c.note("sigma_left", s1);
    c.note("sigma_bottom", s2);
    c.require(ks < 0.05, "KS(standardized L2, product of normals) < 0.05");
    return {7, "shock-product-law", c.ok, c.os.str(), 0.0};
}

// 8. Slow decorrelation along characteristics.
inline CriterionResult criterion_slow_decorrelation(const VerifyOptions& opt) {
    detail::Check c;
    const std::vector<double> Ts{500.0, 1000.0, 2000.0};
    const auto fan = slow_decorrelation_suite(0.9, 1.0, 0.5, Ts, 2000, 0xDEC0ull, 1.0,
                                              opt.threads);
    c.note("fan_nvar_500", fan[0].normalized_variance);
    c.note("fan_nvar_1000", fan[1].normalized_variance);
    c.note("fan_nvar_2000", fan[2].normalized_variance);
    c.require(fan[0].normalized_variance > fan[1].normalized_variance &&
                  fan[1].normalized_variance > fan[2].normalized_variance,
              "case (a): normalized variance strictly decreasing in T");

    const auto bnd = slow_decorrelation_suite(0.25, 1.0, 1.0, Ts, 1000, 0xDEC1ull, 1.0,
                                              opt.threads);
    c.note("bnd_exc_500", bnd[0].exceedance);
    c.note("bnd_exc_1000", bnd[1].exceedance);
    c.note("bnd_exc_2000", bnd[2].exceedance);
    c.require(bnd[0].exceedance > bnd[1].exceedance && bnd[1].exceedance > bnd[2].exceedance,
              "case (b): exceedance at M=1 strictly decreasing in T");
    return {8, "slow-decorrelation", c.ok, c.os.str(), 0.0};
}

// 9. TASEP <-> LPP correspondence: exact path-wise for the step condition,
// distributional for general two-sided data.
inline CriterionResult criterion_correspondence(const VerifyOptions& opt) {
    detail::Check c;
    {
        int mismatches = 0;
        for (std::uint64_t rep = 0; rep < 100; ++rep) {
            const auto field = generate_one_sided(1.0, 64, 64, 0xA11CEull + rep);
            const auto grid = passage_times(field);
            const auto traj = simulate_from_field(field, 10.0);
            for (double t : {0.5, 2.0, 4.0, 6.0, 8.0, 10.0})
                for (int j = -6; j <= 6; ++j)
                    if (height_from_lpp(grid, t, j) != traj.height(t, j)) ++mismatches;
        }
        c.note("pathwise_mismatches", mismatches);
        c.require(mismatches == 0, "step condition: path-wise equality, zero mismatches");
    }
    {
        const double rho_minus = 0.7, rho_plus = 0.3;
        const double eta = rho_minus, pi = 1.0 - rho_plus;
        struct Triple {
            int x, y;
            double t;
        };
        const std::vector<Triple> triples{{3, 2, 5.0}, {2, 3, 6.0}, {4, 4, 9.0}};
        const int n = 100000;
        const BoundaryParams bp = BoundaryParams::two_sided(eta, pi, true);
        const auto lpp = run_ensemble_raw(n, 0xC09E5ull, opt.threads,
                                          [&](std::uint64_t key, std::size_t) {
                                              std::vector<GridPoint> tg;
                                              for (const auto& tr : triples)
                                                  tg.push_back({tr.x, tr.y});
                                              const auto L = passage_times_fused(bp, key, tg);
                                              std::vector<double> hit(triples.size());
                                              for (std::size_t k = 0; k < triples.size(); ++k)
                                                  hit[k] = L[k] <= triples[k].t ? 1.0 : 0.0;
                                              return hit;
                                          });
        const double t_max = 9.0;
        const int margin = static_cast<int>(std::ceil(t_max + 8.0 * std::sqrt(t_max))) + 8;
        const auto tas = run_ensemble_raw(
            n, 0xC09E6ull, opt.threads, [&](std::uint64_t key, std::size_t) {
                const auto init =
                    generate_bernoulli_profile(rho_minus, rho_plus, -margin, margin, key);
                const auto traj = simulate_event_driven(init, t_max, mix64(key + 17));
                std::vector<double> hit(triples.size());
                for (std::size_t k = 0; k < triples.size(); ++k) {
                    const auto& tr = triples[k];
                    hit[k] =
                        traj.height(tr.t, tr.x - tr.y) >= tr.x + tr.y ? 1.0 : 0.0;
                }
                return hit;
            });
        for (std::size_t k = 0; k < triples.size(); ++k) {
            double p1 = 0.0, p2 = 0.0;
            for (const auto& h : lpp) p1 += h[k];
            for (const auto& h : tas) p2 += h[k];
            p1 /= n;
            p2 /= n;
            const double se =
                std::sqrt(p1 * (1.0 - p1) / n + p2 * (1.0 - p2) / n);
            c.note("triple" + std::to_string(k) + "_diff", std::abs(p1 - p2));
            c.require(std::abs(p1 - p2) <= 3.0 * se,
                      "P(L <= t) = P(h_t(x-y) >= x+y) within 3 MC standard errors");
        }
    }
    return {9, "tasep-correspondence", c.ok, c.os.str(), 0.0};
}

// 10. Height variance left of the shock.
inline CriterionResult criterion_height_variance(const VerifyOptions& opt) {
    detail::Check c;
    const double T = 2000.0, rho_minus = 0.2, rho_plus = 0.6;
    const double xi = -0.1;  // left of the shock at xi_s = 0.2
    const int j = static_cast<int>(std::llround(xi * T));
    const BoundaryParams bp = BoundaryParams::two_sided(rho_minus, 1.0 - rho_plus, true);
    // grid sized so the height certificate stays inside
    const double h_top = h_ma(xi, rho_minus, rho_plus) * T + 40.0 * std::sqrt(T);
    const int ymax = static_cast<int>((h_top - j) / 2.0) + 8;
    const int xmax = ymax + j + 8;
    const int n = 10000;
    std::vector<GridPoint> ray;
    for (int y = std::max(1, -j); y <= ymax && j + y <= xmax; ++y) ray.push_back({j + y, y});
    const auto xs = run_ensemble_raw(
        n, 0x4E164ull, opt.threads, [&](std::uint64_t key, std::size_t) {
            const auto L = passage_times_fused(bp, key, ray);
            int best = j >= 0 ? j : -j - 2;
            bool certified = false;
            for (std::size_t k = 0; k < ray.size(); ++k) {
                if (L[k] <= T) {
                    best = ray[k].x + ray[k].y;
                } else {
                    certified = true;
                    break;
                }
            }
            if (!certified) throw std::runtime_error("height certificate left the grid");
            return std::vector<double>{static_cast<double>(best)};
        });
    const auto mo = moments(marginal(xs, 0));
    const double target = 4.0 * rho_minus * (1.0 - rho_minus) * (1.0 - 2.0 * rho_minus - xi) * T;
    c.note("variance", mo.variance);
    c.note("target", target);
    c.require(std::abs(mo.variance - target) < 0.10 * target,
              "Var(h_T(xi T)) within 10% of 4 rho(1-rho)(1-2rho-xi) T");
    return {10, "height-variance", c.ok, c.os.str(), 0.0};
}

// 11. Numerics invariants at stated tolerances.
inline CriterionResult criterion_numerics_invariants(const VerifyOptions&) {
    detail::Check c;
    {
        // residual beyond the central-difference truncation floor
        double worst = 0.0;
        const double h = 1e-3;
        for (double x = -8.0; x <= 8.0; x += 0.2) {
            const auto v = airy_ai(x);
            const double second =
                (airy_ai(x + h).ai - 2.0 * v.ai + airy_ai(x - h).ai) / (h * h);
            const double floor = h * h / 12.0 * std::abs(2.0 * v.ai_prime + x * x * v.ai);
            const double res = std::max(0.0, std::abs(second - x * v.ai) - floor);
            worst = std::max(worst, res / std::max(1.0, std::abs(v.ai)));
        }
        c.note("airy_ode_residual", worst);
        c.require(worst < 1e-6, "Airy ODE residual below 1e-6");
    }
    {
        QuadratureScheme base;
        base.nodes_per_slice = 40;
        const auto r0 = schur_joint_cdf(0.6, 2, {2}, {6.0}, base);
        double worst = 0.0;
        for (double delta : {-0.2, 0.2}) {
            QuadratureScheme q = base;
            q.conjugation_delta = delta;
            worst = std::max(worst,
                             std::abs(schur_joint_cdf(0.6, 2, {2}, {6.0}, q).value - r0.value));
        }
        c.note("conjugation_shift", worst);
        c.require(worst < 1e-8, "kernel conjugation invariance below 1e-8");
    }
    {
        QuadratureScheme q;
        bool monotone = true;
        double prev = -1.0;
        for (double s = -4.0; s <= 2.01; s += 0.5) {
            KernelSpec k;
            k.process = Process::Airy2;
            k.times = {0.0, 1.5};
            k.thresholds = {s, s + 0.3};
            const double v = fredholm_joint_cdf(k, q).value;
            if (v < prev - 1e-9) monotone = false;
            prev = v;
        }
        c.require(monotone, "joint determinant monotone in thresholds");

        KernelSpec a;
        a.process = Process::Airy2;
        a.times = {0.0, 1.0};
        a.thresholds = {0.1, -0.2};
        KernelSpec b = a;
        b.times = {1.7, 2.7};
        const double shift = std::abs(fredholm_joint_cdf(a, q).value -
                                      fredholm_joint_cdf(b, q).value);
        c.note("stationarity_shift", shift);
        c.require(shift < 1e-6, "Airy2 stationarity under common time shifts");

        KernelSpec br;
        br.process = Process::Brownian;
        br.times = {1.0, 2.0};
        br.thresholds = {0.3, -0.4};
        const auto rb = fredholm_joint_cdf(br, q);
        const auto rule = gauss_legendre_on(2000, -40.0, 0.3);
        double oracle = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
            const double x0 = rule.nodes[i];
            oracle += rule.weights[i] * std::exp(-x0 * x0 / 2.0) / std::sqrt(2.0 * M_PI) *
                      normal_cdf((-0.4 - x0) / 1.0);
        }
        c.note("brownian_m2_err", std::abs(rb.value - oracle));
        c.require(std::abs(rb.value - oracle) < 1e-6,
                  "Brownian m=2 determinant equals the Gaussian rectangle probability");
    }
    return {11, "numerics-invariants", c.ok, c.os.str(), 0.0};
}

inline std::vector<CriterionResult> run_acceptance(const VerifyOptions& opt,
                                                   const std::vector<int>& only = {}) {
    using Fn = std::function<CriterionResult(const VerifyOptions&)>;
    const std::vector<Fn> registry{
        criterion_coupling,        criterion_schur_oracle,     criterion_fredholm_plumbing,
        criterion_limit_shape_lln, criterion_tracy_widom,      criterion_gaussian_variance,
        criterion_shock_product,   criterion_slow_decorrelation, criterion_correspondence,
        criterion_height_variance, criterion_numerics_invariants};
    const double budget_s[11] = {10, 300, 60, 120, 900, 600, 600, 1200, 600, 600, 120};
    std::vector<CriterionResult> out;
    for (std::size_t i = 0; i < registry.size(); ++i) {
        const int id = static_cast<int>(i) + 1;
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) continue;
        const auto t0 = std::chrono::steady_clock::now();
        CriterionResult r = registry[i](opt);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (r.seconds > budget_s[i]) {
            r.pass = false;
            r.detail += "FAILED[runtime budget " + std::to_string(budget_s[i]) + "s] ";
        }
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace kpzlab
