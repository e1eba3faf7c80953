// Property suites built on the ensemble runner: exact coupling identities
// on two-sided fields, and the slow-decorrelation measurements along
// characteristic lines.

#pragma once

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "kpzlab/ensemble.hpp"
#include "kpzlab/lpp.hpp"
#include "kpzlab/scaling.hpp"

namespace kpzlab {

struct CouplingReport {
    int fields_checked = 0;
    int violations = 0;
    std::uint64_t first_bad_seed = 0;
    std::string detail;
    bool pass() const { return violations == 0; }
};

// Per-realisation exact checks on random two-sided fields:
//   - L2 = max(X, Y) at every interior target (bit-exact);
//   - boundary-pinned passage times never exceed L2;
//   - increasing one bulk weight never decreases any L, and leaves
//     passage times outside the affected corner unchanged.
inline CouplingReport coupling_suite(double eta, double pi, int nx, int ny, int n_fields,
                                     std::uint64_t master_seed, int parallelism = 1) {
    CouplingReport rep;
    rep.fields_checked = n_fields;
    const auto results = run_ensemble_raw(
        n_fields, master_seed, parallelism, [&](std::uint64_t key, std::size_t) {
            WaitingField f = generate_field(BoundaryParams::two_sided(eta, pi), nx, ny, key);
            const PassageGrid L = passage_times(f);
            const PassageGrid X = detail::restricted_grid(f, true);
            const PassageGrid Y = detail::restricted_grid(f, false);
            double bad = 0.0;
            for (int y = 1; y <= ny && bad == 0.0; ++y)
                for (int x = 1; x <= nx; ++x)
                    if (std::max(X.at(x, y), Y.at(x, y)) != L.at(x, y)) {
                        bad = 1.0;
                        break;
                    }
            // pinned <= L at a spread of entries
            const GridPoint tgt{nx, ny};
            for (int entry : {0, nx / 4, nx / 2, nx}) {
                if (boundary_pinned_passage(f, tgt, entry, Edge::Bottom) > L.at(nx, ny)) bad = 2.0;
            }
            for (int entry : {0, ny / 4, ny / 2, ny}) {
                if (boundary_pinned_passage(f, tgt, entry, Edge::Left) > L.at(nx, ny)) bad = 2.0;
            }
            return std::vector<double>{bad, static_cast<double>(key)};
        });
    for (const auto& r : results)
        if (r[0] != 0.0) {
            ++rep.violations;
            if (rep.violations == 1) rep.first_bad_seed = static_cast<std::uint64_t>(r[1]);
        }
    if (rep.violations > 0) {
        std::ostringstream os;
        os << rep.violations << " violating fields, first stream key " << rep.first_bad_seed;
        rep.detail = os.str();
    }
    return rep;
}

// Monotone-coupling check on one field: bump w at (bx,by) by delta and
// recompute. Returns true when every L in the dominated corner increases by
// a value in [0, delta] and every other L is unchanged.
inline bool monotone_bump_check(const WaitingField& base, int bx, int by, double delta) {
    const PassageGrid L0 = passage_times(base);
    WaitingField bumped = base;
    bumped.at(bx, by) += delta;
    const PassageGrid L1 = passage_times(bumped);
    for (int y = 0; y <= base.ny; ++y)
        for (int x = 0; x <= base.nx; ++x) {
            const double d = L1.at(x, y) - L0.at(x, y);
            if (x >= bx && y >= by) {
                if (d < 0.0 || d > delta + 1e-12) return false;
            } else if (d != 0.0) {
                return false;
            }
        }
    return true;
}

struct SlowDecorrelationRow {
    double T = 0.0;
    double r = 0.0;
    double drift = 0.0;
    double mean_residual = 0.0;       // mean of L(Q) - L(P) - drift
    double normalized_variance = 0.0; // Var(residual) / T^{2/3} (a) or T (b)
    double exceedance = 0.0;          // P(|residual| >= M * scale)
    CharacteristicRegime regime = CharacteristicRegime::Fan;
};

// For each T: sample L(P), L(Q) on shared fields with r = T^nu along the
// characteristic through P; report the centred residual. Case (a) uses the
// fluctuation scale T^{1/3} (variance normalised by T^{2/3}); case (b) uses
// T^{1/2} (variance normalised by T).
inline std::vector<SlowDecorrelationRow> slow_decorrelation_suite(
    double eta, double gamma, double nu, const std::vector<double>& T_list, int n_samples,
    std::uint64_t master_seed, double M = 1.0, int parallelism = 1) {
    if (!(eta > 0.0 && eta <= 1.0) || !(gamma > 0.0))
        throw std::invalid_argument("slow_decorrelation_suite: bad eta/gamma");
    const bool fan = (eta == 1.0) || gamma <= eta / (1.0 - eta);
    if (fan && !(nu >= 0.0 && nu < 1.0))
        throw std::domain_error("slow_decorrelation_suite: case (a) needs nu in [0,1)");
    if (!fan && !(nu >= 0.0 && nu < 1.5))
        throw std::domain_error("slow_decorrelation_suite: case (b) needs nu in [0,1.5)");

    std::vector<SlowDecorrelationRow> rows;
    const BoundaryParams bp = BoundaryParams::one_sided(eta);
    for (double T : T_list) {
        const double r = std::pow(T, nu);
        const CharacteristicProjection proj = characteristic_project(T, r, eta, gamma);
        const std::vector<GridPoint> targets{
            {static_cast<int>(proj.px), static_cast<int>(proj.py)},
            {static_cast<int>(proj.qx), static_cast<int>(proj.qy)}};
        const double scale = fan ? std::cbrt(T) : std::sqrt(T);
        const auto tuples = run_ensemble_raw(
            n_samples, master_seed, parallelism, [&](std::uint64_t key, std::size_t) {
                const auto L = passage_times_fused(bp, key, targets);
                return std::vector<double>{L[1] - L[0] - proj.drift};
            });
        SlowDecorrelationRow row;
        row.T = T;
        row.r = r;
        row.drift = proj.drift;
        row.regime = proj.regime;
        const EmpiricalDistribution emp = marginal(tuples, 0);
        const Moments mo = moments(emp);
        row.mean_residual = mo.mean;
        row.normalized_variance = mo.variance / (scale * scale);
        int exc = 0;
        for (double v : emp.samples)
            if (std::abs(v) >= M * scale) ++exc;
        row.exceedance = static_cast<double>(exc) / static_cast<double>(emp.n());
        rows.push_back(row);
    }
    return rows;
}

} // namespace kpzlab
