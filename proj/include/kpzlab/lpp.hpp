// Last-passage percolation: dynamic-programming passage times, restricted
// and boundary-pinned variants, deterministic limit shapes and the shock
// line.
//
// L(x,y) = w_{x,y} + max(L(x-1,y), L(x,y-1)) with out-of-grid neighbours
// treated as -inf, L(0,0) = w_{0,0} = 0. This equals the maximum of
// sum(w) over up/right paths from (0,0) to (x,y).
//
// Fused samplers evaluate L at targets directly from (params, seed) without
// materialising the field; because cell weights are a pure function of
// (seed, i, j) the fused results are bit-identical to passage_times on the
// generated field.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "kpzlab/sampling.hpp"

namespace kpzlab {

struct GridPoint {
    int x = 0, y = 0;
};

struct PassageGrid {
    int nx = 0, ny = 0;
    std::vector<double> L;

    double& at(int x, int y) { return L[static_cast<std::size_t>(y) * (nx + 1) + x]; }
    double at(int x, int y) const { return L[static_cast<std::size_t>(y) * (nx + 1) + x]; }
};

inline PassageGrid passage_times(const WaitingField& f) {
    PassageGrid g;
    g.nx = f.nx;
    g.ny = f.ny;
    g.L.resize(f.values.size());
    for (int j = 0; j <= f.ny; ++j) {
        for (int i = 0; i <= f.nx; ++i) {
            double best;
            if (i == 0 && j == 0)
                best = 0.0;
            else if (i == 0)
                best = g.at(0, j - 1);
            else if (j == 0)
                best = g.at(i - 1, 0);
            else
                best = std::max(g.at(i - 1, j), g.at(i, j - 1));
            g.at(i, j) = f.at(i, j) + best;
        }
    }
    return g;
}

// Passage times over paths whose first step is forced. first_right excludes
// the column i=0 above the origin; first_up excludes the row j=0 right of
// the origin. max(first_right, first_up) equals the unrestricted L at every
// target with x,y >= 1, realisation by realisation.
struct RestrictedPassage {
    double first_right = 0.0;  // X
    double first_up = 0.0;     // Y
};

namespace detail {

inline PassageGrid restricted_grid(const WaitingField& f, bool force_right) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    PassageGrid g;
    g.nx = f.nx;
    g.ny = f.ny;
    g.L.assign(f.values.size(), kNegInf);
    g.at(0, 0) = 0.0;
    for (int j = 0; j <= f.ny; ++j) {
        for (int i = 0; i <= f.nx; ++i) {
            if (i == 0 && j == 0) continue;
            if (force_right && i == 0 && j >= 1) continue;  // column blocked
            if (!force_right && j == 0 && i >= 1) continue; // row blocked
            double best = kNegInf;
            if (i > 0) best = std::max(best, g.at(i - 1, j));
            if (j > 0) best = std::max(best, g.at(i, j - 1));
            if (best == kNegInf) continue;
            g.at(i, j) = f.at(i, j) + best;
        }
    }
    return g;
}

} // namespace detail

inline RestrictedPassage restricted_passage(const WaitingField& f, GridPoint target) {
    if (target.x < 1 || target.y < 1)
        throw std::invalid_argument("restricted_passage: target must have x,y >= 1");
    if (target.x > f.nx || target.y > f.ny)
        throw std::invalid_argument("restricted_passage: target outside grid");
    const PassageGrid gx = detail::restricted_grid(f, true);
    const PassageGrid gy = detail::restricted_grid(f, false);
    return {gx.at(target.x, target.y), gy.at(target.x, target.y)};
}

enum class Edge { Bottom, Left };

// Maximum passage time over paths forced along the chosen edge for `entry`
// cells, then one step off the edge, then free. Always <= unrestricted L on
// the same field.
inline double boundary_pinned_passage(const WaitingField& f, GridPoint target, int entry,
                                      Edge edge) {
    if (target.x < 1 || target.y < 1)
        throw std::invalid_argument("boundary_pinned_passage: target must have x,y >= 1");
    if (target.x > f.nx || target.y > f.ny)
        throw std::invalid_argument("boundary_pinned_passage: target outside grid");
    const int along = edge == Edge::Bottom ? target.x : target.y;
    if (entry < 0 || entry > along)
        throw std::invalid_argument("boundary_pinned_passage: entry out of range");

    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    if (edge == Edge::Bottom) {
        double prefix = 0.0;
        for (int i = 0; i <= entry; ++i) prefix += f.at(i, 0);
        // DP over {(i,j): entry <= i <= x, 1 <= j <= y} seeded at (entry,1).
        std::vector<double> row(static_cast<std::size_t>(target.x - entry + 1), kNegInf);
        for (int j = 1; j <= target.y; ++j) {
            double left = kNegInf;
            for (int i = entry; i <= target.x; ++i) {
                double best = std::max(left, row[static_cast<std::size_t>(i - entry)]);
                if (i == entry && j == 1) best = prefix;
                const double v = (best == kNegInf) ? kNegInf : f.at(i, j) + best;
                row[static_cast<std::size_t>(i - entry)] = v;
                left = v;
            }
        }
        return row[static_cast<std::size_t>(target.x - entry)];
    }
    double prefix = 0.0;
    for (int j = 0; j <= entry; ++j) prefix += f.at(0, j);
    std::vector<double> row(static_cast<std::size_t>(target.x + 1), kNegInf);
    for (int j = entry; j <= target.y; ++j) {
        double left = kNegInf;
        for (int i = 1; i <= target.x; ++i) {
            double best = std::max(left, row[static_cast<std::size_t>(i)]);
            if (i == 1 && j == entry) best = prefix;
            const double v = (best == kNegInf) ? kNegInf : f.at(i, j) + best;
            row[static_cast<std::size_t>(i)] = v;
            left = v;
        }
    }
    return row[static_cast<std::size_t>(target.x)];
}

// Deterministic entry distance that maximises the restricted law of large
// numbers in the Gaussian regime:
//   Bottom: (1 - gamma^2/(pi^-1 - 1)^2) theta T,
//   Left:   (gamma^2 - 1/(eta^-1 - 1)^2) theta T,
// rounded to the nearest lattice integer. A negative expression means the
// parameters are outside the boundary-dominated regime.
inline std::int64_t optimal_entry_distance(const BoundaryParams& p, double gamma, double theta,
                                           double T, Edge edge) {
    p.validate();
    if (!(gamma > 0.0) || !(theta > 0.0) || !(T > 0.0))
        throw std::invalid_argument("optimal_entry_distance: gamma, theta, T must be positive");
    double expr;
    if (edge == Edge::Bottom) {
        const double q = 1.0 / p.pi - 1.0;
        if (q <= 0.0) throw std::domain_error("optimal_entry_distance: pi=1 has no bottom regime");
        expr = (1.0 - gamma * gamma / (q * q)) * theta * T;
    } else {
        const double q = 1.0 / p.eta - 1.0;
        if (q <= 0.0) throw std::domain_error("optimal_entry_distance: eta=1 has no left regime");
        expr = (gamma * gamma - 1.0 / (q * q)) * theta * T;
    }
    if (expr < 0.0)
        throw std::domain_error("optimal_entry_distance: outside the Gaussian regime");
    return static_cast<std::int64_t>(std::llround(expr));
}

// lim L1(T, gamma^2 T)/T along the ray y = gamma^2 x, per unit xi = 1.
// Rarefaction branch (1+gamma)^2 for eta >= gamma/(1+gamma), boundary
// branch 1/(1-eta) + gamma^2/eta otherwise; the branches agree at the
// critical eta.
inline double limit_shape_one_sided(double eta, double gamma) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("limit_shape: eta in (0,1]");
    if (!(gamma > 0.0)) throw std::invalid_argument("limit_shape: gamma > 0");
    if (eta >= gamma / (1.0 + gamma)) return (1.0 + gamma) * (1.0 + gamma);
    return 1.0 / (1.0 - eta) + gamma * gamma / eta;
}

// Rankine-Hugoniot shock line y = slope * x; requires eta + pi < 1.
inline double shock_slope(double eta, double pi) {
    if (!(eta > 0.0 && eta <= 1.0 && pi > 0.0 && pi <= 1.0))
        throw std::invalid_argument("shock_slope: eta, pi in (0,1]");
    if (eta + pi >= 1.0) throw std::domain_error("shock_slope: no shock when eta + pi >= 1");
    return eta * (1.0 - pi) / (pi * (1.0 - eta));
}

struct TwoSidedShape {
    double value = 0.0;
    bool on_shock = false;
};

// S(gamma) = lim L2(T, gamma^2 T)/T in the shock geometry (eta + pi < 1):
// gamma^2/eta + 1/(1-eta) above the shock line, gamma^2/(1-pi) + 1/pi
// below; continuous across it.
inline TwoSidedShape limit_shape_two_sided(double eta, double pi, double gamma) {
    const double slope = shock_slope(eta, pi);
    if (!(gamma > 0.0)) throw std::invalid_argument("limit_shape_two_sided: gamma > 0");
    const double g2 = gamma * gamma;
    const double above = g2 / eta + 1.0 / (1.0 - eta);
    const double below = g2 / (1.0 - pi) + 1.0 / pi;
    if (std::abs(g2 - slope) <= 8.0 * std::numeric_limits<double>::epsilon() * slope)
        return {above, true};
    return {g2 > slope ? above : below, false};
}

// ---------------------------------------------------------------------------
// Fused samplers. One rolling row, weights drawn per cell from the counter
// stream; no field storage. Targets must lie in the bounding box implied by
// their maxima.

// L at each target, all coupled on the same realisation.
inline std::vector<double> passage_times_fused(const BoundaryParams& params, std::uint64_t seed,
                                               const std::vector<GridPoint>& targets) {
    params.validate();
    int nx = 0, ny = 0;
    for (const auto& t : targets) {
        if (t.x < 0 || t.y < 0) throw std::invalid_argument("passage_times_fused: negative target");
        nx = std::max(nx, t.x);
        ny = std::max(ny, t.y);
    }
    const CounterRng rng(seed);
    const auto off = detail::draw_offsets(params, rng);
    std::vector<double> row(static_cast<std::size_t>(nx) + 1);
    std::vector<double> out(targets.size());
    for (int j = 0; j <= ny; ++j) {
        double left = 0.0;
        for (int i = 0; i <= nx; ++i) {
            const double w = detail::cell_weight(params, off, rng, i, j);
            double v;
            if (i == 0 && j == 0)
                v = w;
            else if (j == 0)
                v = left + w;
            else if (i == 0)
                v = row[0] + w;
            else
                v = std::max(left, row[static_cast<std::size_t>(i)]) + w;
            row[static_cast<std::size_t>(i)] = v;
            left = v;
        }
        for (std::size_t k = 0; k < targets.size(); ++k)
            if (targets[k].y == j) out[k] = row[static_cast<std::size_t>(targets[k].x)];
    }
    return out;
}

inline double passage_time_fused(const BoundaryParams& params, std::uint64_t seed, int x, int y) {
    return passage_times_fused(params, seed, {{x, y}})[0];
}

} // namespace kpzlab
