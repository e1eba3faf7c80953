// Continuous-time TASEP on a finite window, the height function, the
// macroscopic density / limit-shape formulas, and the passage-time
// correspondence.
//
// Dynamics: a particle's jump clock starts at the instant its right
// neighbour site is (or becomes) empty and rings after an Exp(1) service
// time. Completions never invalidate: once a jump is scheduled nothing can
// occupy the target site first. The window is closed; callers shield their
// queries by sizing the window t_max + 6 sqrt(t_max) beyond the region of
// interest, and any event within 2 sqrt(t_max) of an edge sets a flag.
//
// Correspondence with last-passage times (step convention): label the
// particles of the step initial condition y = 1, 2, ... from the right,
// particle y starting at site -y. Cell (x,y) of the waiting field is the
// service time of particle y's hop from site x-y to x-y+1, so
// L(x,y) <= t iff the height at site x-y has reached x+y by time t.
// For that coupled pair the trajectory and the passage grid agree exactly,
// path by path. For general two-sided fields the identity holds in law
// (exactly with occupation-run offsets, asymptotically with full boundary
// rows).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <vector>

#include "kpzlab/lpp.hpp"
#include "kpzlab/sampling.hpp"

namespace kpzlab {

struct JumpEvent {
    double t = 0.0;
    int from = 0;  // jump from `from` to `from + 1`
};

class TasepTrajectory {
public:
    TasepTrajectory(OccupationWindow init, double t_max, std::vector<JumpEvent> events,
                    bool edge_activity)
        : init_(std::move(init)),
          t_max_(t_max),
          events_(std::move(events)),
          edge_activity_(edge_activity) {}

    const OccupationWindow& initial() const { return init_; }
    const std::vector<JumpEvent>& events() const { return events_; }
    double t_max() const { return t_max_; }
    bool edge_activity() const { return edge_activity_; }

    int interior_lo() const { return init_.lo + buffer(); }
    int interior_hi() const { return init_.hi - buffer(); }

    // Number of jumps across the bond 0 -> 1 during [0, t].
    int n_t(double t) const {
        int n = 0;
        for (const auto& e : events_) {
            if (e.t > t) break;
            if (e.from == 0) ++n;
        }
        return n;
    }

    // Occupation of site j at time t (replays the event log).
    bool occupied(double t, int j) const {
        check_query(t, j);
        std::uint8_t occ = init_.occ[static_cast<std::size_t>(j - init_.lo)];
        for (const auto& e : events_) {
            if (e.t > t) break;
            if (e.from == j) occ = 0;
            if (e.from + 1 == j) occ = 1;
        }
        return occ != 0;
    }

    // Height function
    //   h_t(j) = 2 N_t + sum_{i=1..j} (1 - 2 eta_t(i))        for j >= 1,
    //            2 N_t                                        for j = 0,
    //            2 N_t - sum_{i=j+1..0} (1 - 2 eta_t(i))      for j <= -1.
    int height(double t, int j) const {
        check_query(t, j);
        std::vector<std::uint8_t> occ(init_.occ);
        int n = 0;
        for (const auto& e : events_) {
            if (e.t > t) break;
            occ[static_cast<std::size_t>(e.from - init_.lo)] = 0;
            occ[static_cast<std::size_t>(e.from + 1 - init_.lo)] = 1;
            if (e.from == 0) ++n;
        }
        int h = 2 * n;
        if (j >= 1) {
            for (int i = 1; i <= j; ++i)
                h += 1 - 2 * static_cast<int>(occ[static_cast<std::size_t>(i - init_.lo)]);
        } else if (j <= -1) {
            for (int i = j + 1; i <= 0; ++i)
                h -= 1 - 2 * static_cast<int>(occ[static_cast<std::size_t>(i - init_.lo)]);
        }
        return h;
    }

private:
    int buffer() const { return static_cast<int>(std::ceil(2.0 * std::sqrt(t_max_))); }

    void check_query(double t, int j) const {
        if (t < 0.0 || t > t_max_) throw std::invalid_argument("trajectory: t outside [0, t_max]");
        if (j < interior_lo() || j > interior_hi())
            throw std::invalid_argument("trajectory: query outside the shielded interior");
    }

    OccupationWindow init_;
    double t_max_;
    std::vector<JumpEvent> events_;
    bool edge_activity_;
};

namespace detail {

// Service time supplier. The seeded variant draws Exp(1) services in event
// order; the field-coupled variant reads w(site + label, label).
struct ServiceFromRng {
    CounterRng rng;
    double operator()(int /*site*/, int /*label*/) { return rng.next_exponential(1.0); }
};

struct ServiceFromField {
    const WaitingField* field;
    double operator()(int site, int label) const {
        const int x = site + label;
        if (label < 1 || label > field->ny || x < 0 || x > field->nx)
            return std::numeric_limits<double>::quiet_NaN();  // off-grid: particle freezes
        return field->at(x, label);
    }
};

template <class Service>
TasepTrajectory simulate_impl(const OccupationWindow& init, double t_max, Service service,
                              std::vector<int> labels) {
    if (t_max < 0.0) throw std::invalid_argument("simulate: t_max >= 0 required");
    const int lo = init.lo, hi = init.hi;
    const int n_sites = hi - lo + 1;
    if (n_sites <= 0) throw std::invalid_argument("simulate: empty window");

    std::vector<std::uint8_t> occ(init.occ);
    std::vector<int> label_at(static_cast<std::size_t>(n_sites), 0);
    {
        std::size_t k = 0;
        for (int s = 0; s < n_sites; ++s)
            if (occ[static_cast<std::size_t>(s)]) {
                label_at[static_cast<std::size_t>(s)] =
                    labels.empty() ? 0 : labels[k];
                ++k;
            }
    }

    struct Pending {
        double t;
        int site;
        bool operator>(const Pending& o) const {
            return t > o.t || (t == o.t && site > o.site);
        }
    };
    std::priority_queue<Pending, std::vector<Pending>, std::greater<Pending>> heap;

    auto schedule = [&](int site, double start) {
        const int s = site - lo;
        const double svc = service(site, label_at[static_cast<std::size_t>(s)]);
        if (std::isnan(svc)) return;
        heap.push({start + svc, site});
    };

    for (int site = lo; site < hi; ++site) {
        const int s = site - lo;
        if (occ[static_cast<std::size_t>(s)] && !occ[static_cast<std::size_t>(s + 1)])
            schedule(site, 0.0);
    }

    const double edge_band = 2.0 * std::sqrt(t_max);
    bool edge_activity = false;
    std::vector<JumpEvent> events;
    while (!heap.empty()) {
        const Pending ev = heap.top();
        heap.pop();
        if (ev.t > t_max) break;
        const int s = ev.site - lo;
        occ[static_cast<std::size_t>(s)] = 0;
        occ[static_cast<std::size_t>(s + 1)] = 1;
        label_at[static_cast<std::size_t>(s + 1)] = label_at[static_cast<std::size_t>(s)];
        events.push_back({ev.t, ev.site});
        if (ev.site - lo < edge_band || hi - (ev.site + 1) < edge_band) edge_activity = true;
        // the jumper, now at site+1, if its right neighbour is free
        if (ev.site + 2 <= hi && !occ[static_cast<std::size_t>(s + 2)]) schedule(ev.site + 1, ev.t);
        // the left neighbour, unblocked by this vacancy
        if (ev.site - 1 >= lo && occ[static_cast<std::size_t>(s - 1)]) schedule(ev.site - 1, ev.t);
    }
    return TasepTrajectory(init, t_max, std::move(events), edge_activity);
}

} // namespace detail

inline TasepTrajectory simulate_event_driven(const OccupationWindow& init, double t_max,
                                             std::uint64_t seed) {
    return detail::simulate_impl(init, t_max, detail::ServiceFromRng{CounterRng(seed)}, {});
}

// Step-condition simulation driven by the waiting field itself: particles
// y = 1..ny at sites -y, services taken from the field. Path-wise coupled
// to passage_times of the same field.
inline TasepTrajectory simulate_from_field(const WaitingField& field, double t_max) {
    OccupationWindow init;
    init.lo = -field.ny;
    init.hi = field.nx;
    init.occ.assign(static_cast<std::size_t>(init.hi - init.lo + 1), 0);
    std::vector<int> labels;
    for (int y = field.ny; y >= 1; --y) {
        init.occ[static_cast<std::size_t>(-y - init.lo)] = 1;
        labels.push_back(y);
    }
    return detail::simulate_impl(init, t_max, detail::ServiceFromField{&field}, std::move(labels));
}

// Height read off a passage grid (step convention: particles y = 1, 2, ...
// at sites -y, so h_0(j) = j for j >= 0 and |j| - 2 for j <= -1):
//   h_t(j) = max(h_0(j), max { j + 2y : L(j+y, y) <= t, y >= max(1, -j) }).
// The y = -j candidate probes the column x = 0 (the first hop of the
// particle initially at site j). A query whose certificate would need a
// particle outside the grid is rejected.
inline int height_from_lpp(const PassageGrid& g, double t, int j) {
    if (t < 0.0) throw std::invalid_argument("height_from_lpp: t >= 0");
    int best = j >= 0 ? j : -j - 2;
    bool certified = false;
    for (int y = std::max(1, -j);; ++y) {
        const int x = j + y;
        if (x > g.nx || y > g.ny) break;  // ran off the grid before seeing L > t
        if (g.at(x, y) <= t) {
            best = x + y;
        } else {
            certified = true;  // L is monotone along the ray
            break;
        }
    }
    if (!certified)
        throw std::invalid_argument("height_from_lpp: grid too small to certify height");
    return best;
}

inline int height_from_lpp(const WaitingField& field, double t, int j) {
    const PassageGrid g = passage_times(field);
    return height_from_lpp(g, t, j);
}

// Macroscopic particle density rho(xi, 1) of the two-sided initial
// condition. Rarefaction fan for rho_- >= rho_+, shock at
// xi_s = 1 - (rho_- + rho_+) otherwise (right-continuous at the shock).
inline double density_profile(double xi, double rho_minus, double rho_plus) {
    if (!(rho_minus >= 0.0 && rho_minus <= 1.0 && rho_plus >= 0.0 && rho_plus <= 1.0))
        throw std::invalid_argument("density_profile: densities in [0,1]");
    if (rho_minus >= rho_plus) {
        if (xi <= 1.0 - 2.0 * rho_minus) return rho_minus;
        if (xi >= 1.0 - 2.0 * rho_plus) return rho_plus;
        return (1.0 - xi) / 2.0;
    }
    return xi < 1.0 - (rho_minus + rho_plus) ? rho_minus : rho_plus;
}

// Limit shape h_ma(xi) = lim h_t(xi t)/t. Parabolic (1+xi^2)/2 across the
// fan, linear elsewhere; continuous at every case boundary.
inline double h_ma(double xi, double rho_minus, double rho_plus) {
    if (!(rho_minus >= 0.0 && rho_minus <= 1.0 && rho_plus >= 0.0 && rho_plus <= 1.0))
        throw std::invalid_argument("h_ma: densities in [0,1]");
    const auto linear = [xi](double rho) {
        return 2.0 * rho * (1.0 - rho) + (1.0 - 2.0 * rho) * xi;
    };
    if (rho_minus >= rho_plus) {
        if (xi <= 1.0 - 2.0 * rho_minus) return linear(rho_minus);
        if (xi >= 1.0 - 2.0 * rho_plus) return linear(rho_plus);
        return (1.0 + xi * xi) / 2.0;
    }
    return xi < 1.0 - (rho_minus + rho_plus) ? linear(rho_minus) : linear(rho_plus);
}

// Height-profile dump: CSV with columns t,j,h over the shielded interior.
inline void write_height_csv(const TasepTrajectory& traj, double t, std::ostream& os) {
    os << "t,j,h\n";
    for (int j = traj.interior_lo(); j <= traj.interior_hi(); ++j)
        os << t << ',' << j << ',' << traj.height(t, j) << '\n';
}

} // namespace kpzlab
