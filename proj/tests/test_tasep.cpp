#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "kpzlab/rng.hpp"
#include "kpzlab/tasep.hpp"

using namespace kpzlab;

namespace {
OccupationWindow single_particle_at(int site, int lo, int hi) {
    OccupationWindow w;
    w.lo = lo;
    w.hi = hi;
    w.occ.assign(static_cast<std::size_t>(hi - lo + 1), 0);
    w.occ[static_cast<std::size_t>(site - lo)] = 1;
    return w;
}
} // namespace

TEST_CASE("free particle jump count is Poisson(t)") {
    const double t = 6.0;
    const int runs = 10000;
    double acc = 0.0;
    for (int rep = 0; rep < runs; ++rep) {
        const auto traj = simulate_event_driven(single_particle_at(0, -40, 80), t,
                                                SeedPolicy{5150, (std::uint64_t)rep}.stream_key());
        acc += static_cast<double>(traj.events().size());
    }
    const double mean = acc / runs;
    CHECK(std::abs(mean - t) < 3.0 * std::sqrt(t / runs));
}

TEST_CASE("exclusion: blocked particle waits for the leader") {
    OccupationWindow w = single_particle_at(0, -20, 40);
    w.occ[static_cast<std::size_t>(1 - w.lo)] = 1;  // particles at 0 and 1
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto traj = simulate_event_driven(w, 5.0, seed);
        bool leader_jumped = false;
        for (const auto& e : traj.events()) {
            if (e.from == 0) CHECK(leader_jumped);
            if (e.from == 1) leader_jumped = true;
        }
    }
}

TEST_CASE("fully packed closed window produces no jumps") {
    OccupationWindow w;
    w.lo = -10;
    w.hi = 10;
    w.occ.assign(21, 1);
    const auto traj = simulate_event_driven(w, 50.0, 9);
    CHECK(traj.events().empty());
}

TEST_CASE("trajectory replay respects exclusion, ordering, and conservation") {
    const auto init = generate_bernoulli_profile(0.6, 0.4, -60, 60, 77);
    const auto traj = simulate_event_driven(init, 8.0, 1234);
    double prev = 0.0;
    std::vector<std::uint8_t> occ(init.occ);
    int count0 = 0;
    for (auto v : occ) count0 += v;
    for (const auto& e : traj.events()) {
        CHECK(e.t >= prev);
        prev = e.t;
        const std::size_t s = static_cast<std::size_t>(e.from - init.lo);
        CHECK(occ[s] == 1);
        CHECK(occ[s + 1] == 0);
        occ[s] = 0;
        occ[s + 1] = 1;
    }
    int count1 = 0;
    for (auto v : occ) count1 += v;
    CHECK(count0 == count1);  // closed window: particle number conserved
}

TEST_CASE("height at time zero and the gradient identity") {
    const auto step = generate_bernoulli_profile(1.0, 0.0, -64, 64, 3);
    const auto traj = simulate_event_driven(step, 4.0, 42);
    // direct substitution of the step profile into the height display:
    // h_0(j) = j for j >= 0 and -(j+2) for j <= -1
    for (int j = traj.interior_lo(); j <= traj.interior_hi(); ++j)
        CHECK(traj.height(0.0, j) == (j >= 0 ? j : -(j + 2)));
    // h_t(j) - h_t(j-1) = 1 - 2 eta_t(j)
    for (double t : {0.7, 2.0, 4.0})
        for (int j = traj.interior_lo() + 1; j <= traj.interior_hi(); ++j)
            CHECK(traj.height(t, j) - traj.height(t, j - 1) ==
                  1 - 2 * static_cast<int>(traj.occupied(t, j)));
}

TEST_CASE("one jump across the origin bond raises h(0) to 2") {
    const auto traj = simulate_event_driven(single_particle_at(0, -20, 40), 10.0, 7);
    REQUIRE(!traj.events().empty());
    const double t0 = traj.events().front().t;
    CHECK(traj.events().front().from == 0);
    CHECK(traj.height(t0 / 2.0, 0) == 0);
    CHECK(traj.height(std::nextafter(t0, 1e30), 0) == 2);
}

TEST_CASE("queries outside the shielded interior are rejected") {
    const auto init = generate_bernoulli_profile(0.5, 0.5, -30, 30, 8);
    const auto traj = simulate_event_driven(init, 9.0, 5);
    CHECK_THROWS_AS((void)traj.height(1.0, 29), std::invalid_argument);
    CHECK_THROWS_AS((void)traj.height(20.0, 0), std::invalid_argument);
}

TEST_CASE("step-condition trajectory agrees with the passage grid path-wise") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto field = generate_one_sided(1.0, 48, 48, seed);
        const auto grid = passage_times(field);
        const auto traj = simulate_from_field(field, 10.0);
        for (double t : {0.0, 0.5, 1.5, 3.0, 5.0, 7.5, 10.0})
            for (int j = -6; j <= 6; ++j)
                CHECK(height_from_lpp(grid, t, j) == traj.height(t, j));
    }
}

TEST_CASE("height_from_lpp: certification and the single-particle unwind") {
    WaitingField f;
    f.nx = 2;
    f.ny = 2;
    f.params = BoundaryParams::one_sided(1.0);
    f.values = {0, 0, 0, /*j=1*/ 0.8, 1.2, 0.5, /*j=2*/ 0.6, 0.9, 2.0};
    const auto g = passage_times(f);
    // first height increment at site 0 happens at L(1,1) = w01 + w11
    const double t_first = 0.8 + 1.2;
    CHECK(height_from_lpp(g, t_first - 1e-9, 0) == 0);
    CHECK(height_from_lpp(g, t_first + 1e-9, 0) == 2);
    // t = 0 reproduces the initial step height (particles at -1, -2, ...)
    CHECK(height_from_lpp(g, 0.0, 1) == 1);
    CHECK(height_from_lpp(g, 0.0, -1) == -1);
    // the first bump at j = -1 is the first hop of particle 1: L(0,1) = w01
    CHECK(height_from_lpp(g, 0.8 + 1e-9, -1) == 1);
    // a query whose certificate would leave the grid is rejected
    CHECK_THROWS_AS((void)height_from_lpp(g, 1e9, 0), std::invalid_argument);
}

TEST_CASE("height-profile CSV dump") {
    const auto init = generate_bernoulli_profile(0.5, 0.5, -25, 25, 4);
    const auto traj = simulate_event_driven(init, 4.0, 11);
    std::ostringstream os;
    write_height_csv(traj, 2.0, os);
    const std::string out = os.str();
    CHECK(out.rfind("t,j,h\n", 0) == 0);
    const auto rows = std::count(out.begin(), out.end(), '\n');
    CHECK(rows == traj.interior_hi() - traj.interior_lo() + 2);  // header + interior
}

TEST_CASE("two-sided correspondence holds in law at a probe event") {
    // P(L(1,2) <= 3) against P(h_3(-1) >= 3) with exact occupation-run offsets
    const double rm = 0.7, rp = 0.3, t = 3.0;
    const int n = 50000;
    const BoundaryParams bp = BoundaryParams::two_sided(rm, 1.0 - rp, true);
    int cl = 0, ct = 0;
    for (int s = 0; s < n; ++s) {
        if (passage_time_fused(bp, SeedPolicy{881, (std::uint64_t)s}.stream_key(), 1, 2) <= t)
            ++cl;
        const auto init = generate_bernoulli_profile(rm, rp, -30, 30,
                                                     SeedPolicy{882, (std::uint64_t)s}.stream_key());
        const auto traj = simulate_event_driven(init, t, mix64(s + 3));
        if (traj.height(t, -1) >= 3) ++ct;
    }
    const double pl = static_cast<double>(cl) / n, pt = static_cast<double>(ct) / n;
    CHECK(std::abs(pl - pt) < 3.0 * std::sqrt(pl * (1 - pl) / n + pt * (1 - pt) / n));
}

TEST_CASE("density profile case displays") {
    CHECK(density_profile(-0.9, 0.8, 0.2) == doctest::Approx(0.8));  // xi <= 1-2rho_-
    CHECK(density_profile(0.0, 0.8, 0.2) == doctest::Approx(0.5));   // fan: (1-xi)/2
    CHECK(density_profile(0.9, 0.8, 0.2) == doctest::Approx(0.2));
    CHECK(density_profile(0.1, 0.2, 0.6) == doctest::Approx(0.2));   // left of the shock
    CHECK(density_profile(0.3, 0.2, 0.6) == doctest::Approx(0.6));
}

TEST_CASE("limit shape h_ma: fan value, shock continuity, convexity pattern") {
    CHECK(h_ma(0.0, 1.0, 0.0) == doctest::Approx(0.5));
    // both branches at the shock xi_s = 0.2 give 0.44
    CHECK(h_ma(0.2 - 1e-12, 0.2, 0.6) == doctest::Approx(0.44));
    CHECK(h_ma(0.2 + 1e-12, 0.2, 0.6) == doctest::Approx(0.44));
    // continuity across the fan edges and piecewise structure
    for (double xi = -1.5; xi <= 1.5; xi += 0.05) {
        const double eps = 1e-7;
        CHECK(std::abs(h_ma(xi + eps, 0.7, 0.3) - h_ma(xi - eps, 0.7, 0.3)) < 1e-5);
    }
    // parabola strictly convex inside the fan, linear outside
    const double d2_fan = h_ma(0.1, 1.0, 0.0) - 2.0 * h_ma(0.0, 1.0, 0.0) + h_ma(-0.1, 1.0, 0.0);
    CHECK(d2_fan > 1e-4);
    const double d2_lin =
        h_ma(-0.8, 0.7, 0.3) - 2.0 * h_ma(-0.9, 0.7, 0.3) + h_ma(-1.0, 0.7, 0.3);
    CHECK(std::abs(d2_lin) < 1e-12);
}
