#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kpzlab/lpp.hpp"
#include "kpzlab/sampling.hpp"

using namespace kpzlab;

namespace {
WaitingField tiny_2x2() {
    WaitingField f;
    f.nx = 1;
    f.ny = 1;
    f.params = BoundaryParams::one_sided(1.0);
    f.values = {0.0, 3.0, 2.0, 1.0};  // w00,w10 / w01,w11
    return f;
}
} // namespace

TEST_CASE("2x2 path enumeration") {
    const auto g = passage_times(tiny_2x2());
    CHECK(g.at(0, 0) == 0.0);
    CHECK(g.at(1, 0) == 3.0);
    CHECK(g.at(0, 1) == 2.0);
    CHECK(g.at(1, 1) == 4.0);  // max(0+3+1, 0+2+1)
}

TEST_CASE("bottom row is the prefix sum; single-cell strip") {
    WaitingField f;
    f.nx = 3;
    f.ny = 0;
    f.params = BoundaryParams::one_sided(1.0);
    f.values = {0.0, 2.5, 1.0, 4.0};
    const auto g = passage_times(f);
    CHECK(g.at(1, 0) == 2.5);
    CHECK(g.at(3, 0) == 7.5);
}

TEST_CASE("passage grid is monotone in both directions") {
    const auto f = generate_two_sided(0.4, 0.6, 40, 30, 77);
    const auto g = passage_times(f);
    for (int y = 0; y <= 30; ++y)
        for (int x = 0; x <= 40; ++x) {
            if (x > 0) CHECK(g.at(x, y) >= g.at(x - 1, y));
            if (y > 0) CHECK(g.at(x, y) >= g.at(x, y - 1));
        }
}

TEST_CASE("restricted passage on the 2x2 example and the exact max identity") {
    const auto f = tiny_2x2();
    const auto r = restricted_passage(f, {1, 1});
    CHECK(r.first_right == 4.0);
    CHECK(r.first_up == 3.0);
    CHECK(std::max(r.first_right, r.first_up) == passage_times(f).at(1, 1));
    CHECK_THROWS_AS((void)restricted_passage(f, {0, 1}), std::invalid_argument);
}

TEST_CASE("max(X,Y) = L bit-exactly on random fields") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        const auto f = generate_two_sided(0.3, 0.4, 25, 25, seed);
        const auto L = passage_times(f);
        const auto X = detail::restricted_grid(f, true);
        const auto Y = detail::restricted_grid(f, false);
        for (int y = 1; y <= 25; ++y)
            for (int x = 1; x <= 25; ++x)
                CHECK(std::max(X.at(x, y), Y.at(x, y)) == L.at(x, y));
    }
}

TEST_CASE("boundary-pinned passage") {
    const auto f = tiny_2x2();
    // entry 1, Bottom: forced through (1,0): 0+3+1
    CHECK(boundary_pinned_passage(f, {1, 1}, 1, Edge::Bottom) == 4.0);
    // entry 0, Bottom: step up at the origin, then free
    CHECK(boundary_pinned_passage(f, {1, 1}, 0, Edge::Bottom) == 3.0);
    CHECK(boundary_pinned_passage(f, {1, 1}, 0, Edge::Bottom) <= passage_times(f).at(1, 1));
    CHECK_THROWS_AS((void)boundary_pinned_passage(f, {1, 1}, 2, Edge::Bottom),
                    std::invalid_argument);

    // entry = target.x: bottom row plus the final column climb
    const auto g = generate_two_sided(0.5, 0.5, 6, 5, 3);
    double expect = 0.0;
    for (int i = 0; i <= 6; ++i) expect += g.at(i, 0);
    for (int j = 1; j <= 5; ++j) expect += g.at(6, j);
    CHECK(boundary_pinned_passage(g, {6, 5}, 6, Edge::Bottom) == doctest::Approx(expect).epsilon(1e-12));

    // pinned never exceeds L, both edges, all entries
    const auto L = passage_times(g);
    for (int e = 0; e <= 6; ++e)
        CHECK(boundary_pinned_passage(g, {6, 5}, e, Edge::Bottom) <= L.at(6, 5));
    for (int e = 0; e <= 5; ++e)
        CHECK(boundary_pinned_passage(g, {6, 5}, e, Edge::Left) <= L.at(6, 5));
}

TEST_CASE("optimal entry distances from the law-of-large-numbers display") {
    CHECK(optimal_entry_distance(BoundaryParams::two_sided(0.5, 0.25), 1.0, 1.0, 1000.0,
                                 Edge::Bottom) == 889);
    CHECK(optimal_entry_distance(BoundaryParams::two_sided(0.25, 0.25), 1.0, 1.0, 900.0,
                                 Edge::Left) == 800);
    // regime boundary: expression exactly zero
    CHECK(optimal_entry_distance(BoundaryParams::two_sided(0.5, 0.25), 1.0, 1.0, 1000.0,
                                 Edge::Left) == 0);
    // regime violation reported distinctly
    CHECK_THROWS_AS((void)optimal_entry_distance(BoundaryParams::two_sided(0.9, 0.25), 1.0, 1.0,
                                                 1000.0, Edge::Left),
                    std::domain_error);
}

TEST_CASE("one-sided limit shape branches and continuity") {
    CHECK(limit_shape_one_sided(0.75, 1.0) == doctest::Approx(4.0));
    CHECK(limit_shape_one_sided(0.25, 1.0) == doctest::Approx(16.0 / 3.0));
    CHECK(limit_shape_one_sided(0.5, 1.0) == doctest::Approx(4.0));
    const double eps = 1e-9;
    CHECK(std::abs(limit_shape_one_sided(0.5 + eps, 1.0) - limit_shape_one_sided(0.5 - eps, 1.0)) <
          1e-6);
}

TEST_CASE("shock slope and the two-sided shape") {
    CHECK(shock_slope(0.2, 0.3) == doctest::Approx(7.0 / 12.0));
    CHECK_THROWS_AS((void)shock_slope(0.6, 0.5), std::domain_error);

    const auto on = limit_shape_two_sided(0.2, 0.3, std::sqrt(7.0 / 12.0));
    CHECK(on.on_shock);
    CHECK(on.value == doctest::Approx(50.0 / 12.0));
    // both branches agree on the shock line
    const double g2 = 7.0 / 12.0;
    CHECK(g2 / 0.2 + 1.0 / 0.8 == doctest::Approx(g2 / 0.7 + 1.0 / 0.3));

    const auto above = limit_shape_two_sided(0.2, 0.3, 1.0);
    CHECK_FALSE(above.on_shock);
    CHECK(above.value == doctest::Approx(6.25));
}

TEST_CASE("fused passage times match the materialised field bit-exactly") {
    const auto params = BoundaryParams::two_sided(0.3, 0.4);
    const std::uint64_t seed = 2718;
    const std::vector<GridPoint> targets{{37, 23}, {12, 23}, {37, 5}, {1, 1}};
    const auto fused = passage_times_fused(params, seed, targets);
    const auto grid = passage_times(generate_field(params, 37, 23, seed));
    for (std::size_t k = 0; k < targets.size(); ++k)
        CHECK(fused[k] == grid.at(targets[k].x, targets[k].y));
}

TEST_CASE("increasing one weight never decreases any passage time") {
    const auto f = generate_two_sided(0.5, 0.5, 20, 20, 31);
    const auto L0 = passage_times(f);
    WaitingField g = f;
    g.at(10, 10) += 1.0;
    const auto L1 = passage_times(g);
    for (int y = 0; y <= 20; ++y)
        for (int x = 0; x <= 20; ++x) {
            const double d = L1.at(x, y) - L0.at(x, y);
            CHECK(d >= 0.0);
            if (x >= 10 && y >= 10)
                CHECK(d <= 1.0 + 1e-12);
            else
                CHECK(d == 0.0);
        }
}
