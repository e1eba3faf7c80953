#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpzlab/suites.hpp"

using namespace kpzlab;

TEST_CASE("coupling suite: clean pass on random two-sided fields") {
    const auto rep = coupling_suite(0.3, 0.4, 30, 30, 100, 31337, 2);
    CHECK(rep.pass());
    CHECK(rep.fields_checked == 100);
}

TEST_CASE("monotone bump check") {
    const auto f = generate_two_sided(0.5, 0.5, 25, 25, 919);
    CHECK(monotone_bump_check(f, 10, 10, 1.0));
    CHECK(monotone_bump_check(f, 1, 20, 0.5));
}

TEST_CASE("slow decorrelation: residuals are centred and structure is sane") {
    const auto rows = slow_decorrelation_suite(0.9, 1.0, 0.5, {300.0, 600.0}, 400, 99, 1.0, 2);
    REQUIRE(rows.size() == 2);
    for (const auto& r : rows) {
        CHECK(r.regime == CharacteristicRegime::Fan);
        CHECK(r.drift == doctest::Approx(r.r));
        // centred residual is small relative to the passage time itself (~T)
        CHECK(std::abs(r.mean_residual) < 0.2 * std::cbrt(r.T) * 3.0);
        CHECK(r.normalized_variance > 0.0);
        CHECK(r.exceedance >= 0.0);
        CHECK(r.exceedance <= 1.0);
    }
}

TEST_CASE("slow decorrelation boundary regime uses the T^(1/2) scale") {
    const auto rows = slow_decorrelation_suite(0.25, 1.0, 1.0, {200.0}, 200, 123, 1.0, 2);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].regime == CharacteristicRegime::Boundary);
    CHECK(rows[0].drift == doctest::Approx(200.0 / (0.75 * 0.75)));
}

TEST_CASE("slow decorrelation rejects out-of-regime exponents") {
    CHECK_THROWS_AS((void)slow_decorrelation_suite(0.9, 1.0, 1.2, {100.0}, 10, 1, 1.0, 1),
                    std::domain_error);
    CHECK_THROWS_AS((void)slow_decorrelation_suite(0.25, 1.0, 1.6, {100.0}, 10, 1, 1.0, 1),
                    std::domain_error);
}
