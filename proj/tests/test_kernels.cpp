#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "kpzlab/kernels.hpp"

using namespace kpzlab;

namespace {
// brute-force oracle: very dense Gauss-Legendre over the same domain
double k_airy2_brute(double tau, double s, double tau2, double s2, int n) {
    const double dt = tau - tau2;
    double a, b;
    if (dt >= 0.0) {
        a = 0.0;
        b = airy_tail_cut(std::min(s, s2));
    } else {
        a = -(28.0 / (-dt) + std::max(0.0, std::max(s, s2)) / (-dt));
        b = 0.0;
    }
    const auto rule = gauss_legendre_on(n, a, b);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double z = rule.nodes[i];
        acc += rule.weights[i] * std::exp(-dt * z) * airy_ai(s + z).ai * airy_ai(s2 + z).ai;
    }
    return dt >= 0.0 ? acc : -acc;
}
} // namespace

TEST_CASE("single-time kernel matches the closed form") {
    CHECK(k_airy2(0.0, 0.0, 0.0, 0.0) ==
          doctest::Approx(airy_ai(0.0).ai_prime * airy_ai(0.0).ai_prime).epsilon(1e-8));
    for (double s : {-4.0, -1.0, 0.5, 2.0})
        for (double s2 : {-3.5, 0.0, 1.7}) {
            const double direct = k_airy2(0.0, s, 0.0, s2);
            CHECK(std::abs(direct - airy_kernel_closed(s, s2)) < 1e-8);
        }
}

TEST_CASE("single-time kernel is symmetric in (s, s')") {
    for (double s : {-6.0, -2.0, 1.0})
        CHECK(k_airy2(1.0, s, 1.0, 0.3) == doctest::Approx(k_airy2(1.0, 0.3, 1.0, s)).epsilon(1e-10));
}

TEST_CASE("extended kernel agrees with a 10x denser quadrature") {
    for (double dt : {0.5, 1.0, 3.0}) {
        CHECK(std::abs(k_airy2(dt, 0.0, 0.0, 0.0) - k_airy2_brute(dt, 0.0, 0.0, 0.0, 4000)) < 1e-8);
        CHECK(std::abs(k_airy2(dt, -5.0, 0.0, -2.0) - k_airy2_brute(dt, -5.0, 0.0, -2.0, 4000)) <
              1e-8);
        CHECK(std::abs(k_airy2(0.0, -3.0, dt, 1.0) - k_airy2_brute(0.0, -3.0, dt, 1.0, 6000)) <
              1e-8);
    }
}

TEST_CASE("extended kernel depends on times only through their difference") {
    CHECK(k_airy2(2.5, -1.0, 1.5, 0.5) == doctest::Approx(k_airy2(1.0, -1.0, 0.0, 0.5)));
    CHECK(k_airy2(0.0, -1.0, 1.0, 0.5) == doctest::Approx(k_airy2(3.0, -1.0, 4.0, 0.5)));
}

TEST_CASE("transition-kernel perturbation at tau' = 0 uses int_0^inf Ai = 1/3") {
    // g(0, 0) = 1 - int_0^inf Ai(z) dz = 2/3
    CHECK(bm_to_2_perturbation(0.0, 0.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-8));
}

TEST_CASE("transition-kernel perturbation: both displays agree at tau' = 1") {
    for (double s2 : {-2.0, 0.0, 1.5}) {
        const double rewritten = bm_to_2_perturbation(1.0, s2);
        // original display: e^{tau'^3/3 - s' tau'} - int_0^inf e^{tau' z} Ai(s'+z) dz
        const double direct = [&] {
            const double zmax = airy_tail_cut(s2) + 20.0;
            const auto rule = gauss_legendre_on(3000, 0.0, zmax);
            double acc = 0.0;
            for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                acc += rule.weights[i] * std::exp(rule.nodes[i]) * airy_ai(s2 + rule.nodes[i]).ai;
            return std::exp(1.0 / 3.0 - s2) - acc;
        }();
        CHECK(std::abs(rewritten - direct) < 1e-7);
    }
}

TEST_CASE("added term is rank one: every 2x2 minor vanishes") {
    const double tau = 0.4, tau2 = 1.1;
    auto added = [&](double s, double s2) {
        return k_bm_to_2(tau, s, tau2, s2) - k_airy2(tau, s, tau2, s2);
    };
    const double m = added(-1.0, 0.0) * added(0.5, 1.2) - added(-1.0, 1.2) * added(0.5, 0.0);
    CHECK(std::abs(m) < 1e-12);
}

TEST_CASE("brownian kernel closed-form values") {
    CHECK(k_brownian(1.0, 0.0, 1.0, 0.7) == doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)));
    CHECK(k_brownian(2.0, 0.0, 1.0, 0.0) ==
          doctest::Approx(1.0 / std::sqrt(4.0 * M_PI) - 1.0 / std::sqrt(2.0 * M_PI)));
    // tau < tau': only the density term survives
    CHECK(k_brownian(1.0, 0.5, 2.0, -3.0) ==
          doctest::Approx(std::exp(-0.125) / std::sqrt(2.0 * M_PI)));
    CHECK_THROWS_AS((void)k_brownian(0.0, 0.0, 1.0, 0.0), std::invalid_argument);
}
