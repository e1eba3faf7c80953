#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "kpzlab/lpp.hpp"
#include "kpzlab/schur.hpp"

using namespace kpzlab;

TEST_CASE("N=1 target (1,1): exponential-sum law in closed form") {
    QuadratureScheme q;
    q.nodes_per_slice = 48;
    const double eta = 0.5;
    for (double t : {1.0, 2.0, 4.0}) {
        const auto r = schur_joint_cdf(eta, 1, {1}, {t}, q);
        const double exact = 1.0 - (std::exp(-eta * t) - eta * std::exp(-t)) / (1.0 - eta);
        CHECK(std::abs(r.value - exact) < 1e-6);
    }
}

TEST_CASE("N=1 target (2,1): Exp + Gamma(2) convolution oracle") {
    QuadratureScheme q;
    q.nodes_per_slice = 48;
    const double eta = 0.5, t = 6.0;
    const auto r = schur_joint_cdf(eta, 1, {2}, {t}, q);
    const auto rule = gauss_legendre_on(400, 0.0, t);
    double oracle = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double u = rule.nodes[i];
        const double g2 = 1.0 - std::exp(-(t - u)) * (1.0 + (t - u));
        oracle += rule.weights[i] * eta * std::exp(-eta * u) * g2;
    }
    CHECK(std::abs(r.value - oracle) < 1e-6);
}

TEST_CASE("point kernel at N=1 matches the residue closed form") {
    // z-residue at eta and w-residues at {0, eta-1} give, for target
    // columns (1,1):  K(x,y) = eta e^{-eta x} (1 - e^{-(1-eta) y})/(1-eta)
    const double eta = 0.5;
    for (double x : {0.5, 2.0, 5.0})
        for (double y : {0.7, 3.0, 6.0}) {
            const double k = schur_kernel(eta, 1, 1, x, 1, y);
            const double exact =
                eta * std::exp(-eta * x) * (1.0 - std::exp(-(1.0 - eta) * y)) / (1.0 - eta);
            CHECK(std::abs(k - exact) < 1e-10);
        }
}

TEST_CASE("psi term: indicator structure and contour-integral oracle") {
    const double eta = 0.4;
    CHECK(schur_psi(eta, 3, 3, 1.0, 2.0) == 0.0);
    CHECK(schur_psi(eta, 4, 2, 1.0, 2.0) == 0.0);
    CHECK(schur_psi(eta, 2, 4, 3.0, 2.0) == 0.0);

    // oracle: (2 pi i)^{-1} oint e^{w(y-x)} (w+1-eta)^{n_i-n_j} dw over C'
    const auto oracle = [&](int ni, int nj, double x, double y) {
        const auto ct = detail::schur_contours(eta);
        const int P = 4096;
        std::complex<double> acc = 0.0;
        for (int b = 0; b < P; ++b) {
            const double th = 2.0 * M_PI * (b + 0.5) / P;
            const std::complex<double> w =
                ct.cw + ct.rw * std::complex<double>(std::cos(th), std::sin(th));
            acc += std::exp(w * (y - x)) * detail::ipow(w + 1.0 - eta, ni - nj) * (w - ct.cw);
        }
        return acc.real() / P;
    };
    for (int m : {1, 2, 4})
        for (double gap : {0.5, 2.0, 7.0})
            CHECK(schur_psi(eta, 2, 2 + m, 1.0, 1.0 + gap) ==
                  doctest::Approx(oracle(2, 2 + m, 1.0, 1.0 + gap)).epsilon(1e-9));
}

TEST_CASE("conjugation leaves the determinant unchanged") {
    QuadratureScheme base;
    base.nodes_per_slice = 48;
    const auto r0 = schur_joint_cdf(0.6, 2, {2}, {6.0}, base);
    for (double delta : {-0.2, 0.1, 0.2}) {
        QuadratureScheme q = base;
        q.conjugation_delta = delta;
        const auto r = schur_joint_cdf(0.6, 2, {2}, {6.0}, q);
        CHECK(std::abs(r.value - r0.value) < 1e-8);
    }
}

TEST_CASE("N=3 one-point law against the Monte Carlo oracle") {
    QuadratureScheme q;
    q.nodes_per_slice = 48;
    const double eta = 0.6;
    const BoundaryParams bp = BoundaryParams::one_sided(eta);
    const int n_mc = 200000;
    for (double t : {6.0, 9.0}) {
        const auto r = schur_joint_cdf(eta, 3, {3}, {t}, q);
        int cnt = 0;
        for (int s = 0; s < n_mc; ++s)
            if (passage_time_fused(bp, SeedPolicy{4242, (std::uint64_t)s}.stream_key(), 3, 3) <= t)
                ++cnt;
        const double mc = static_cast<double>(cnt) / n_mc;
        const double se = std::sqrt(mc * (1.0 - mc) / n_mc);
        CHECK(std::abs(r.value - mc) < 3.0 * se);
    }
}

TEST_CASE("joint two-level law against the Monte Carlo oracle") {
    QuadratureScheme q;
    q.nodes_per_slice = 40;
    const double eta = 0.5;
    const int N = 2;
    const std::vector<int> cols{2, 4};
    const std::vector<double> ts{6.0, 9.0};
    const auto r = schur_joint_cdf(eta, N, cols, ts, q);

    const BoundaryParams bp = BoundaryParams::one_sided(eta);
    const int n_mc = 200000;
    int cnt = 0;
    for (int s = 0; s < n_mc; ++s) {
        const auto L = passage_times_fused(bp, SeedPolicy{777, (std::uint64_t)s}.stream_key(),
                                           {{2, 2}, {4, 2}});
        if (L[0] <= ts[0] && L[1] <= ts[1]) ++cnt;
    }
    const double mc = static_cast<double>(cnt) / n_mc;
    const double se = std::sqrt(mc * (1.0 - mc) / n_mc);
    CHECK(std::abs(r.value - mc) < 3.0 * se + 1e-4);
}

TEST_CASE("kernel spec validation for the Schur family") {
    QuadratureScheme q;
    KernelSpec k;
    k.process = Process::SchurFiniteN;
    k.eta = 0.5;
    k.schur_N = 13;
    k.levels = {1};
    k.thresholds = {1.0};
    CHECK_THROWS_AS((void)fredholm_joint_cdf(k, q), std::invalid_argument);
    k.schur_N = 2;
    k.thresholds = {-1.0};
    CHECK_THROWS_AS((void)fredholm_joint_cdf(k, q), std::invalid_argument);
    k.thresholds = {1.0};
    k.levels = {0};
    CHECK_THROWS_AS((void)fredholm_joint_cdf(k, q), std::invalid_argument);
}
