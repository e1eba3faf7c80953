// Gauss-Legendre nodes and weights, plus panel helpers for integrands with
// a locally varying oscillation scale.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace kpzlab {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Nodes and weights on [-1, 1]; Newton iteration on P_n with the classical
// asymptotic initial guess.
inline QuadratureRule gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n >= 1");
    QuadratureRule r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            const double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        r.nodes[static_cast<std::size_t>(i)] = -x;
        r.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.weights[static_cast<std::size_t>(i)] = w;
        r.weights[static_cast<std::size_t>(n - 1 - i)] = w;
    }
    return r;
}

inline QuadratureRule gauss_legendre_on(int n, double a, double b) {
    QuadratureRule r = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        r.nodes[i] = mid + half * r.nodes[i];
        r.weights[i] *= half;
    }
    return r;
}

// Panel decomposition of [a, b] with widths shrinking like the local
// oscillation period pi/sqrt(freq(x)); used for Airy-type integrands whose
// argument runs far negative. freq must be >= 0.
template <class Freq>
inline std::vector<double> oscillation_panels(double a, double b, Freq freq) {
    std::vector<double> cuts{a};
    double x = a;
    while (x < b) {
        const double f = std::sqrt(std::max(freq(x), 0.0));
        const double width = std::min(std::max(0.4, M_PI / std::max(f, 1.6)), b - x);
        x += width;
        cuts.push_back(std::min(x, b));
    }
    if (cuts.back() < b) cuts.push_back(b);
    return cuts;
}

// Integral of f over [a,b] using fixed-order panels adapted to freq.
template <class F, class Freq>
inline double integrate_panels(F f, double a, double b, Freq freq, int nodes_per_panel = 12) {
    if (b <= a) return 0.0;
    const QuadratureRule base = gauss_legendre(nodes_per_panel);
    const std::vector<double> cuts = oscillation_panels(a, b, freq);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
        const double half = 0.5 * (cuts[p + 1] - cuts[p]);
        if (half <= 0.0) continue;
        double acc = 0.0;
        for (std::size_t i = 0; i < base.nodes.size(); ++i)
            acc += base.weights[i] * f(mid + half * base.nodes[i]);
        total += half * acc;
    }
    return total;
}

} // namespace kpzlab
