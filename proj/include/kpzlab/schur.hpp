// Finite-N correlation kernel of one-sided LPP joint laws (Schur process),
// evaluated by trapezoid quadrature over two circular contours, and the
// joint CDF as a Fredholm determinant over {n_k} x (S_k, inf).
//
//   K_N(n_i, x; n_j, y) = -Psi_{n_i,n_j}(x, y) + K1(n_i, x; n_j, y)
//
//   K1 = (2 pi i)^{-2} oint_C dz oint_C' dw  e^{wy - zx}/(w - z)
//        * (z+1-eta)^{n_i-1} (w+1-eta)^{-(n_j-1)} (z/w) (w-eta)^N (z-eta)^{-N}
//
//   Psi = 1[n_i < n_j] 1[x < y] (y-x)^{m-1} e^{(eta-1)(y-x)} / (m-1)!,
//         m = n_j - n_i   (residue at w = eta-1 of the defining integral)
//
// C encircles eta; C' encircles 0 and eta-1; the circles are disjoint.
// Index convention: the public functions take the lattice column x of the
// passage target L1(x, y=N); the kernel level is n = x + 1. This reading
// reproduces the closed-form exponential-sum laws at N = 1 and the Monte
// Carlo law at N = 3 (see tests).
//
// Unbounded slices use the substitution x = S + c log(1/(1-u)) with
// Gauss-Legendre nodes in u; c is matched to the slowest exponential decay
// rate eta of the passage-time tail.

#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "kpzlab/fredholm.hpp"
#include "kpzlab/quadrature.hpp"

namespace kpzlab {

namespace detail {

using cplx = std::complex<double>;

inline cplx ipow(cplx base, int e) {
    if (e < 0) return 1.0 / ipow(base, -e);
    cplx r = 1.0;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

struct Contours {
    cplx cz;  // center of C (around eta)
    double rz = 0.0;
    cplx cw;  // center of C' (around {0, eta-1})
    double rw = 0.0;
};

inline Contours schur_contours(double eta) {
    const double m = std::min(eta, 1.0 - eta);
    Contours c;
    c.cz = eta;
    c.rz = m / 3.0;
    c.cw = 0.5 * (eta - 1.0);
    c.rw = 0.5 * (1.0 - eta) + 0.25 * m;
    return c;
}

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

} // namespace detail

// Psi term (closed form).
inline double schur_psi(double eta, int n_i, int n_j, double x, double y) {
    if (!(n_i < n_j && x < y)) return 0.0;
    const int m = n_j - n_i;
    return std::pow(y - x, m - 1) * std::exp((eta - 1.0) * (y - x)) / detail::factorial(m - 1);
}

// Kernel K_N at a single point; x_col/y_col are lattice columns of the
// passage targets (kernel levels are x_col + 1, y_col + 1).
inline double schur_kernel(double eta, int N, int x_col, double x, int y_col, double y,
                           int contour_points = 256) {
    using detail::cplx;
    const detail::Contours ct = detail::schur_contours(eta);
    const int P = contour_points;
    cplx acc = 0.0;
    for (int a = 0; a < P; ++a) {
        const double tha = 2.0 * M_PI * (a + 0.5) / P;
        const cplx z = ct.cz + ct.rz * cplx(std::cos(tha), std::sin(tha));
        const cplx zfac = (z - ct.cz) * detail::ipow(z + 1.0 - eta, x_col) * z /
                          detail::ipow(z - eta, N) * std::exp(-z * x);
        cplx inner = 0.0;
        for (int b = 0; b < P; ++b) {
            const double thb = 2.0 * M_PI * (b + 0.5) / P;
            const cplx w = ct.cw + ct.rw * cplx(std::cos(thb), std::sin(thb));
            const cplx wfac = (w - ct.cw) * detail::ipow(w - eta, N) /
                              (detail::ipow(w + 1.0 - eta, y_col) * w) * std::exp(w * y);
            inner += wfac / (w - z);
        }
        acc += zfac * inner;
    }
    const double k1 = acc.real() / (static_cast<double>(P) * P);
    return k1 - schur_psi(eta, x_col + 1, y_col + 1, x, y);
}

// det(1 - P_S K_N P_S) at a fixed resolution; levels are target columns.
inline double schur_fredholm_det(const KernelSpec& spec, int nodes, int contour_points,
                                 double delta) {
    using detail::cplx;
    const double eta = spec.eta;
    const int N = spec.schur_N;
    const std::size_t m = spec.levels.size();
    const detail::Contours ct = detail::schur_contours(eta);
    const int P = contour_points;

    // contour points
    std::vector<cplx> zs(static_cast<std::size_t>(P)), ws(static_cast<std::size_t>(P));
    for (int a = 0; a < P; ++a) {
        const double th = 2.0 * M_PI * (a + 0.5) / P;
        zs[static_cast<std::size_t>(a)] = ct.cz + ct.rz * cplx(std::cos(th), std::sin(th));
        ws[static_cast<std::size_t>(a)] = ct.cw + ct.rw * cplx(std::cos(th), std::sin(th));
    }

    // slice quadratures on (S_k, inf), exponential substitution
    const double scale = 2.5 / eta;
    const std::size_t n = static_cast<std::size_t>(nodes);
    std::vector<std::vector<double>> xs(m), wq(m);
    const QuadratureRule unit = gauss_legendre_on(nodes, 0.0, 1.0);
    for (std::size_t k = 0; k < m; ++k) {
        xs[k].resize(n);
        wq[k].resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = unit.nodes[i];
            xs[k][i] = spec.thresholds[k] - scale * std::log1p(-u);
            wq[k][i] = unit.weights[i] * scale / (1.0 - u);
        }
    }

    const std::size_t dim = m * n;
    std::vector<double> mat(dim * dim, 0.0);
    std::vector<cplx> inner(static_cast<std::size_t>(P) * n);

    for (std::size_t k = 0; k < m; ++k) {
        for (std::size_t l = 0; l < m; ++l) {
            const int xcol_i = spec.levels[k];
            const int ycol_j = spec.levels[l];
            // w-side factors and the (a, j) inner sums
            std::vector<cplx> wf(static_cast<std::size_t>(P));
            for (int b = 0; b < P; ++b) {
                const cplx w = ws[static_cast<std::size_t>(b)];
                wf[static_cast<std::size_t>(b)] = (w - ct.cw) * detail::ipow(w - eta, N) /
                                                  (detail::ipow(w + 1.0 - eta, ycol_j) * w);
            }
            for (int a = 0; a < P; ++a)
                for (std::size_t j = 0; j < n; ++j) {
                    cplx s = 0.0;
                    const cplx z = zs[static_cast<std::size_t>(a)];
                    for (int b = 0; b < P; ++b) {
                        const cplx w = ws[static_cast<std::size_t>(b)];
                        s += wf[static_cast<std::size_t>(b)] * std::exp(w * xs[l][j]) / (w - z);
                    }
                    inner[static_cast<std::size_t>(a) * n + j] = s;
                }
            for (std::size_t i = 0; i < n; ++i) {
                const double x = xs[k][i];
                for (std::size_t j = 0; j < n; ++j) {
                    const double y = xs[l][j];
                    cplx acc = 0.0;
                    for (int a = 0; a < P; ++a) {
                        const cplx z = zs[static_cast<std::size_t>(a)];
                        const cplx zf = (z - ct.cz) * detail::ipow(z + 1.0 - eta, xcol_i) * z /
                                        detail::ipow(z - eta, N) * std::exp(-z * x);
                        acc += zf * inner[static_cast<std::size_t>(a) * n + j];
                    }
                    double kv = acc.real() / (static_cast<double>(P) * P);
                    kv -= schur_psi(eta, xcol_i + 1, ycol_j + 1, x, y);
                    kv *= std::exp(delta * (x - y));
                    mat[(k * n + i) * dim + (l * n + j)] = -std::sqrt(wq[k][i] * wq[l][j]) * kv;
                }
            }
        }
    }
    for (std::size_t d = 0; d < dim; ++d) mat[d * dim + d] += 1.0;
    return detail::lu_determinant(mat, dim);
}

// Joint CDF P(L1(n_k, N) <= S_k, k = 1..m) with refinement estimate.
inline FredholmResult schur_joint_cdf(double eta, int N, const std::vector<int>& target_cols,
                                      const std::vector<double>& thresholds,
                                      const QuadratureScheme& quad) {
    KernelSpec spec;
    spec.process = Process::SchurFiniteN;
    spec.eta = eta;
    spec.schur_N = N;
    spec.levels = target_cols;
    spec.thresholds = thresholds;
    return fredholm_joint_cdf(spec, quad);
}

} // namespace kpzlab
