// Fredholm determinants det(1 - chi_s K chi_s) on L^2({tau_1..tau_m} x R)
// by Nystrom discretisation: Gauss-Legendre nodes per slice, symmetric
// square-root weighting, pivoted-LU determinant. Airy-type slices are
// truncated to (s_k, s_k + cutoff); the reported convergence estimate is
// the difference against a refined evaluation with doubled nodes and
// doubled cutoff.

#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "kpzlab/kernels.hpp"
#include "kpzlab/quadrature.hpp"

namespace kpzlab {

enum class Process { Airy2, BmToAiry2, Brownian, SchurFiniteN };

struct KernelSpec {
    Process process = Process::Airy2;
    std::vector<double> times;       // tau_k, strictly increasing
    std::vector<double> thresholds;  // s_k (or S_k for Schur)
    // Schur-only parameters
    double eta = 0.5;
    int schur_N = 1;
    std::vector<int> levels;  // n_k, nondecreasing

    void validate() const {
        const std::size_t m =
            process == Process::SchurFiniteN ? levels.size() : times.size();
        if (m == 0) throw std::invalid_argument("KernelSpec: empty spec");
        if (thresholds.size() != m)
            throw std::invalid_argument("KernelSpec: times/thresholds length mismatch");
        if (process == Process::SchurFiniteN) {
            if (!(eta > 0.0 && eta < 1.0))
                throw std::invalid_argument("KernelSpec: Schur eta in (0,1)");
            if (schur_N < 1 || schur_N > 12)
                throw std::invalid_argument("KernelSpec: Schur N in [1,12]");
            for (std::size_t k = 0; k < levels.size(); ++k) {
                if (levels[k] < 1) throw std::invalid_argument("KernelSpec: Schur n_k >= 1");
                if (k > 0 && levels[k] < levels[k - 1])
                    throw std::invalid_argument("KernelSpec: Schur levels must be nondecreasing");
                if (thresholds[k] <= 0.0)
                    throw std::invalid_argument("KernelSpec: Schur thresholds must be positive");
            }
        } else {
            for (std::size_t k = 0; k < times.size(); ++k) {
                if (k > 0 && !(times[k] > times[k - 1]))
                    throw std::invalid_argument("KernelSpec: times must be strictly increasing");
                if (process == Process::Brownian && !(times[k] > 0.0))
                    throw std::invalid_argument("KernelSpec: Brownian times must be positive");
            }
        }
    }
};

struct QuadratureScheme {
    int nodes_per_slice = 40;
    double domain_cutoff = 10.0;
    int contour_points = 256;        // Schur only
    double conjugation_delta = 0.0;  // Schur only

    void validate() const {
        if (nodes_per_slice < 8) throw std::invalid_argument("QuadratureScheme: nodes >= 8");
        if (domain_cutoff < 6.0) throw std::invalid_argument("QuadratureScheme: cutoff >= 6");
        if (contour_points < 16)
            throw std::invalid_argument("QuadratureScheme: contour_points >= 16");
    }
};

struct FredholmResult {
    double value = 0.0;                 // clamped to [0,1]
    double raw_value = 0.0;             // unclamped determinant
    double convergence_estimate = 0.0;  // |refined - base|
    bool converged = true;
    bool clamped = false;
};

namespace detail {

// det(A) for dense row-major A (n x n), destructive partial-pivot LU.
inline double lu_determinant(std::vector<double>& a, std::size_t n) {
    double det = 1.0;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        double big = std::abs(a[c * n + c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double v = std::abs(a[r * n + c]);
            if (v > big) {
                big = v;
                piv = r;
            }
        }
        if (big == 0.0) return 0.0;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[piv * n + k], a[c * n + k]);
            det = -det;
        }
        const double d = a[c * n + c];
        det *= d;
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r * n + c] / d;
            if (f == 0.0) continue;
            for (std::size_t k = c + 1; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
            a[r * n + c] = 0.0;
        }
    }
    return det;
}

// One Airy-type / Brownian determinant at a fixed resolution.
inline double airy_family_det(const KernelSpec& spec, int nodes, double cutoff) {
    const std::size_t m = spec.times.size();
    std::vector<QuadratureRule> slice(m);
    for (std::size_t k = 0; k < m; ++k)
        slice[k] = gauss_legendre_on(nodes, spec.thresholds[k], spec.thresholds[k] + cutoff);

    const std::size_t n = static_cast<std::size_t>(nodes);
    const std::size_t dim = m * n;
    std::vector<double> mat(dim * dim, 0.0);

    if (spec.process == Process::Brownian) {
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t l = 0; l < m; ++l)
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j) {
                        const double kv = k_brownian(spec.times[k], slice[k].nodes[i],
                                                     spec.times[l], slice[l].nodes[j]);
                        mat[(k * n + i) * dim + (l * n + j)] =
                            -std::sqrt(slice[k].weights[i] * slice[l].weights[j]) * kv;
                    }
    } else {
        // Shared positive z-grid across all slice pairs with tau_k >= tau_l.
        double smin = spec.thresholds[0];
        for (double s : spec.thresholds) smin = std::min(smin, s);
        const QuadratureRule pos = [&] {
            const double zmax = airy_tail_cut(smin) + std::max(0.0, cutoff - 10.0);
            const std::vector<double> cuts = oscillation_panels(
                0.0, zmax, [&](double z) { return std::max(0.0, -(smin + z)); });
            QuadratureRule r;
            const QuadratureRule base = gauss_legendre(12);
            for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
                const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
                const double half = 0.5 * (cuts[p + 1] - cuts[p]);
                for (std::size_t q = 0; q < base.nodes.size(); ++q) {
                    r.nodes.push_back(mid + half * base.nodes[q]);
                    r.weights.push_back(half * base.weights[q]);
                }
            }
            return r;
        }();
        const std::size_t Q = pos.nodes.size();

        // Ai(x_i^k + z_q) per slice
        std::vector<std::vector<double>> A(m, std::vector<double>(n * Q));
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t q = 0; q < Q; ++q)
                    A[k][i * Q + q] = airy_ai(slice[k].nodes[i] + pos.nodes[q]).ai;

        // rank-one perturbation pieces for the transition kernel
        std::vector<std::vector<double>> pert;
        std::vector<std::vector<double>> ai_at_nodes(m, std::vector<double>(n));
        if (spec.process == Process::BmToAiry2) {
            pert.assign(m, std::vector<double>(n));
            for (std::size_t l = 0; l < m; ++l)
                for (std::size_t j = 0; j < n; ++j)
                    pert[l][j] = bm_to_2_perturbation(spec.times[l], slice[l].nodes[j]);
        }
        for (std::size_t k = 0; k < m; ++k)
            for (std::size_t i = 0; i < n; ++i) ai_at_nodes[k][i] = airy_ai(slice[k].nodes[i]).ai;

        for (std::size_t k = 0; k < m; ++k) {
            for (std::size_t l = 0; l < m; ++l) {
                const double dt = spec.times[k] - spec.times[l];
                std::vector<double> block(n * n, 0.0);
                if (dt >= 0.0) {
                    std::vector<double> ew(Q);
                    for (std::size_t q = 0; q < Q; ++q)
                        ew[q] = pos.weights[q] * std::exp(-dt * pos.nodes[q]);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) {
                            double acc = 0.0;
                            for (std::size_t q = 0; q < Q; ++q)
                                acc += ew[q] * A[k][i * Q + q] * A[l][j * Q + q];
                            block[i * n + j] = acc;
                        }
                } else {
                    const double dtp = -dt;
                    const double zmin = -(28.0 / dtp +
                                          std::max(0.0, std::max(spec.thresholds[k],
                                                                 spec.thresholds[l])) /
                                              dtp);
                    const std::vector<double> cuts = oscillation_panels(
                        zmin, 0.0,
                        [&](double z) { return std::max(0.0, -(smin + z)); });
                    QuadratureRule neg;
                    const QuadratureRule base = gauss_legendre(12);
                    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
                        const double mid = 0.5 * (cuts[p] + cuts[p + 1]);
                        const double half = 0.5 * (cuts[p + 1] - cuts[p]);
                        for (std::size_t q = 0; q < base.nodes.size(); ++q) {
                            neg.nodes.push_back(mid + half * base.nodes[q]);
                            neg.weights.push_back(half * base.weights[q]);
                        }
                    }
                    const std::size_t Qn = neg.nodes.size();
                    std::vector<double> Ak(n * Qn), Al(n * Qn), ew(Qn);
                    for (std::size_t q = 0; q < Qn; ++q)
                        ew[q] = neg.weights[q] * std::exp(-dt * neg.nodes[q]);
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t q = 0; q < Qn; ++q) {
                            Ak[i * Qn + q] = airy_ai(slice[k].nodes[i] + neg.nodes[q]).ai;
                            Al[i * Qn + q] = airy_ai(slice[l].nodes[i] + neg.nodes[q]).ai;
                        }
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j) {
                            double acc = 0.0;
                            for (std::size_t q = 0; q < Qn; ++q)
                                acc += ew[q] * Ak[i * Qn + q] * Al[j * Qn + q];
                            block[i * n + j] = -acc;
                        }
                }
                if (spec.process == Process::BmToAiry2)
                    for (std::size_t i = 0; i < n; ++i)
                        for (std::size_t j = 0; j < n; ++j)
                            block[i * n + j] += ai_at_nodes[k][i] * pert[l][j];
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t j = 0; j < n; ++j)
                        mat[(k * n + i) * dim + (l * n + j)] =
                            -std::sqrt(slice[k].weights[i] * slice[l].weights[j]) *
                            block[i * n + j];
            }
        }
    }

    for (std::size_t d = 0; d < dim; ++d) mat[d * dim + d] += 1.0;
    return lu_determinant(mat, dim);
}

inline FredholmResult refine_pair(double base, double fine) {
    FredholmResult r;
    r.raw_value = fine;
    r.convergence_estimate = std::abs(fine - base);
    r.converged = r.convergence_estimate <= 1e-6;
    r.value = fine;
    if (r.value < 0.0 || r.value > 1.0) {
        r.clamped = true;
        r.value = std::min(1.0, std::max(0.0, r.value));
    }
    return r;
}

} // namespace detail

inline double schur_fredholm_det(const KernelSpec&, int nodes, int contour_points, double delta);

inline FredholmResult fredholm_joint_cdf(const KernelSpec& spec, const QuadratureScheme& quad) {
    spec.validate();
    quad.validate();
    if (spec.process == Process::SchurFiniteN) {
        const double base = schur_fredholm_det(spec, quad.nodes_per_slice, quad.contour_points,
                                               quad.conjugation_delta);
        const double fine = schur_fredholm_det(spec, quad.nodes_per_slice * 2,
                                               quad.contour_points * 2, quad.conjugation_delta);
        return detail::refine_pair(base, fine);
    }
    const double base = detail::airy_family_det(spec, quad.nodes_per_slice, quad.domain_cutoff);
    const double fine =
        detail::airy_family_det(spec, quad.nodes_per_slice * 2, 2.0 * quad.domain_cutoff);
    return detail::refine_pair(base, fine);
}

// Convenience one-point distributions.
inline FredholmResult airy2_point_cdf(double s, const QuadratureScheme& quad) {
    KernelSpec spec;
    spec.process = Process::Airy2;
    spec.times = {0.0};
    spec.thresholds = {s};
    return fredholm_joint_cdf(spec, quad);
}

} // namespace kpzlab

#include "kpzlab/schur.hpp"  // definition of schur_fredholm_det
