// Space-time kernels of the limit processes: extended Airy_2, the
// Brownian-to-Airy_2 transition kernel (a rank-one perturbation), and the
// Brownian kernel.
//
//   K_A2(t,s; t',s') =  int_{0}^{inf} e^{(t'-t)z} Ai(s+z) Ai(s'+z) dz   t >= t'
//                     = -int_{-inf}^{0} e^{(t'-t)z} Ai(s+z) Ai(s'+z) dz  t < t'
//
//   K_BM->2 = K_A2 + Ai(s) * ( e^{t'^3/3 - s't'} - int_0^inf e^{t'z} Ai(s'+z) dz )
//           = K_A2 + Ai(s) * int_0^inf e^{-t'z} Ai(s'-z) dz            (t' > 0)
//
//   K_B(t,s; t',s')  = phi_t(s) - 1[t > t'] phi_{t-t'}(s - s')
//
// with phi_v the centred Gaussian density of variance v. Airy integrals are
// evaluated on oscillation-adapted panels; the negative half-line integral
// is truncated where the exponential envelope falls below 1e-12.

#pragma once

#include <cmath>
#include <stdexcept>

#include "kpzlab/airy.hpp"
#include "kpzlab/quadrature.hpp"

namespace kpzlab {

namespace detail {

inline double ai(double x) { return airy_ai(x).ai; }

// frequency of Ai(s+z)Ai(s'+z) oscillation at position z
struct AiryPairFreq {
    double s, s2;
    double operator()(double z) const { return std::max(-(s + z), -(s2 + z)); }
};

} // namespace detail

// Exponential decay rate of Ai beyond which the tail is negligible at the
// 1e-14 level, given the most negative shift in play.
inline double airy_tail_cut(double smin) { return std::max(0.0, -smin) + 14.0; }

inline double k_airy2(double tau, double s, double tau2, double s2) {
    const double dt = tau - tau2;  // tau - tau'
    if (dt >= 0.0) {
        const double zmax = airy_tail_cut(std::min(s, s2));
        return integrate_panels(
            [&](double z) {
                return std::exp(-dt * z) * detail::ai(s + z) * detail::ai(s2 + z);
            },
            0.0, zmax, detail::AiryPairFreq{s, s2});
    }
    // tau < tau': envelope e^{dt' z} with dt' = tau' - tau > 0 as z -> -inf
    const double dtp = -dt;
    const double zmin = -(28.0 / dtp + std::max(0.0, std::max(s, s2)) / dtp);
    return -integrate_panels(
        [&](double z) {
            return std::exp(-dt * z) * detail::ai(s + z) * detail::ai(s2 + z);
        },
        zmin, 0.0, detail::AiryPairFreq{s, s2});
}

// Single-time Airy kernel in closed form; the classical identity
// int_0^inf Ai(a+z)Ai(b+z) dz = (Ai(a)Ai'(b) - Ai'(a)Ai(b)) / (a - b)
// with the confluent limit Ai'(a)^2 - a Ai(a)^2 on the diagonal.
inline double airy_kernel_closed(double a, double b) {
    const AiryValue va = airy_ai(a);
    if (std::abs(a - b) < 1e-7) {
        return va.ai_prime * va.ai_prime - a * va.ai * va.ai;
    }
    const AiryValue vb = airy_ai(b);
    return (va.ai * vb.ai_prime - va.ai_prime * vb.ai) / (a - b);
}

// The rank-one perturbation g(tau', s') of the transition kernel.
inline double bm_to_2_perturbation(double tau2, double s2) {
    if (tau2 > 0.0) {
        const double zmax = 28.0 / tau2 + std::max(0.0, s2) + 8.0;
        return integrate_panels(
            [&](double z) { return std::exp(-tau2 * z) * detail::ai(s2 - z); }, 0.0, zmax,
            [&](double z) { return z - s2; });
    }
    const double zmax = airy_tail_cut(s2);
    const double integral = integrate_panels(
        [&](double z) { return std::exp(tau2 * z) * detail::ai(s2 + z); }, 0.0, zmax,
        [&](double z) { return -(s2 + z); });
    return std::exp(tau2 * tau2 * tau2 / 3.0 - s2 * tau2) - integral;
}

inline double k_bm_to_2(double tau, double s, double tau2, double s2) {
    return k_airy2(tau, s, tau2, s2) + detail::ai(s) * bm_to_2_perturbation(tau2, s2);
}

inline double k_brownian(double tau, double s, double tau2, double s2) {
    if (!(tau > 0.0) || !(tau2 > 0.0))
        throw std::invalid_argument("k_brownian: times must be positive");
    double v = std::exp(-s * s / (2.0 * tau)) / std::sqrt(2.0 * M_PI * tau);
    if (tau > tau2) {
        const double d = tau - tau2, ds = s - s2;
        v -= std::exp(-ds * ds / (2.0 * d)) / std::sqrt(2.0 * M_PI * d);
    }
    return v;
}

} // namespace kpzlab
