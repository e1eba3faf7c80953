// Scaling frames: coordinate and centering algebra for the height-function
// and passage-time limit statements. Everything here is a pure function of
// its arguments; floors are applied once, at the final lattice conversion.

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace kpzlab {

// gamma = (1-xi)/(1+xi) converts the TASEP ray parameter to the LPP ray
// parameter; the inverse has the same form.
inline double gamma_from_xi(double xi) {
    if (!(xi > -1.0 && xi < 1.0)) throw std::invalid_argument("gamma_from_xi: |xi| < 1 required");
    return (1.0 - xi) / (1.0 + xi);
}
inline double xi_from_gamma(double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("xi_from_gamma: gamma > 0 required");
    return (1.0 - gamma) / (1.0 + gamma);
}

// Height-function frame:
//   X(tau,theta)   = floor(xi (T + theta T^nu) + tau (2(1-xi^2))^{1/3} T^{2/3})
//   H(tau,theta,s) = (1+xi^2)/2 (T + theta T^nu)
//                  + xi tau (2(1-xi^2))^{1/3} T^{2/3}
//                  + (tau^2 - s) (1-xi^2)^{2/3} 2^{-1/3} T^{1/3}
struct TasepFramePoint {
    std::int64_t site = 0;      // X
    double height = 0.0;        // H(tau, theta, s)
    double height_at_s0 = 0.0;  // H(tau, theta, 0)
    double fluct_scale = 0.0;   // coefficient of -s in H
};

inline TasepFramePoint tasep_scaling(double T, double nu, double xi, double tau, double theta,
                                     double s) {
    if (!(T > 0.0)) throw std::invalid_argument("tasep_scaling: T > 0");
    if (!(nu >= 0.0 && nu < 1.0)) throw std::invalid_argument("tasep_scaling: nu in [0,1)");
    if (!(std::abs(xi) < 1.0)) throw std::invalid_argument("tasep_scaling: |xi| < 1");
    const double Te = T + theta * std::pow(T, nu);
    const double one_m = 1.0 - xi * xi;
    const double kappa_h = std::cbrt(2.0 * one_m);
    const double kappa_v = std::pow(one_m, 2.0 / 3.0) / std::cbrt(2.0);
    const double t23 = std::cbrt(T * T);
    const double t13 = std::cbrt(T);
    TasepFramePoint p;
    p.site = static_cast<std::int64_t>(std::floor(xi * Te + tau * kappa_h * t23));
    p.fluct_scale = kappa_v * t13;
    p.height_at_s0 = 0.5 * (1.0 + xi * xi) * Te + xi * tau * kappa_h * t23 +
                     tau * tau * kappa_v * t13;
    p.height = p.height_at_s0 - s * p.fluct_scale;
    return p;
}

// Standardised height observable: h >= H(tau,theta,s) iff s_hat <= s.
inline double tasep_standardize(const TasepFramePoint& p, double h) {
    return (p.height_at_s0 - h) / p.fluct_scale;
}

// Fixed-y passage frame:
//   x(tau)    = floor(T/(1+g)^2 + 2 tau T^{2/3} / ((1+g)^{2/3} g^{2/3}))
//   y(tau)    = floor(g^2 T/(1+g)^2)
//   ell(tau,s)= T + 2 tau (1+g)^{1/3} g^{-2/3} T^{2/3}
//             + (s - tau^2) (1+g)^{2/3} g^{-1/3} T^{1/3}
struct LppFramePoint {
    std::int64_t x = 0, y = 0;
    double ell = 0.0;        // ell at the requested s
    double ell_at_s0 = 0.0;  // ell at s = 0
    double fluct_scale = 0.0;
};

inline LppFramePoint lpp_scaling0(double T, double gamma, double tau, double s) {
    if (!(T > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("lpp_scaling0: T, gamma > 0");
    const double g = gamma, g1 = 1.0 + gamma;
    const double t23 = std::cbrt(T * T);
    const double t13 = std::cbrt(T);
    LppFramePoint p;
    p.x = static_cast<std::int64_t>(
        std::floor(T / (g1 * g1) + 2.0 * tau * t23 / (std::cbrt(g1 * g1) * std::cbrt(g * g))));
    p.y = static_cast<std::int64_t>(std::floor(g * g * T / (g1 * g1)));
    p.fluct_scale = std::cbrt(g1 * g1) / std::cbrt(g) * t13;
    p.ell_at_s0 = T + 2.0 * tau * std::cbrt(g1) / std::cbrt(g * g) * t23 -
                  tau * tau * p.fluct_scale;
    p.ell = p.ell_at_s0 + s * p.fluct_scale;
    return p;
}

// Standardised passage observable: L <= ell(tau, s) iff s_hat <= s.
inline double lpp_standardize(const LppFramePoint& p, double L) {
    return (L - p.ell_at_s0) / p.fluct_scale;
}

// Cut frame x + y ~ const with a theta T^nu drift along the tau = 0
// characteristic:
//   x(tau,theta) = floor((T+theta T^nu)/(1+g)^2 + tau c T^{2/3})
//   y(tau,theta) = floor(g^2 (T+theta T^nu)/(1+g)^2 - tau c T^{2/3})
//   with c = 2 g^{4/3} / ((1+g^2)(1+g)^{2/3}),
//   ell(tau,theta,s) = T + theta T^nu
//                    + tau 2 g^{1/3}(1+g)^{1/3}(g-1)/(1+g^2) T^{2/3}
//                    + (s - tau^2) (1+g)^{2/3} g^{-1/3} T^{1/3}
inline LppFramePoint lpp_scaling1(double T, double nu, double gamma, double tau, double theta,
                                  double s) {
    if (!(T > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("lpp_scaling1: T, gamma > 0");
    if (!(nu >= 0.0 && nu < 1.0)) throw std::invalid_argument("lpp_scaling1: nu in [0,1)");
    const double g = gamma, g1 = 1.0 + gamma;
    const double Te = T + theta * std::pow(T, nu);
    const double t23 = std::cbrt(T * T);
    const double t13 = std::cbrt(T);
    const double c = 2.0 * std::pow(g, 4.0 / 3.0) / ((1.0 + g * g) * std::cbrt(g1 * g1));
    LppFramePoint p;
    p.x = static_cast<std::int64_t>(std::floor(Te / (g1 * g1) + tau * c * t23));
    p.y = static_cast<std::int64_t>(std::floor(g * g * Te / (g1 * g1) - tau * c * t23));
    p.fluct_scale = std::cbrt(g1 * g1) / std::cbrt(g) * t13;
    p.ell_at_s0 = Te + tau * 2.0 * std::cbrt(g) * std::cbrt(g1) * (g - 1.0) / (1.0 + g * g) * t23 -
                  tau * tau * p.fluct_scale;
    p.ell = p.ell_at_s0 + s * p.fluct_scale;
    return p;
}

// Characteristic projection for slow decorrelation. Fan regime
// (gamma <= eta/(1-eta)): P and Q on the ray through the origin at T and
// T + r, deterministic increment r. Boundary regime: characteristic of
// slope eta^2/(1-eta)^2 through (T, gamma^2 T), increment r/(1-eta)^2.
enum class CharacteristicRegime { Fan, Boundary };

struct CharacteristicProjection {
    std::int64_t px = 0, py = 0;  // P
    std::int64_t qx = 0, qy = 0;  // Q
    double drift = 0.0;
    CharacteristicRegime regime = CharacteristicRegime::Fan;
};

inline CharacteristicProjection characteristic_project(double T, double r, double eta,
                                                       double gamma) {
    if (!(T > 0.0) || !(gamma > 0.0)) throw std::invalid_argument("characteristic_project");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("characteristic_project: eta");
    CharacteristicProjection c;
    const double g1 = 1.0 + gamma;
    if (eta == 1.0 || gamma <= eta / (1.0 - eta)) {
        c.regime = CharacteristicRegime::Fan;
        c.px = static_cast<std::int64_t>(std::floor(T / (g1 * g1)));
        c.py = static_cast<std::int64_t>(std::floor(gamma * gamma * T / (g1 * g1)));
        c.qx = static_cast<std::int64_t>(std::floor((T + r) / (g1 * g1)));
        c.qy = static_cast<std::int64_t>(std::floor(gamma * gamma * (T + r) / (g1 * g1)));
        c.drift = r;
    } else {
        c.regime = CharacteristicRegime::Boundary;
        const double slope = eta * eta / ((1.0 - eta) * (1.0 - eta));
        c.px = static_cast<std::int64_t>(std::floor(T));
        c.py = static_cast<std::int64_t>(std::floor(gamma * gamma * T));
        c.qx = static_cast<std::int64_t>(std::floor(T + r));
        c.qy = static_cast<std::int64_t>(std::floor(gamma * gamma * T + r * slope));
        c.drift = r / ((1.0 - eta) * (1.0 - eta));
    }
    return c;
}

// Centering and scale for the Gaussian (boundary-dominated) regime.
//   Left edge:   center (gamma^2/eta + 1/(1-eta)) theta T,
//                variance theta (gamma^2/eta^2 - 1/(1-eta)^2)
//   Bottom edge: center (1/pi + gamma^2/(1-pi)) theta T,
//                variance theta (1/pi^2 - gamma^2/(1-pi)^2)
// scale is T^{1/2}. Variance zero flags the regime boundary; negative
// variance is a regime violation.
enum class GaussianEdge { Left, Bottom };

struct GaussianFrame {
    double center = 0.0;
    double scale = 0.0;
    double variance = 0.0;
    bool degenerate = false;
};

inline GaussianFrame gaussian_centering(GaussianEdge edge, double eta_or_pi, double gamma,
                                        double theta, double T) {
    if (!(eta_or_pi > 0.0 && eta_or_pi < 1.0))
        throw std::invalid_argument("gaussian_centering: boundary parameter in (0,1)");
    if (!(gamma > 0.0) || !(theta > 0.0) || !(T > 0.0))
        throw std::invalid_argument("gaussian_centering: gamma, theta, T > 0");
    const double g2 = gamma * gamma;
    GaussianFrame f;
    f.scale = std::sqrt(T);
    if (edge == GaussianEdge::Left) {
        const double eta = eta_or_pi;
        f.center = (g2 / eta + 1.0 / (1.0 - eta)) * theta * T;
        f.variance = theta * (g2 / (eta * eta) - 1.0 / ((1.0 - eta) * (1.0 - eta)));
    } else {
        const double pi = eta_or_pi;
        f.center = (1.0 / pi + g2 / (1.0 - pi)) * theta * T;
        f.variance = theta * (1.0 / (pi * pi) - g2 / ((1.0 - pi) * (1.0 - pi)));
    }
    if (f.variance < 0.0) throw std::domain_error("gaussian_centering: regime violation");
    f.degenerate = f.variance == 0.0;
    return f;
}

inline double gaussian_standardize(const GaussianFrame& f, double value) {
    return (value - f.center) / f.scale;
}

// TASEP <-> LPP target link: x = (X+H)/2, y = (H-X)/2 (lattice-floored).
struct LatticeTarget {
    std::int64_t x = 0, y = 0;
};

inline LatticeTarget tasep_to_lpp_target(double X, double H) {
    LatticeTarget t;
    t.x = static_cast<std::int64_t>(std::floor(0.5 * (X + H)));
    t.y = static_cast<std::int64_t>(std::floor(0.5 * (H - X)));
    return t;
}

// A frame point list bundled with its model parameters, for ensemble specs.
struct FramePoint {
    double tau = 0.0;
    double theta = 0.0;
    double s = 0.0;
};

enum class FrameModel { TasepHeight, LppOneSidedFixedY, LppCut };

struct ScalingFrame {
    FrameModel model = FrameModel::LppOneSidedFixedY;
    double T = 0.0;
    double nu = 0.0;
    double geometry = 1.0;  // xi for TasepHeight, gamma otherwise
    std::vector<FramePoint> points;
};

} // namespace kpzlab
