// Airy function Ai and its derivative on the real line.
//
// Hybrid evaluation: Maclaurin series on the central interval, asymptotic
// expansions outside (exponential form on the positive axis, trigonometric
// form on the negative axis). The switch points are placed where both
// halves meet well below the 1e-10 absolute-error contract; the series is
// summed with compensated accumulation because its terms grow like
// exp((2/3)|x|^{3/2}) before the cancellation sets in.

#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace kpzlab {

struct AiryValue {
    double ai = 0.0;
    double ai_prime = 0.0;
    double abs_error_bound = 0.0;
};

namespace detail {

inline constexpr double kAiZero = 0.35502805388781723926;    // 3^{-2/3}/Gamma(2/3)
inline constexpr double kAipZero = -0.25881940379280679841;  // -3^{-1/3}/Gamma(1/3)
inline constexpr double kSeriesHi = 5.5;
inline constexpr double kSeriesLo = -7.0;

struct Kahan {
    double sum = 0.0, c = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            c += (sum - t) + v;
        else
            c += (v - t) + sum;
        sum = t;
    }
    double value() const { return sum + c; }
};

inline AiryValue airy_series(double x) {
    const double x3 = x * x * x;
    Kahan f, g, fp, gp;
    double maxmag = 1.0;
    double t = 1.0;  // f terms
    double u = x;    // g terms
    f.add(1.0);
    g.add(x);
    gp.add(1.0);
    for (int k = 0; k < 200; ++k) {
        const double tn = t * x3 / ((3 * k + 2) * (3 * k + 3));
        const double un = u * x3 / ((3 * k + 3) * (3 * k + 4));
        const double tpn = 3 * (k + 1) * tn / x;
        const double upn = (3 * (k + 1) + 1) * un / x;
        f.add(tn);
        g.add(un);
        fp.add(tpn);
        gp.add(upn);
        t = tn;
        u = un;
        maxmag = std::max({maxmag, std::abs(tn), std::abs(un), std::abs(tpn), std::abs(upn)});
        if (std::abs(tn) < 1e-20 && std::abs(un) < 1e-20 && k > 3) break;
    }
    AiryValue v;
    v.ai = kAiZero * f.value() + kAipZero * g.value();
    v.ai_prime = kAiZero * fp.value() + kAipZero * gp.value();
    const double eps = std::numeric_limits<double>::epsilon();
    // compensated summation leaves ~1 ulp of the largest term
    v.abs_error_bound = 2.0 * eps * maxmag + 4.0 * eps;
    return v;
}

// Coefficients u_k of the asymptotic expansions, u_{k+1}/u_k =
// (6k+5)(6k+3)(6k+1) / (216 (k+1)(2k+1)) expressed via half-integers.
inline double asym_next(double uk, int k) {
    return uk * (3 * k + 2.5) * (3 * k + 1.5) * (3 * k + 0.5) / (54.0 * (k + 1) * (k + 0.5));
}

inline AiryValue airy_asym_pos(double x) {
    const double zeta = 2.0 / 3.0 * std::pow(x, 1.5);
    const double root = std::pow(x, 0.25);
    const double pre = std::exp(-zeta) / (2.0 * std::sqrt(M_PI));
    double s_ai = 0.0, s_aip = 0.0, uk = 1.0, term = 1.0, last = 0.0;
    int k = 0;
    for (; k < 60; ++k) {
        const double dk = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * uk;  // k=0: dk = 1
        s_ai += term;
        s_aip += (k == 0 ? 1.0 : dk / uk * term);
        const double unext = asym_next(uk, k);
        const double tnext = -term * unext / uk / zeta;
        if (std::abs(tnext) >= std::abs(term)) break;  // divergence point
        last = tnext;
        uk = unext;
        term = tnext;
        if (std::abs(term) < 1e-18) break;
    }
    AiryValue v;
    v.ai = pre / root * s_ai;
    v.ai_prime = -pre * root * s_aip;
    const double eps = std::numeric_limits<double>::epsilon();
    // truncation + rounding of exp(-zeta), whose relative error grows with zeta
    v.abs_error_bound = 2.0 * pre * std::max(root, 1.0 / root) *
                            (std::abs(last) + eps * (4.0 + zeta)) +
                        std::numeric_limits<double>::min();
    return v;
}

inline AiryValue airy_asym_neg(double x) {
    const double z = -x;
    const double zeta = 2.0 / 3.0 * std::pow(z, 1.5);
    const double root = std::pow(z, 0.25);
    const double phi = zeta - 0.25 * M_PI;
    const double cp = std::cos(phi), sp = std::sin(phi);
    // even/odd splits of sum (-1)^k u_k zeta^{-k} and of the v_k sum
    double ue = 0.0, uo = 0.0, ve = 0.0, vo = 0.0;
    double uk = 1.0, zpow = 1.0, last = 1.0;
    for (int k = 0; k < 60; ++k) {
        const double term = uk * zpow;            // u_k zeta^{-k}
        const double vterm = -(6.0 * k + 1.0) / (6.0 * k - 1.0) * term;  // v_k zeta^{-k}
        if (k > 0 && std::abs(term) > last) break;
        last = std::abs(term);
        const int phase = (k / 2) % 2 ? -1 : 1;  // (-1)^{floor(k/2)}
        if (k % 2 == 0) {
            ue += phase * term;
            ve += phase * vterm;
        } else {
            uo += phase * term;
            vo += phase * vterm;
        }
        uk = asym_next(uk, k);
        zpow /= zeta;
        if (last < 1e-18) break;
    }
    AiryValue v;
    v.ai = (cp * ue + sp * uo) / (std::sqrt(M_PI) * root);
    v.ai_prime = (sp * ve - cp * vo) * root / std::sqrt(M_PI);
    const double eps = std::numeric_limits<double>::epsilon();
    // truncation + phase-argument rounding, scaled for the ai' amplitude
    v.abs_error_bound = 2.0 * (last + eps * (2.0 + 2.0 * zeta)) * root / std::sqrt(M_PI);
    return v;
}

} // namespace detail

inline AiryValue airy_ai(double x) {
    if (std::isnan(x)) throw std::invalid_argument("airy_ai: NaN input");
    if (x == 0.0)
        return {detail::kAiZero, detail::kAipZero, 4e-16};
    if (x > detail::kSeriesHi) return detail::airy_asym_pos(x);
    if (x < detail::kSeriesLo) return detail::airy_asym_neg(x);
    return detail::airy_series(x);
}

} // namespace kpzlab
