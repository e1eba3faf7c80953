// Empirical distributions, Kolmogorov-Smirnov distance, moment estimators
// with jackknife standard errors, and a monotone cubic interpolator for
// tabulated CDFs.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace kpzlab {

struct EmpiricalDistribution {
    std::vector<double> samples;  // sorted ascending

    static EmpiricalDistribution from_samples(std::vector<double> raw) {
        if (raw.empty()) throw std::invalid_argument("EmpiricalDistribution: n >= 1");
        std::sort(raw.begin(), raw.end());
        return {std::move(raw)};
    }

    std::size_t n() const { return samples.size(); }

    // Right-continuous empirical CDF.
    double cdf(double x) const {
        return static_cast<double>(std::upper_bound(samples.begin(), samples.end(), x) -
                                   samples.begin()) /
               static_cast<double>(samples.size());
    }
};

// sup_x |F_emp(x) - F(x)| with both one-sided jumps at each sample point.
inline double ks_distance(const EmpiricalDistribution& emp,
                          const std::function<double(double)>& cdf) {
    const double n = static_cast<double>(emp.n());
    double d = 0.0;
    for (std::size_t i = 0; i < emp.samples.size(); ++i) {
        const double f = cdf(emp.samples[i]);
        d = std::max(d, std::max((static_cast<double>(i) + 1.0) / n - f,
                                 f - static_cast<double>(i) / n));
    }
    return d;
}

// Asymptotic Kolmogorov critical value at level alpha.
inline double ks_critical_value(std::size_t n, double alpha) {
    if (n == 0 || !(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ks_critical_value: n >= 1, alpha in (0,1)");
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) / std::sqrt(static_cast<double>(n));
}

struct Moments {
    double mean = 0.0, variance = 0.0, skewness = 0.0;
    double se_mean = 0.0, se_variance = 0.0, se_skewness = 0.0;
};

// Unbiased mean/variance, standardized third moment; standard errors by
// delete-one jackknife computed from power sums.
inline Moments moments(const EmpiricalDistribution& emp) {
    const std::size_t n = emp.n();
    const double dn = static_cast<double>(n);
    double s1 = 0.0, s2 = 0.0, s3 = 0.0;
    for (double x : emp.samples) {
        s1 += x;
        s2 += x * x;
        s3 += x * x * x;
    }
    auto stat = [](double S1, double S2, double S3, double k) {
        const double mu = S1 / k;
        const double m2 = S2 / k - mu * mu;
        const double m3 = S3 / k - 3.0 * mu * S2 / k + 2.0 * mu * mu * mu;
        const double var = k > 1.0 ? m2 * k / (k - 1.0) : 0.0;
        const double skw = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
        return std::array<double, 3>{mu, var, skw};
    };
    const auto full = stat(s1, s2, s3, dn);
    Moments m;
    m.mean = full[0];
    m.variance = full[1];
    m.skewness = full[2];
    if (n < 2) return m;
    double q[3] = {0.0, 0.0, 0.0};  // sums of squared deviations of leave-one-out stats
    double bar[3] = {0.0, 0.0, 0.0};
    std::vector<std::array<double, 3>> loo(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double x = emp.samples[i];
        loo[i] = stat(s1 - x, s2 - x * x, s3 - x * x * x, dn - 1.0);
        for (int c = 0; c < 3; ++c) bar[c] += loo[i][c];
    }
    for (int c = 0; c < 3; ++c) bar[c] /= dn;
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) q[c] += (loo[i][c] - bar[c]) * (loo[i][c] - bar[c]);
    const double fac = (dn - 1.0) / dn;
    m.se_mean = std::sqrt(fac * q[0]);
    m.se_variance = std::sqrt(fac * q[1]);
    m.se_skewness = std::sqrt(fac * q[2]);
    return m;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

inline double lag1_autocorrelation(const std::vector<double>& xs) {
    const std::size_t n = xs.size();
    if (n < 2) throw std::invalid_argument("lag1_autocorrelation: n >= 2");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(n);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = xs[i] - mean;
        den += d * d;
        if (i + 1 < n) num += d * (xs[i + 1] - mean);
    }
    return den > 0.0 ? num / den : 0.0;
}

// Fritsch-Carlson monotone cubic interpolant; used for tabulated CDFs so
// interpolation never breaks monotonicity. Outside the table the boundary
// values are extended.
class MonotoneCubic {
public:
    MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
        : x_(std::move(xs)), y_(std::move(ys)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n) throw std::invalid_argument("MonotoneCubic: need n >= 2");
        m_.resize(n, 0.0);
        std::vector<double> d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double h = x_[i + 1] - x_[i];
            if (!(h > 0.0)) throw std::invalid_argument("MonotoneCubic: xs must increase");
            d[i] = (y_[i + 1] - y_[i]) / h;
        }
        m_[0] = d[0];
        m_[n - 1] = d[n - 2];
        for (std::size_t i = 1; i + 1 < n; ++i)
            m_[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            if (d[i] == 0.0) {
                m_[i] = m_[i + 1] = 0.0;
                continue;
            }
            const double a = m_[i] / d[i], b = m_[i + 1] / d[i];
            const double s = a * a + b * b;
            if (s > 9.0) {
                const double t = 3.0 / std::sqrt(s);
                m_[i] = t * a * d[i];
                m_[i + 1] = t * b * d[i];
            }
        }
    }

    double operator()(double x) const {
        if (x <= x_.front()) return y_.front();
        if (x >= x_.back()) return y_.back();
        const std::size_t i =
            static_cast<std::size_t>(std::upper_bound(x_.begin(), x_.end(), x) - x_.begin()) - 1;
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return (2.0 * t3 - 3.0 * t2 + 1.0) * y_[i] + (t3 - 2.0 * t2 + t) * h * m_[i] +
               (-2.0 * t3 + 3.0 * t2) * y_[i + 1] + (t3 - t2) * h * m_[i + 1];
    }

private:
    std::vector<double> x_, y_, m_;
};

} // namespace kpzlab
