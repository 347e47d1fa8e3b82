#ifndef POLYA_STATS_HPP
#define POLYA_STATS_HPP

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "polya/specfun.hpp"

namespace polya {

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    std::size_t n = 0;
};

inline MeanStderr mean_stderr(const std::vector<double>& v) {
    MeanStderr r;
    r.n = v.size();
    if (r.n == 0) return r;
    double s = 0.0;
    for (double x : v) s += x;
    r.mean = s / static_cast<double>(r.n);
    double ss = 0.0;
    for (double x : v) ss += (x - r.mean) * (x - r.mean);
    if (r.n > 1) r.stderr_ = std::sqrt(ss / (static_cast<double>(r.n) * (static_cast<double>(r.n) - 1)));
    return r;
}

/// Mean and stderr of x^k over the sample.
inline MeanStderr moment_stderr(const std::vector<double>& v, int k) {
    std::vector<double> powers(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) powers[i] = std::pow(v[i], k);
    return mean_stderr(powers);
}

/// Kolmogorov distribution tail Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
inline double kolmogorov_q(double lambda) {
    if (lambda < 0.2) return 1.0;
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        if (term < 1e-12) break;
        sign = -sign;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

struct KSResult {
    double statistic = 0.0;
    double p_value = 0.0;
};

/// One-sample KS test against a continuous CDF; p-value by the asymptotic
/// Kolmogorov law with the Stephens small-sample adjustment.
inline KSResult ks_test(std::vector<double> sample, const std::function<double(double)>& cdf) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max(d, std::abs((static_cast<double>(i) + 1.0) / n - f));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    const double sn = std::sqrt(n);
    KSResult r;
    r.statistic = d;
    r.p_value = kolmogorov_q((sn + 0.12 + 0.11 / sn) * d);
    return r;
}

inline KSResult ks_test_gamma(const std::vector<double>& sample, double shape) {
    return ks_test(sample, [shape](double x) { return gamma_cdf(shape, x); });
}

/// Pearson correlation coefficient.
inline double correlation(const std::vector<double>& x, const std::vector<double>& y) {
    const std::size_t n = std::min(x.size(), y.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
        syy += (y[i] - my) * (y[i] - my);
    }
    return sxy / std::sqrt(sxx * syy);
}

}  // namespace polya

#endif
