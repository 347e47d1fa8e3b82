#ifndef POLYA_SPECFUN_HPP
#define POLYA_SPECFUN_HPP

#include <cmath>
#include <stdexcept>

namespace polya {

/// Regularized lower incomplete gamma function P(a, x), series for x < a+1
/// and continued fraction otherwise.
inline double gamma_p(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw std::domain_error("gamma_p: need a > 0, x >= 0");
    if (x == 0.0) return 0.0;
    const double lga = std::lgamma(a);
    if (x < a + 1.0) {
        // series expansion of P
        double ap = a;
        double del = 1.0 / a;
        double sum = del;
        for (int i = 0; i < 500; ++i) {
            ap += 1.0;
            del *= x / ap;
            sum += del;
            if (std::fabs(del) < std::fabs(sum) * 1e-16)
                return sum * std::exp(-x + a * std::log(x) - lga);
        }
        throw std::runtime_error("gamma_p: series did not converge");
    }
    // Lentz continued fraction for Q, then P = 1 - Q
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16)
            return 1.0 - std::exp(-x + a * std::log(x) - lga) * h;
    }
    throw std::runtime_error("gamma_p: continued fraction did not converge");
}

/// CDF of the Gamma(shape, unit scale) distribution.
inline double gamma_cdf(double shape, double x) {
    if (x <= 0.0) return 0.0;
    return gamma_p(shape, x);
}

/// Euler Beta function.
inline double beta_function(double x, double y) {
    return std::exp(std::lgamma(x) + std::lgamma(y) - std::lgamma(x + y));
}

/// Ratio Gamma(x + p) / Gamma(x) for x > 0, p >= 0 (fractional p allowed).
inline double gamma_ratio(double x, double p) {
    return std::exp(std::lgamma(x + p) - std::lgamma(x));
}

}  // namespace polya

#endif
