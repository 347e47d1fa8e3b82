#include "polya/params.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polya/errors.hpp"

namespace polya {

UrnParams validate_params(int m, int S, int b) {
    if (m <= 0 || S <= 0 || b <= 0)
        throw NonBalancedOrNegativeEntry("validate_params: m, S, b must be positive integers");
    UrnParams p;
    p.m = m;
    p.S = S;
    p.b = b;
    p.a = S - b;
    p.c = S - m - b;
    p.d = m + b;
    if (p.a < 0 || p.c < 0) {
        std::ostringstream os;
        os << "replacement matrix has a negative entry: a=" << p.a << " c=" << p.c;
        throw NonBalancedOrNegativeEntry(os.str());
    }
    p.sigma = Rational(m, S);
    const bool large = (m + 2 <= S) && (S <= 2 * m - 1) && (1 <= b) && (b <= S - m - 1);
    p.validity_class = large ? ValidityClass::LargeNonTriangular : ValidityClass::SimulationOnly;
    return p;
}

std::string hyp_violation(int m, int S, int b) {
    std::ostringstream os;
    if (!(m + 2 <= S)) os << "m+2 <= S fails (m=" << m << ", S=" << S << "); ";
    if (!(S <= 2 * m - 1)) os << "S <= 2m-1 fails (S=" << S << ", 2m-1=" << 2 * m - 1 << "); ";
    if (!(1 <= b)) os << "1 <= b fails (b=" << b << "); ";
    if (!(b <= S - m - 1)) os << "b <= S-m-1 fails (b=" << b << ", S-m-1=" << S - m - 1 << "); ";
    return os.str();
}

namespace {

// Generalized binomial coefficient binom(x, n) by the downward recurrence,
// avoiding Gamma-function overflow.
double next_binom(double binom_prev, double x, int n) {
    return binom_prev * (x - (n - 1)) / n;
}

}  // namespace

double c0_series(int m, int S, int b, double tol, std::size_t max_terms) {
    const double x = static_cast<double>(b) / m;
    const int a = S - b;
    double sum = 0.0;
    double comp = 0.0;  // Kahan compensation
    double binom = 1.0;
    std::size_t n = 0;
    while (n < max_terms) {
        double pair = 0.0;
        for (int k = 0; k < 2 && n < max_terms; ++k, ++n) {
            if (n > 0) binom = next_binom(binom, x, static_cast<int>(n));
            const double term =
                binom * (1.0 / (a + static_cast<double>(m) * n) + 1.0 / (static_cast<double>(m) * n - S));
            pair += term;
        }
        const double y = pair - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        if (n >= 4 && std::abs(pair) < tol * std::abs(sum)) return sum;
    }
    throw ConvergenceFailure("c0_series: pair stopping rule not met within term cap");
}

double c0_from_beta(int m, int S, int b) {
    const int a = S - b;
    const int d = m + b;
    const double beta = std::exp(std::lgamma(static_cast<double>(a) / m) +
                                 std::lgamma(static_cast<double>(d) / m) -
                                 std::lgamma(static_cast<double>(a + d) / m));
    const double abs_i1 = beta / m;
    const double pi = std::numbers::pi;
    const double ratio = std::sin(pi * (1.0 + static_cast<double>(b) / m)) /
                         std::sin(pi * (1.0 + static_cast<double>(S) / m));
    // For S/2 < m < S the principal sines make the ratio negative while
    // C0 < 0, so the relation holds with |ratio|.
    return -std::abs(ratio) * abs_i1;
}

SpectralConstants spectral_constants(const UrnParams& p) {
    if (!p.is_large())
        throw DomainError("spectral_constants: urn must be LargeNonTriangular");
    SpectralConstants sc;
    sc.params = p;
    const double m = p.m, S = p.S;
    sc.kappa = std::pow(S / (m * (S - m)), 1.0 / m);
    const double pi = std::numbers::pi;
    sc.K = std::polar(sc.kappa, -pi / (2.0 * m));

    auto i1_of = [&](int off) {
        const int a = p.S - off;
        const int d = p.m + off;
        const double beta = std::exp(std::lgamma(static_cast<double>(a) / p.m) +
                                     std::lgamma(static_cast<double>(d) / p.m) -
                                     std::lgamma(static_cast<double>(a + d) / p.m));
        return std::polar(beta / p.m, -static_cast<double>(a) * pi / p.m);
    };
    sc.I1_b = i1_of(p.b);
    sc.I1_c = i1_of(p.c);

    sc.C0_b = c0_series(p.m, p.S, p.b);
    sc.C0_c = c0_series(p.m, p.S, p.c);
    if (!(sc.C0_b < 0.0) || !(sc.C0_c < 0.0))
        throw ConvergenceFailure("spectral_constants: C0 must be negative");

    const double kappaS = std::pow(sc.kappa, S);
    sc.rho_b = std::pow(S * std::abs(sc.C0_b) / kappaS, -m / S);
    sc.rho_c = std::pow(S * std::abs(sc.C0_c) / kappaS, -m / S);
    return sc;
}

}  // namespace polya
