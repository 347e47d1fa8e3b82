#include "polya/abelian.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "polya/errors.hpp"
#include "polya/params.hpp"
#include "polya/quadrature.hpp"
#include "polya/specfun.hpp"

namespace polya {

namespace {

constexpr double kPi = std::numbers::pi;

Complex int_pow(Complex z, long e) {
    if (e < 0) return 1.0 / int_pow(z, -e);
    Complex r = 1.0;
    while (e > 0) {
        if (e & 1) r *= z;
        e >>= 1;
        if (e > 0) z *= z;
    }
    return r;
}

// Kahan accumulator for complex terms.
struct KahanC {
    Complex sum{0.0, 0.0};
    Complex comp{0.0, 0.0};
    void add(Complex term) {
        const Complex y = term - comp;
        const Complex t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
};

}  // namespace

AbelianIntegral::AbelianIntegral(int m, int S, int b) : m_(m), S_(S), b_(b), a_(S - b) {
    if (!(S >= 5 && 2 * m > S && m < S && b >= 1 && 2 * b < S)) {
        std::ostringstream os;
        os << "AbelianIntegral: parameters (m=" << m << ", S=" << S << ", b=" << b
           << ") violate S>=5, S/2<m<S, 1<=b<S/2";
        throw DomainError(os.str());
    }
    x_ = static_cast<double>(b_) / m_;
    C0_ = c0_series(m_, S_, b_);
    const int d = m_ + b_;
    const double beta = beta_function(static_cast<double>(a_) / m_, static_cast<double>(d) / m_);
    I1_ = std::polar(beta / m_, -static_cast<double>(a_) * kPi / m_);
}

bool AbelianIntegral::in_sector(Complex z) const {
    if (z == 0.0) return false;
    return std::abs(std::arg(z)) < kPi / m_ - 1e-14;
}

Complex AbelianIntegral::series_infinity(Complex z, double tol, std::size_t max_terms) const {
    const Complex zi = 1.0 / z;
    const Complex step = int_pow(zi, m_);
    Complex zpow = int_pow(zi, a_);
    KahanC acc;
    double binom = 1.0;
    std::size_t n = 0;
    while (n < max_terms) {
        Complex pair{0.0, 0.0};
        for (int k = 0; k < 2; ++k, ++n) {
            if (n > 0) binom *= (x_ - static_cast<double>(n - 1)) / static_cast<double>(n);
            pair += binom * zpow / (a_ + static_cast<double>(m_) * static_cast<double>(n));
            zpow *= step;
        }
        acc.add(pair);
        // tail estimate: pairs decay like n^{-3-b/m} at |z|=1 and geometrically
        // beyond, so |pair| * n bounds the remaining sum up to a constant.
        if (n >= 8 && std::abs(pair) * static_cast<double>(n) < tol * std::abs(acc.sum)) return acc.sum;
        if (std::abs(zpow) == 0.0) return acc.sum;
    }
    throw ConvergenceFailure("series_infinity: term cap reached before tolerance");
}

Complex AbelianIntegral::series_laurent(Complex z, double tol, std::size_t max_terms) const {
    const Complex zi = 1.0 / z;
    const Complex head = int_pow(zi, S_) / static_cast<double>(S_) +
                         static_cast<double>(b_) / (static_cast<double>(m_) * (S_ - m_)) * int_pow(zi, S_ - m_) +
                         C0_;
    const Complex step = int_pow(z, m_);
    Complex zpow = int_pow(z, 2 * m_ - S_);
    KahanC acc;
    double binom = x_ * (x_ - 1.0) / 2.0;  // binom(b/m, 2)
    std::size_t n = 2;
    while (n < max_terms) {
        Complex pair{0.0, 0.0};
        for (int k = 0; k < 2; ++k, ++n) {
            if (n > 2) binom *= (x_ - static_cast<double>(n - 1)) / static_cast<double>(n);
            pair += binom * zpow / (static_cast<double>(m_) * static_cast<double>(n) - S_);
            zpow *= step;
        }
        acc.add(pair);
        if (n >= 10 && std::abs(pair) * static_cast<double>(n) < tol * std::max(std::abs(head - acc.sum), 1e-30))
            return head - acc.sum;
        if (std::abs(zpow) == 0.0) return head - acc.sum;
    }
    throw ConvergenceFailure("series_laurent: term cap reached before tolerance");
}

Complex AbelianIntegral::quadrature(Complex z) const {
    // I(z) = z^{-S} int_1^T (1+(tz)^m)^{b/m} t^{-S-1} dt + I(Tz), with T set
    // so the remaining series at Tz converges fast.
    const double T = std::max(2.0, 40.0 / std::abs(z));
    const double exponent = x_;
    const int S = S_;
    const int m = m_;
    auto f = [&](double t) -> Complex {
        const Complex w = 1.0 + int_pow(t * z, m);
        return std::exp(exponent * std::log(w)) * std::pow(t, -(S + 1));
    };
    const Complex integral = integrate_gk(f, 1.0, T, 1e-15, 5e-14);
    return int_pow(1.0 / z, S_) * integral + series_infinity(T * z, 1e-14);
}

Complex AbelianIntegral::eval_sector(Complex z) const {
    const double r = std::abs(z);
    if (r >= 1.05) {
        return series_infinity(z);
    } else if (r <= 0.95) {
        return series_laurent(z);
    }
    return quadrature(z);
}

Complex AbelianIntegral::eval_I(Complex z) const {
    if (z == 0.0) throw DomainError("eval_I: z = 0");
    const double theta = std::arg(z);
    const int k = static_cast<int>(std::lround(theta * m_ / (2.0 * kPi)));
    const Complex rot = std::polar(1.0, -2.0 * kPi * k / m_);
    const Complex zs = z * rot;
    if (!in_sector(zs))
        throw DomainError("eval_I: z lies on an excluded ray of O_m");
    const Complex val = eval_sector(zs);
    // I(z) = omega^{-S k} I(zs) with omega = e^{2 pi i/m}
    return std::polar(1.0, -2.0 * kPi * S_ * k / m_) * val;
}

Complex AbelianIntegral::eval_I_prime(Complex z) const {
    if (z == 0.0) throw DomainError("eval_I_prime: z = 0");
    const Complex zm = int_pow(z, m_);
    const Complex base = 1.0 + zm;
    if (base.imag() == 0.0 && base.real() <= 0.0)
        throw DomainError("eval_I_prime: z lies on an excluded ray of O_m");
    return -std::exp(x_ * std::log(base)) / int_pow(z, S_ + 1);
}

Complex AbelianIntegral::boundary_lower(double r) const {
    if (r < 1.0) throw DomainError("boundary_lower: needs r >= 1");
    const double L = std::pow(r, -m_);
    const int c = S_ - m_ - b_;
    // int_0^L (1-u)^{b/m} u^{c/m} du. Both endpoints flatten to polynomial
    // integrands because m (b/m) and m (c/m) are integers: u = t^m near 0,
    // 1-u = s^m near 1.
    const double split = std::min(L, 0.5);
    auto g0 = [&](double t) -> double {
        return static_cast<double>(m_) * std::pow(t, c + m_ - 1) *
               std::pow(1.0 - std::pow(t, m_), x_);
    };
    double integral = integrate_gk(g0, 0.0, std::pow(split, 1.0 / m_), 1e-15, 1e-14);
    if (L > split) {
        auto g1 = [&](double s) -> double {
            const double sm = std::pow(s, m_);
            return static_cast<double>(m_) * std::pow(s, b_ + m_ - 1) *
                   std::pow(1.0 - sm, static_cast<double>(c) / m_);
        };
        integral += integrate_gk(g1, std::pow(1.0 - L, 1.0 / m_), std::pow(0.5, 1.0 / m_), 1e-15,
                                 1e-14);
    }
    return std::polar(1.0, -kPi * a_ / m_) * (integral / m_);
}

Complex AbelianIntegral::boundary_upper(double r) const {
    if (r > 1.0) throw DomainError("boundary_upper: needs r <= 1");
    const double X = std::pow(r, -m_);
    const int c = S_ - m_ - b_;
    // int_1^X (u-1)^{b/m} u^{c/m} du with u = 1 + t^m, polynomially smooth
    double integral = 0.0;
    if (X > 1.0) {
        auto g = [&](double t) -> double {
            const double tm = std::pow(t, m_);
            return static_cast<double>(m_) * std::pow(t, b_ + m_ - 1) *
                   std::pow(1.0 + tm, static_cast<double>(c) / m_);
        };
        integral = integrate_gk(g, 0.0, std::pow(X - 1.0, 1.0 / m_), 1e-15, 1e-14);
    }
    return I1_ + std::polar(1.0, -kPi * S_ / m_) * (integral / m_);
}

Complex AbelianIntegral::puiseux_seed(Complex w) const {
    const Complex lw = std::log(1.0 / (static_cast<double>(S_) * w));
    const Complex t1 = std::exp(lw / static_cast<double>(S_));
    const Complex t2 = std::exp(lw * ((static_cast<double>(m_) + 1.0) / S_));
    const Complex t3 = std::exp(lw * ((static_cast<double>(S_) + 1.0) / S_));
    return t1 + static_cast<double>(b_) / (static_cast<double>(m_) * (S_ - m_)) * t2 + C0_ * t3;
}

Complex AbelianIntegral::newton(Complex w, Complex z0) const {
    Complex z = z0;
    Complex r = eval_I(z) - w;
    // drive the residual to its rounding floor so the z-space error stays
    // small even where |I'| is tiny (large |z|)
    const double tol_hard = 1e-15 * std::abs(w);
    const double tol_soft = 1e-12 * std::max(1.0, std::abs(w));
    for (int iter = 0; iter < 80; ++iter) {
        if (std::abs(r) <= tol_hard) return z;
        const Complex step = r / eval_I_prime(z);
        double lambda = 1.0;
        bool accepted = false;
        for (int h = 0; h < 30; ++h) {
            const Complex zn = z - lambda * step;
            if (zn != 0.0 && in_sector(zn) && zn.imag() > -1e-13 * std::abs(zn)) {
                const Complex rn = eval_I(zn) - w;
                if (std::abs(rn) < std::abs(r)) {
                    z = zn;
                    r = rn;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted) {
            if (std::abs(r) <= tol_soft) return z;  // stalled at the rounding floor
            throw NewtonDivergence("eval_J: newton stalled", z);
        }
    }
    if (std::abs(r) <= tol_soft) return z;
    throw NewtonDivergence("eval_J: newton did not converge", z);
}

Complex AbelianIntegral::invert_lower(Complex w) const {
    const double anchor_radius = 10.0;
    const double r = std::abs(w);
    if (r >= anchor_radius) return newton(w, puiseux_seed(w));
    // path continuation along the ray of w from the anchor radius inward
    const Complex dir = w / r;
    double s = anchor_radius;
    Complex z = newton(s * dir, puiseux_seed(s * dir));
    while (s > r) {
        s = std::max(r, 0.55 * s);
        z = newton(s * dir, z);
    }
    return z;
}

Complex AbelianIntegral::eval_J(Complex w) const {
    if (w.imag() == 0.0 && w.real() <= 0.0)
        throw DomainError("eval_J: w on (-inf, 0]; use eval_J_boundary");
    if (w.imag() > 0.0) return std::conj(invert_lower(std::conj(w)));
    return invert_lower(w);
}

Complex AbelianIntegral::eval_J_boundary(double x, BoundarySide side) const {
    if (!(x < 0.0)) throw DomainError("eval_J_boundary: needs x < 0");
    // approach from the lower half-plane; the value there continues
    // analytically across the cut, so offsets shrink fast and a Richardson
    // table in delta converges.
    constexpr int levels = 5;
    const double delta0 = 4e-3 * (1.0 + std::abs(x));
    Complex vals[levels];
    double deltas[levels];
    for (int j = 0; j < levels; ++j) {
        deltas[j] = delta0 * std::pow(0.25, j);
        vals[j] = invert_lower(Complex(x, -deltas[j]));
    }
    // Neville extrapolation to delta = 0
    Complex tab[levels];
    for (int j = 0; j < levels; ++j) tab[j] = vals[j];
    for (int k = 1; k < levels; ++k)
        for (int j = levels - 1; j >= k; --j)
            tab[j] = tab[j] + (tab[j] - tab[j - 1]) * (deltas[j] / (deltas[j - k] - deltas[j]));
    const Complex extrap = tab[levels - 1];
    // polish on the boundary itself (the inverse is a local biholomorphism
    // around J(x-), which lies strictly inside the sector)
    Complex polished;
    try {
        polished = newton(Complex(x, 0.0), extrap);
    } catch (const NewtonDivergence&) {
        throw ConvergenceFailure("eval_J_boundary: polish step failed to converge");
    }
    if (std::abs(polished - extrap) > 1e-9 * (1.0 + std::abs(polished)))
        throw ConvergenceFailure("eval_J_boundary: extrapolation did not stabilize to 1e-9");
    return side == BoundarySide::minus ? polished : std::conj(polished);
}

}  // namespace polya
