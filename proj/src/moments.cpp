#include "polya/moments.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "polya/dd.hpp"
#include "polya/errors.hpp"
#include "polya/series.hpp"
#include "polya/specfun.hpp"

namespace polya {

namespace {

// Core of the recursion over a scalar type (double or DD). Works on the EGF
// coefficients c_n = a_n/n! throughout; the n! scaling happens at the end.
template <typename T>
struct RecursionResult {
    std::vector<T> ca, cb;        // EGF coefficients
    std::vector<double> residual; // relative residual of both defining rows
};

template <typename T>
RecursionResult<T> run_recursion(const UrnParams& p, int N) {
    const int m = p.m, S = p.S, a = p.a, b = p.b, c = p.c, d = p.d;
    RecursionResult<T> r;
    r.ca.assign(static_cast<std::size_t>(N) + 1, T(0));
    r.cb.assign(static_cast<std::size_t>(N) + 1, T(0));
    r.residual.assign(static_cast<std::size_t>(N) + 1, 0.0);
    r.ca[0] = T(1);
    r.cb[0] = T(1);
    if (N >= 1) {
        r.ca[1] = T(1) * T(b) / T(S);
        r.cb[1] = -(T(1) * T(c) / T(S));
    }
    for (int n = 2; n <= N; ++n) {
        TruncatedSeries<T> F(static_cast<std::size_t>(n)), G(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            F[static_cast<std::size_t>(k)] = r.ca[static_cast<std::size_t>(k)];
            G[static_cast<std::size_t>(k)] = r.cb[static_cast<std::size_t>(k)];
        }
        // c_n zeroed: the T^n coefficients of the products below collect only
        // the known lower-order part.
        const TruncatedSeries<T> P1 = F.pow(static_cast<unsigned>(a + 1)) * G.pow(static_cast<unsigned>(b));
        const TruncatedSeries<T> P2 = F.pow(static_cast<unsigned>(c)) * G.pow(static_cast<unsigned>(d + 1));
        const T k1 = P1[static_cast<std::size_t>(n)];
        const T k2 = P2[static_cast<std::size_t>(n)];
        // (nm - a) ca_n - b cb_n = k1 ; -c ca_n + (nm - d) cb_n = k2
        const T m11 = T(n * m - a), m12 = T(-b), m21 = T(-c), m22 = T(n * m - d);
        const T det = m11 * m22 - m12 * m21;
        if (abs_double(det) == 0.0)
            throw SingularSystem("moment_recursion: nm I - R singular (not a large urn?)");
        r.ca[static_cast<std::size_t>(n)] = (k1 * m22 - m12 * k2) / det;
        r.cb[static_cast<std::size_t>(n)] = (m11 * k2 - k1 * m21) / det;

        // Residual of the full coefficient equations with the solved values
        // substituted back in.
        TruncatedSeries<T> Ff(static_cast<std::size_t>(n)), Gf(static_cast<std::size_t>(n));
        for (int k = 0; k <= n; ++k) {
            Ff[static_cast<std::size_t>(k)] = r.ca[static_cast<std::size_t>(k)];
            Gf[static_cast<std::size_t>(k)] = r.cb[static_cast<std::size_t>(k)];
        }
        const T lhs1 = T(1 + m * n) * r.ca[static_cast<std::size_t>(n)];
        const T lhs2 = T(1 + m * n) * r.cb[static_cast<std::size_t>(n)];
        const T rhs1 = (Ff.pow(static_cast<unsigned>(a + 1)) * Gf.pow(static_cast<unsigned>(b)))[static_cast<std::size_t>(n)];
        const T rhs2 = (Ff.pow(static_cast<unsigned>(c)) * Gf.pow(static_cast<unsigned>(d + 1)))[static_cast<std::size_t>(n)];
        const double scale = std::max({abs_double(lhs1), abs_double(lhs2), 1e-300});
        r.residual[static_cast<std::size_t>(n)] =
            std::max(abs_double(lhs1 - rhs1), abs_double(lhs2 - rhs2)) / scale;
    }
    return r;
}

}  // namespace

MomentTable moment_recursion(const UrnParams& p, int N) {
    if (!p.is_large()) throw DomainError("moment_recursion: urn must be LargeNonTriangular");
    if (N < 0) throw std::invalid_argument("moment_recursion: N must be >= 0");

    MomentTable t;
    t.params = p;
    t.order = N;

    auto fill = [&](const auto& rec, PrecisionMode mode) {
        t.precision_mode = mode;
        t.egf_a.resize(static_cast<std::size_t>(N) + 1);
        t.egf_b.resize(static_cast<std::size_t>(N) + 1);
        t.a_seq.resize(static_cast<std::size_t>(N) + 1);
        t.b_seq.resize(static_cast<std::size_t>(N) + 1);
        t.residuals = rec.residual;
        double factorial = 1.0;
        for (int n = 0; n <= N; ++n) {
            if (n > 0) factorial *= n;
            t.egf_a[static_cast<std::size_t>(n)] = to_double(rec.ca[static_cast<std::size_t>(n)]);
            t.egf_b[static_cast<std::size_t>(n)] = to_double(rec.cb[static_cast<std::size_t>(n)]);
            t.a_seq[static_cast<std::size_t>(n)] = t.egf_a[static_cast<std::size_t>(n)] * factorial;
            t.b_seq[static_cast<std::size_t>(n)] = t.egf_b[static_cast<std::size_t>(n)] * factorial;
        }
    };

    const auto rec = run_recursion<double>(p, N);
    bool escalate = N > 170;  // n! overflows double past 170
    for (double res : rec.residual)
        if (!(res <= 1e-12)) escalate = true;
    for (double v : rec.ca)
        if (!std::isfinite(v)) escalate = true;
    if (!escalate) {
        fill(rec, PrecisionMode::Double);
        return t;
    }
    const auto rec2 = run_recursion<DD>(p, N);
    fill(rec2, PrecisionMode::Extended);
    // Moments themselves may overflow a double for very large N even though
    // the EGF coefficients stay representable; callers should use egf_* then.
    return t;
}

double gamma_moment(const Rational& u_over_s, double p) {
    if (p == 0.0) return 1.0;
    return gamma_ratio(u_over_s.value(), p);
}

std::vector<double> wct_moments(const MomentTable& table, Composition init) {
    const int N = table.order;
    TruncatedSeries<double> F(static_cast<std::size_t>(N)), G(static_cast<std::size_t>(N));
    for (int k = 0; k <= N; ++k) {
        F[static_cast<std::size_t>(k)] = table.egf_a[static_cast<std::size_t>(k)];
        G[static_cast<std::size_t>(k)] = table.egf_b[static_cast<std::size_t>(k)];
    }
    const auto prod = F.pow(static_cast<unsigned>(init.red)) * G.pow(static_cast<unsigned>(init.black));
    std::vector<double> out(static_cast<std::size_t>(N) + 1);
    double factorial = 1.0;
    for (int n = 0; n <= N; ++n) {
        if (n > 0) factorial *= n;
        out[static_cast<std::size_t>(n)] = prod[static_cast<std::size_t>(n)] * factorial;
    }
    return out;
}

std::vector<double> wdt_moments(const MomentTable& table, Composition init) {
    if (init.total() <= 0) throw std::invalid_argument("wdt_moments: initial composition is zero");
    auto out = wct_moments(table, init);
    const Rational u_over_s(init.total(), table.params.S);
    const double sigma = table.params.sigma.value();
    for (int n = 1; n <= table.order; ++n)
        out[static_cast<std::size_t>(n)] /= gamma_moment(u_over_s, n * sigma);
    return out;
}

double joint_moment_q11(Composition init, const UrnParams& p) {
    const double alpha = static_cast<double>(init.red);
    const double beta = static_cast<double>(init.black);
    return (alpha + beta + p.m) * (p.b * alpha - p.c * beta) / (static_cast<double>(p.S) * p.S);
}

}  // namespace polya
