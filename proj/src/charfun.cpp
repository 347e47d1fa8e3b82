#include "polya/charfun.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "polya/errors.hpp"
#include "polya/specfun.hpp"

namespace polya {

namespace {

constexpr double kPi = std::numbers::pi;
using C = std::complex<double>;

C int_pow(C z, long e) {
    if (e < 0) return 1.0 / int_pow(z, -e);
    C r = 1.0;
    while (e > 0) {
        if (e & 1) r *= z;
        e >>= 1;
        if (e > 0) z *= z;
    }
    return r;
}

}  // namespace

CharFunEvaluator::CharFunEvaluator(const UrnParams& p)
    : params_(p),
      constants_(spectral_constants(p)),
      ab_b_(p.m, p.S, p.b),
      ab_c_(p.m, p.S, p.c) {}

C CharFunEvaluator::phi(C z, bool use_c) const {
    if (z == 0.0) return 1.0;
    const AbelianIntegral& ab = use_c ? ab_c_ : ab_b_;
    const double C0 = use_c ? constants_.C0_c : constants_.C0_b;
    const double kappa = constants_.kappa;
    const double m = params_.m, S = params_.S;
    const C logz = std::log(z);
    const C z_m1m = std::exp(-logz / m);
    const C z_mSm = std::exp(-logz * (S / m));
    const C w = C0 + std::pow(kappa, S) / S * z_mSm;
    return kappa * z_m1m * ab.eval_J(w);
}

C CharFunEvaluator::F(double x) const {
    if (x == 0.0) return 1.0;
    return phi(C(0.0, x), false);
}

C CharFunEvaluator::G(double x) const {
    if (x == 0.0) return 1.0;
    return phi(C(0.0, -x), true);
}

C CharFunEvaluator::F_prime(double x) const {
    if (x == 0.0) throw DomainError("F_prime: x = 0 (limit value is i b/S)");
    const C f = F(x), g = G(x);
    return f * (int_pow(f, params_.a) * int_pow(g, params_.b) - 1.0) / (params_.m * x);
}

C CharFunEvaluator::G_prime(double x) const {
    if (x == 0.0) throw DomainError("G_prime: x = 0 (limit value is -i c/S)");
    const C f = F(x), g = G(x);
    return g * (int_pow(f, params_.c) * int_pow(g, params_.d) - 1.0) / (params_.m * x);
}

namespace {

// phi'(z) through J'(w) = 1/I'(J(w)); shared by both chain derivatives.
C phi_prime(const AbelianIntegral& ab, double C0, double kappa, int m, int S, C z) {
    const C logz = std::log(z);
    const double md = m, Sd = S;
    const C z_m1m = std::exp(-logz / md);
    const C z_mSm = std::exp(-logz * (Sd / md));
    const double kS = std::pow(kappa, Sd);
    const C w = C0 + kS / Sd * z_mSm;
    const C J = ab.eval_J(w);
    const C Jp = 1.0 / ab.eval_I_prime(J);
    return kappa * (-z_m1m / (md * z) * J + z_m1m * Jp * (-kS / md) * z_mSm / z);
}

}  // namespace

C CharFunEvaluator::F_prime_chain(double x) const {
    if (x == 0.0) throw DomainError("F_prime_chain: x = 0");
    return C(0.0, 1.0) *
           phi_prime(ab_b_, constants_.C0_b, constants_.kappa, params_.m, params_.S, C(0.0, x));
}

C CharFunEvaluator::G_prime_chain(double x) const {
    if (x == 0.0) throw DomainError("G_prime_chain: x = 0");
    return C(0.0, -1.0) *
           phi_prime(ab_c_, constants_.C0_c, constants_.kappa, params_.m, params_.S, C(0.0, -x));
}

C CharFunEvaluator::charfun_general(double x, Composition init) const {
    if (init.total() <= 0) throw DomainError("charfun_general: initial composition is zero");
    if (x == 0.0) return 1.0;
    return int_pow(F(x), init.red) * int_pow(G(x), init.black);
}

C CharFunEvaluator::charfun_general_prime(double x, Composition init) const {
    if (init.total() <= 0) throw DomainError("charfun_general_prime: initial composition is zero");
    if (x == 0.0)
        return C(0.0, (params_.b * static_cast<double>(init.red) -
                       params_.c * static_cast<double>(init.black)) /
                          params_.S);
    const C f = F(x), g = G(x);
    const C fp = f * (int_pow(f, params_.a) * int_pow(g, params_.b) - 1.0) / (params_.m * x);
    const C gp = g * (int_pow(f, params_.c) * int_pow(g, params_.d) - 1.0) / (params_.m * x);
    const C fa = int_pow(f, init.red);
    const C gb = int_pow(g, init.black);
    C result = 0.0;
    if (init.red > 0) result += static_cast<double>(init.red) * fa / f * fp * gb;
    if (init.black > 0) result += static_cast<double>(init.black) * gb / g * gp * fa;
    return result;
}

C CharFunEvaluator::tail_constant() const {
    // K J(C0-): the phase of K rides along with the x^{-1/m} prefactor
    return constants_.K * ab_b_.eval_J_boundary(constants_.C0_b, BoundarySide::minus);
}

OdeReport CharFunEvaluator::ode_crosscheck(const std::vector<double>& xs) const {
    OdeReport rep;
    const int m = params_.m, S = params_.S, a = params_.a, b = params_.b, c = params_.c,
              d = params_.d;
    rep.first_integral_target = C(0.0, static_cast<double>(m) * (b + c) / S);
    for (double x : xs) {
        if (!(x > 0.0)) throw DomainError("ode_crosscheck: grid must be positive");
        const C f = F(x), g = G(x);
        const C fp = F_prime_chain(x), gp = G_prime_chain(x);
        const C rhs1 = int_pow(f, a + 1) * int_pow(g, b);
        const C rhs2 = int_pow(f, c) * int_pow(g, d + 1);
        const double s1 = std::max({std::abs(rhs1), std::abs(f), 1e-300});
        const double s2 = std::max({std::abs(rhs2), std::abs(g), 1e-300});
        const double r1 = std::abs(f + static_cast<double>(m) * x * fp - rhs1) / s1;
        const double r2 = std::abs(g + static_cast<double>(m) * x * gp - rhs2) / s2;
        const double r = std::max(r1, r2);
        if (r > rep.max_ode_residual) {
            rep.max_ode_residual = r;
            rep.worst_x_ode = x;
        }
        // first integral of the monomial system, reconstructed through the
        // change of variables f(w) = x^{1/m} F(x), w = x^{-S/m}
        const double x1m = std::pow(x, 1.0 / m);
        const C fmono = x1m * f, gmono = x1m * g;
        const C fi = 1.0 / int_pow(gmono, m) - 1.0 / int_pow(fmono, m);
        const double dev = std::abs(fi - rep.first_integral_target) / std::abs(rep.first_integral_target);
        if (dev > rep.max_first_integral_dev) {
            rep.max_first_integral_dev = dev;
            rep.worst_x_integral = x;
        }
    }
    return rep;
}

namespace {

// int_0^D e^{-i tau x} dtau and int_0^D tau e^{-i tau x} dtau, Taylor fallback
// for small phase.
void filon_weights(double D, double x, C& e0, C& e1) {
    const double theta = D * x;
    if (std::abs(theta) < 1e-3) {
        const C it(0.0, -theta);
        // (1 - e^{-i theta})/(i theta) and int_0^1 s e^{-i theta s} ds
        const C gg = 1.0 + it / 2.0 + it * it / 6.0 + it * it * it / 24.0;
        const C hh = 0.5 + it / 3.0 + it * it / 8.0 + it * it * it / 30.0;
        e0 = D * gg;
        e1 = D * D * hh;
        return;
    }
    const C eith = std::polar(1.0, -theta);
    const C ix(0.0, x);
    e0 = (1.0 - eith) / ix;
    e1 = D * D * (C(0.0, 1.0) * eith / theta - (1.0 - eith) / (theta * theta));
}

}  // namespace

DensityGrid CharFunEvaluator::density_fourier(const std::vector<double>& grid, double T, double tol,
                                              Composition init) const {
    if (T <= 0.0) throw DomainError("density_fourier: T must be positive");
    for (double x : grid)
        if (x == 0.0) throw DomainError("density_fourier: grid contains 0 (density diverges there)");

    // node table for Phi' on [0, T]: uniform where the CF still has structure,
    // geometric in the power-law tail
    std::vector<double> nodes;
    const double t_lin = std::min(25.0, T);
    const double h0 = 0.02;
    for (double t = 0.0; t < t_lin; t += h0) nodes.push_back(t);
    double t = t_lin;
    while (t < T) {
        nodes.push_back(t);
        t *= 1.02;
    }
    nodes.push_back(T);

    std::vector<C> fp(nodes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16)
#endif
    for (std::size_t i = 0; i < nodes.size(); ++i)
        fp[i] = charfun_general_prime(nodes[i], init);

    // local power of the tail |Phi'| ~ t^q near T, for the post-IBP error term
    const std::size_t M = nodes.size();
    const double q_tail = std::log(std::abs(fp[M - 1]) / std::abs(fp[M - 2])) /
                          std::log(nodes[M - 1] / nodes[M - 2]);

    auto invert_at = [&](double x, std::size_t stride) -> double {
        C total = 0.0;
        std::size_t i = 0;
        while (i + stride < M) {
            const std::size_t j = std::min(i + stride, M - 1);
            const double t0 = nodes[i], t1 = nodes[j];
            const double D = t1 - t0;
            C e0, e1;
            filon_weights(D, x, e0, e1);
            const C slope = (fp[j] - fp[i]) / D;
            total += std::polar(1.0, -t0 * x) * (fp[i] * e0 + slope * e1);
            i = j;
        }
        // integration-by-parts boundary term for the truncated tail
        total += std::polar(1.0, -T * x) * fp[M - 1] / C(0.0, x);
        return total.imag() / (kPi * x);
    };

    DensityGrid out;
    out.method = "fourier";
    out.truncation_T = T;
    out.tolerance = tol;
    out.params = params_;
    out.init = init;
    out.points = grid;
    out.values.resize(grid.size());
    out.errors.resize(grid.size());
    auto tail_estimate = [&](double x) {
        return std::abs(fp[M - 1]) * std::abs(q_tail) / nodes[M - 1] / (x * x) /
               (kPi * std::abs(x));
    };
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double x = grid[k];
        const double fine = invert_at(x, 1);
        const double coarse = invert_at(x, 2);
        out.values[k] = fine;
        out.errors[k] = std::abs(fine - coarse) / 3.0 + tail_estimate(x);
    }
    double worst_tail = 0.0;
    for (double x : grid) worst_tail = std::max(worst_tail, tail_estimate(x));
    if (worst_tail > tol)
        throw TailBoundExceeded("density_fourier: truncation error estimate above tolerance");
    return out;
}

DensityGrid CharFunEvaluator::density_mixture(const SampleSet& wdt_samples,
                                              const std::vector<double>& grid) const {
    if (wdt_samples.kind != SampleKind::WDT)
        throw DomainError("density_mixture: samples must be of kind WDT");
    for (double x : grid)
        if (x == 0.0) throw DomainError("density_mixture: grid contains 0");

    const std::int64_t u = wdt_samples.init.total();
    const UrnParams& p = wdt_samples.params;
    const double sigma = p.sigma.value();
    const double u_over_s = static_cast<double>(u) / p.S;
    const double u_over_m = static_cast<double>(u) / p.m;
    const double scale = wdt_limit_scale(p, u);
    const double norm = 1.0 / (sigma * std::exp(std::lgamma(u_over_s)));

    std::vector<double> log_pos, log_neg;
    for (double v : wdt_samples.values) {
        const double vp = v * scale;
        if (vp > 0.0)
            log_pos.push_back(std::log(vp));
        else if (vp < 0.0)
            log_neg.push_back(std::log(-vp));
    }

    DensityGrid out;
    out.method = "mixture";
    out.params = p;
    out.init = wdt_samples.init;
    out.points = grid;
    out.values.assign(grid.size(), 0.0);
    const double n_total = static_cast<double>(wdt_samples.values.size());

#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 4)
#endif
    for (std::size_t k = 0; k < grid.size(); ++k) {
        const double w = grid[k];
        const auto& logs = w > 0.0 ? log_pos : log_neg;
        if (logs.empty()) continue;  // EmptySide: density estimate 0 there
        const double lw = std::log(std::abs(w));
        double sum = 0.0;
        for (double lv : logs)
            sum += std::exp((u_over_m - 1.0) * lw - u_over_m * lv - std::exp((lw - lv) / sigma));
        // mixture against the empirical law of all replicas (the opposite-sign
        // mass contributes zero to this side)
        out.values[k] = norm * sum / n_total;
    }
    return out;
}

double integrate_density(const DensityGrid& g) {
    // split by sign, sort by |x|, trapezoid + power-law patches toward 0
    auto side_mass = [&](bool positive) -> double {
        std::vector<std::pair<double, double>> pts;
        for (std::size_t i = 0; i < g.points.size(); ++i) {
            const double x = g.points[i];
            if ((x > 0.0) == positive && x != 0.0)
                pts.emplace_back(std::abs(x), std::max(g.values[i], 0.0));
        }
        if (pts.size() < 2) return 0.0;
        std::sort(pts.begin(), pts.end());
        double mass = 0.0;
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            mass += 0.5 * (pts[i].second + pts[i + 1].second) * (pts[i + 1].first - pts[i].first);
        // patch below the smallest point with the exact local power 1/m - 1
        const double m = g.params.m;
        const double x0 = pts.front().first;
        const double c0 = pts.front().second * std::pow(x0, 1.0 - 1.0 / m);
        mass += c0 * m * std::pow(x0, 1.0 / m);
        // crude power-law patch beyond the largest point, only if it decays
        const auto& p1 = pts[pts.size() - 1];
        const auto& p0 = pts[pts.size() - 2];
        if (p1.second > 0.0 && p0.second > 0.0) {
            const double q = std::log(p1.second / p0.second) / std::log(p1.first / p0.first);
            if (q < -1.5 && std::isfinite(q)) mass += p1.second * p1.first / (-q - 1.0);
        }
        return mass;
    };
    return side_mass(true) + side_mass(false);
}

std::vector<double> symmetric_log_grid(double lo, double hi, int count, bool both_signs) {
    std::vector<double> xs;
    const double ratio = std::pow(hi / lo, 1.0 / (count - 1));
    for (int i = 0; i < count; ++i) {
        const double v = lo * std::pow(ratio, i);
        xs.push_back(v);
        if (both_signs) xs.push_back(-v);
    }
    std::sort(xs.begin(), xs.end());
    return xs;
}

}  // namespace polya
