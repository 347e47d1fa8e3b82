#ifndef POLYA_QUADRATURE_HPP
#define POLYA_QUADRATURE_HPP

#include <cmath>
#include <complex>
#include <cstddef>

#include "polya/errors.hpp"

namespace polya {

namespace detail {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule,
// on [-1, 1]; nodes are the nonnegative ones.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.000000000000000};
inline constexpr double kGK15Weights[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
inline constexpr double kG7Weights[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

}  // namespace detail

/// One GK15 panel: returns the Kronrod estimate and an error estimate from
/// the Gauss/Kronrod difference.
template <typename F, typename R = std::invoke_result_t<F, double>>
std::pair<R, double> gk15_panel(F&& f, double lo, double hi) {
    const double h = 0.5 * (hi - lo);
    const double mid = 0.5 * (lo + hi);
    R gk = R{};
    R g = R{};
    for (int i = 0; i < 8; ++i) {
        const double xi = detail::kGK15Nodes[i];
        if (i == 7) {
            const R fm = f(mid);
            gk += detail::kGK15Weights[i] * fm;
            g += detail::kG7Weights[3] * fm;
        } else {
            const R fp = f(mid + h * xi);
            const R fn = f(mid - h * xi);
            gk += detail::kGK15Weights[i] * (fp + fn);
            if (i % 2 == 1) g += detail::kG7Weights[i / 2] * (fp + fn);
        }
    }
    gk *= h;
    g *= h;
    return {gk, std::abs(gk - g)};
}

/// Adaptive bisection on top of GK15. Tolerance is absolute + relative
/// against the accumulated estimate.
template <typename F, typename R = std::invoke_result_t<F, double>>
R integrate_gk(F&& f, double lo, double hi, double abs_tol = 1e-12, double rel_tol = 1e-12,
               int max_depth = 28) {
    struct Rec {
        R total{};
        double err = 0.0;
    } acc;

    auto recurse = [&](auto&& self, double a, double b, int depth) -> void {
        auto [v, e] = gk15_panel(f, a, b);
        if (e <= abs_tol * (b - a) / (hi - lo) + rel_tol * std::abs(v) || depth >= max_depth) {
            if (depth >= max_depth && e > 1e3 * (abs_tol + rel_tol * std::abs(v)))
                throw ConvergenceFailure("integrate_gk: max subdivision depth reached");
            acc.total += v;
            acc.err += e;
            return;
        }
        const double m = 0.5 * (a + b);
        self(self, a, m, depth + 1);
        self(self, m, b, depth + 1);
    };
    recurse(recurse, lo, hi, 0);
    return acc.total;
}

}  // namespace polya

#endif
