#ifndef POLYA_MOMENTS_HPP
#define POLYA_MOMENTS_HPP

#include <cstdint>
#include <vector>

#include "polya/params.hpp"
#include "polya/simulate.hpp"

namespace polya {

enum class PrecisionMode { Double, Extended };

/// Moments a_n = E[X^n], b_n = E[Y^n] of the limits started from one red
/// (resp. one black) ball, with the residuals of the defining linear system.
struct MomentTable {
    UrnParams params;
    int order = 0;
    std::vector<double> a_seq;
    std::vector<double> b_seq;
    std::vector<double> egf_a;  // a_n / n!
    std::vector<double> egf_b;  // b_n / n!
    std::vector<double> residuals;
    PrecisionMode precision_mode = PrecisionMode::Double;
};

/// Solve the moment recursion up to order N. Each step extracts the T^n
/// coefficient of F^{a+1} G^b and F^c G^{d+1} with (a_n, b_n) isolated and
/// solves the 2x2 system with matrix n m I - R (always invertible for large
/// urns). Escalates to Extended (double-double) precision when a residual
/// exceeds 1e-12 or n! scaling overflows.
MomentTable moment_recursion(const UrnParams& p, int N);

/// E[xi^p] = Gamma(u/S + p)/Gamma(u/S) for xi ~ Gamma(u/S); fractional p allowed.
double gamma_moment(const Rational& u_over_s, double p);

/// Moments of W^DT (n^sigma normalization) for a general start, via
/// E[(W^DT)^n] = E[(W^CT)^n] / E[xi^{n sigma}]. The W^CT moments for init
/// (alpha, beta) are the coefficients of F^alpha G^beta.
std::vector<double> wdt_moments(const MomentTable& table, Composition init);

/// W^CT moments for a general start, n!-scaled coefficients of F^alpha G^beta.
std::vector<double> wct_moments(const MomentTable& table, Composition init);

/// E[xi W^CT] = (alpha + beta + m)(b alpha - c beta)/S^2.
double joint_moment_q11(Composition init, const UrnParams& p);

}  // namespace polya

#endif
