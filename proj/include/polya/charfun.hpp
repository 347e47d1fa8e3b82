#ifndef POLYA_CHARFUN_HPP
#define POLYA_CHARFUN_HPP

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "polya/abelian.hpp"
#include "polya/params.hpp"
#include "polya/simulate.hpp"

namespace polya {

/// Density values on a grid of nonzero points, produced either by Fourier
/// inversion of the closed-form characteristic function or by the scale
/// mixture over Monte-Carlo W^DT samples.
struct DensityGrid {
    std::vector<double> points;
    std::vector<double> values;
    std::vector<double> errors;  // truncation/interpolation estimate (fourier)
    std::string method;          // "fourier" or "mixture"
    double truncation_T = 0.0;
    double tolerance = 0.0;
    UrnParams params;
    Composition init;
};

struct OdeReport {
    double max_ode_residual = 0.0;
    double worst_x_ode = 0.0;
    double max_first_integral_dev = 0.0;
    double worst_x_integral = 0.0;
    std::complex<double> first_integral_target;
};

/// Closed-form characteristic functions of the continuous-time limits:
/// F for the start (1,0), G for (0,1), products for general starts.
/// Immutable after construction; all evaluations are pure.
class CharFunEvaluator {
  public:
    explicit CharFunEvaluator(const UrnParams& p);

    const UrnParams& params() const { return params_; }
    const SpectralConstants& constants() const { return constants_; }
    const AbelianIntegral& abelian_b() const { return ab_b_; }
    const AbelianIntegral& abelian_c() const { return ab_c_; }

    std::complex<double> F(double x) const;
    std::complex<double> G(double x) const;

    /// Derivative by the algebraic identity F' = F (F^a G^b - 1)/(m x).
    std::complex<double> F_prime(double x) const;
    std::complex<double> G_prime(double x) const;

    /// Derivative through J and the closed form of I' (independent of the
    /// algebraic identity; used by the ODE cross-check).
    std::complex<double> F_prime_chain(double x) const;
    std::complex<double> G_prime_chain(double x) const;

    /// Characteristic function F^alpha G^beta of the start (alpha, beta).
    std::complex<double> charfun_general(double x, Composition init) const;
    std::complex<double> charfun_general_prime(double x, Composition init) const;

    /// The function phi of the closed form; F(x) = phi_b(ix), G(x) = phi_c(-ix).
    std::complex<double> phi(std::complex<double> z, bool use_c = false) const;

    /// Tail constant kappa J_b(C0-) of F(x) ~ const x^{-1/m}.
    std::complex<double> tail_constant() const;

    /// Residuals of the Fourier differential system evaluated with closed-form
    /// values and the chain-rule derivative, plus the first-integral check
    /// 1/g^m - 1/f^m = i m (b+c)/S.
    OdeReport ode_crosscheck(const std::vector<double>& xs) const;

    /// Density of W^CT for the start `init` by oscillation-exact Fourier
    /// inversion of the derivative of the characteristic function, truncated
    /// at T with an integration-by-parts tail correction.
    DensityGrid density_fourier(const std::vector<double>& grid, double T, double tol,
                                Composition init = {1, 0}) const;

    /// Density by the mixture over W^DT Monte-Carlo samples. Sample values
    /// carry the gamma-product normalization and are rescaled internally to
    /// the n^sigma normalization that the martingale connection uses.
    DensityGrid density_mixture(const SampleSet& wdt_samples, const std::vector<double>& grid) const;

  private:
    UrnParams params_;
    SpectralConstants constants_;
    AbelianIntegral ab_b_;
    AbelianIntegral ab_c_;
};

/// Trapezoid integral of a density over its grid plus power-law patches for
/// the integrable divergence at 0 (p ~ C |x|^{1/m-1}); a diagnostic for the
/// normalization check.
double integrate_density(const DensityGrid& g);

/// Geometric grid of nonzero points: +/- [lo, hi] with `count` points per
/// sign, or positive side only.
std::vector<double> symmetric_log_grid(double lo, double hi, int count, bool both_signs = true);

}  // namespace polya

#endif
