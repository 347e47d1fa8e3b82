#ifndef POLYA_ABELIAN_HPP
#define POLYA_ABELIAN_HPP

#include <complex>
#include <cstdint>

namespace polya {

using Complex = std::complex<double>;

enum class BoundarySide { plus, minus };

/// The Abelian integral I(z) = int_{[z, z inf)} (1+u^m)^{b/m} u^{-S-1} du on
/// the open set O_m (the plane minus the m rays through the odd roots of -1),
/// and its conformal inverse J on the slit plane.
///
/// Series evaluation uses the power expansion at infinity for |z| >= 1 and
/// the Laurent expansion at 0 for |z| <= 1; both converge slowly near |z|=1,
/// where the ray quadrature takes over. Points outside the central sector
/// S_m = {|arg z| < pi/m} reduce to it through I(w z) = w^{-S} I(z) for
/// m-th roots of unity w. All evaluation is stateless and safe to call
/// concurrently.
class AbelianIntegral {
  public:
    /// Requires S >= 5, S/2 < m < S, 1 <= b < S/2 (so the integral converges).
    AbelianIntegral(int m, int S, int b);

    int m() const { return m_; }
    int S() const { return S_; }
    int b() const { return b_; }
    int a() const { return a_; }

    /// Laurent constant term at the origin (negative).
    double C0() const { return C0_; }
    /// Corner value I1 = (1/m) B(a/m, d/m) e^{-i a pi/m}.
    Complex I1() const { return I1_; }

    Complex eval_I(Complex z) const;
    Complex eval_I_prime(Complex z) const;

    /// Expansion at infinity, valid on S_m for |z| >= 1. Terms are summed in
    /// consecutive pairs with a tail estimate; throws ConvergenceFailure when
    /// the cap is hit first.
    Complex series_infinity(Complex z, double tol = 1e-13, std::size_t max_terms = 4000000) const;
    /// Laurent expansion at the origin, valid on S_m for |z| <= 1.
    Complex series_laurent(Complex z, double tol = 1e-13, std::size_t max_terms = 4000000) const;
    /// Ray quadrature oracle, valid on all of S_m.
    Complex quadrature(Complex z) const;

    /// One-sided boundary values of I on the ray arg z = pi/m, approached
    /// from inside S_m; r is |z|. Decreasing in r on each piece, with value
    /// I1 at the corner r = 1.
    Complex boundary_lower(double r) const;  // r >= 1
    Complex boundary_upper(double r) const;  // r <= 1

    /// Conformal inverse on the slit plane C \ (-inf, 0], mapping into S_m;
    /// the lower half-plane inverts directly (image in the upper half of the
    /// sector), the upper half-plane by conjugacy. Newton iteration seeded by
    /// the three-term Puiseux expansion, with path continuation from a
    /// large-|w| anchor.
    Complex eval_J(Complex w) const;

    /// One-sided limits J(x+/-) for x < 0: continuation with shrinking
    /// imaginary offsets, Richardson extrapolation, then a final polish at
    /// the boundary point itself. J(x-) lies in the upper half of the
    /// sector; J(x+) is its conjugate.
    Complex eval_J_boundary(double x, BoundarySide side) const;

    /// Three-term Puiseux seed (1/(Sw))^{1/S} + ... for large |w|.
    Complex puiseux_seed(Complex w) const;

  private:
    Complex eval_sector(Complex z) const;          // z in S_m
    Complex invert_lower(Complex w) const;         // Im w <= 0, w not on the cut
    Complex newton(Complex w, Complex z0) const;   // keeps iterates in S_m, Im z >= -eps
    bool in_sector(Complex z) const;

    int m_, S_, b_, a_;
    double x_;  // b/m
    double C0_;
    Complex I1_;
};

}  // namespace polya

#endif
