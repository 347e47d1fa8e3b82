#ifndef POLYA_PARAMS_HPP
#define POLYA_PARAMS_HPP

#include <complex>
#include <cstdint>
#include <string>

#include "polya/rational.hpp"

namespace polya {

enum class ValidityClass { LargeNonTriangular, SimulationOnly };

/// A linear form or vector on R^2 with exact rational coordinates.
struct RationalVec2 {
    Rational x, y;
};

/// Static data of a balanced two-color urn, parametrized by the second
/// eigenvalue m, the balance S and the off-diagonal entry b. The replacement
/// matrix is R = [[a, b], [c, d]] with a = S-b, c = S-m-b, d = m+b.
struct UrnParams {
    int m = 0;
    int S = 0;
    int b = 0;
    int a = 0;
    int c = 0;
    int d = 0;
    Rational sigma;  // m/S, exact
    ValidityClass validity_class = ValidityClass::SimulationOnly;

    bool is_large() const { return validity_class == ValidityClass::LargeNonTriangular; }

    /// Eigenform of A = R^t for eigenvalue S: u1(x,y) = (x+y)/S.
    RationalVec2 u1() const { return {Rational(1, S), Rational(1, S)}; }
    /// Eigenform of A for eigenvalue m: u2(x,y) = (b x - c y)/S.
    RationalVec2 u2() const { return {Rational(b, S), Rational(-c, S)}; }
    /// Dual basis vectors of (u1, u2).
    RationalVec2 v1() const {
        return {Rational(static_cast<std::int64_t>(S) * c, b + c),
                Rational(static_cast<std::int64_t>(S) * b, b + c)};
    }
    RationalVec2 v2() const {
        return {Rational(S, b + c), Rational(-S, b + c)};
    }

    double u2_of(double x, double y) const { return (b * x - c * y) / S; }
};

/// Analytic constants entering the closed-form characteristic functions,
/// precomputed for one parameter choice (b for the function F, c for G).
/// kappa and K are shared between the two choices; C0, I1 and rho are not.
struct SpectralConstants {
    UrnParams params;
    double kappa = 0.0;
    std::complex<double> K;
    double C0_b = 0.0;
    double C0_c = 0.0;
    std::complex<double> I1_b;
    std::complex<double> I1_c;
    double rho_b = 0.0;
    double rho_c = 0.0;
};

/// Validate the triple (m, S, b), fill in the derived entries and classify
/// the urn. Throws NonBalancedOrNegativeEntry if an entry of R would be
/// negative; a balanced nonnegative matrix that fails the large/nontriangular
/// inequalities is reported as SimulationOnly, not an error.
UrnParams validate_params(int m, int S, int b);

/// Compute all spectral constants of a LargeNonTriangular urn. C0 is summed
/// by its series with paired terms; I1 uses the Beta-function closed form.
SpectralConstants spectral_constants(const UrnParams& p);

/// Laurent constant term C0 of the Abelian integral, from its series, for
/// the given off-diagonal parameter (b or c). Pairs of consecutive terms are
/// accumulated until |pair| < tol * |partial sum|.
double c0_series(int m, int S, int b, double tol = 1e-16, std::size_t max_terms = 1000000);

/// |I1| and the cross-check value of C0 derived from it through the sine
/// ratio; the pair (C0_series, C0_from_beta) should agree to ~1e-10.
double c0_from_beta(int m, int S, int b);

/// Human-readable description of which inequality of the large/nontriangular
/// hypothesis fails, or empty if none does.
std::string hyp_violation(int m, int S, int b);

}  // namespace polya

#endif
