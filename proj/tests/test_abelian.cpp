#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "polya/abelian.hpp"
#include "polya/errors.hpp"
#include "polya/quadrature.hpp"
#include "polya/rng.hpp"
#include "polya/specfun.hpp"

using namespace polya;
using C = std::complex<double>;

namespace {
constexpr double kPi = std::numbers::pi;
const AbelianIntegral kAb(4, 7, 1);

// independent oracle: the defining integral on [1, T] plus the analytic tail
// from the binomial expansion of (1+u^m)^{b/m}
C defining_integral(int m, int S, int b, C z) {
    const double x = static_cast<double>(b) / m;
    const double T = 200.0 / std::abs(z);
    auto f = [&](double t) -> C {
        C tz = t * z;
        C tzm = 1.0;
        for (int k = 0; k < m; ++k) tzm *= tz;
        return std::exp(x * std::log(1.0 + tzm)) * std::pow(t, -(S + 1));
    };
    C zS = 1.0;
    for (int k = 0; k < S; ++k) zS *= z;
    C total = integrate_gk(f, 1.0, T, 1e-16, 1e-14) / zS;
    // tail beyond T: binomial expansion integrates term by term
    double binom = 1.0;
    const C tzi = 1.0 / (T * z);
    C pw = std::pow(tzi, static_cast<double>(S - b));
    for (int k = 0; k < 8; ++k) {
        if (k > 0) {
            binom *= (x - (k - 1)) / k;
            pw *= std::pow(tzi, static_cast<double>(m));
        }
        total += binom * pw / (S - b + static_cast<double>(m) * k);
    }
    return total;
}

}  // namespace

TEST_CASE("construction validates the convergence hypotheses") {
    CHECK_THROWS_AS(AbelianIntegral(2, 4, 1), DomainError);  // S < 5
    CHECK_THROWS_AS(AbelianIntegral(3, 7, 1), DomainError);  // m <= S/2
    CHECK_THROWS_AS(AbelianIntegral(4, 7, 4), DomainError);  // b >= S/2
    CHECK_NOTHROW(AbelianIntegral(4, 7, 2));
}

TEST_CASE("series, Laurent and quadrature agree with the defining integral") {
    SplitMix64 rng(2718281828ULL);
    for (int i = 0; i < 50; ++i) {
        const double r = 0.5 * std::pow(4.0, i / 49.0);
        const double ang = (2.0 * rng.uniform01() - 1.0) * 0.9 * kPi / 4;
        const C z = std::polar(r, ang);
        const C oracle = defining_integral(4, 7, 1, z);
        const C via = r >= 1.0 ? kAb.series_infinity(z) : kAb.series_laurent(z);
        CHECK(std::abs(via - oracle) / std::abs(oracle) < 1e-10);
        CHECK(std::abs(kAb.quadrature(z) - oracle) / std::abs(oracle) < 1e-10);
    }
}

TEST_CASE("leading behavior a z^a I(z) -> 1 at infinity") {
    const C z = std::polar(100.0, kPi / 8.0);
    C za = 1.0;
    for (int k = 0; k < 6; ++k) za *= z;
    CHECK(std::abs(6.0 * za * kAb.eval_I(z) - 1.0) < 1e-7);
}

TEST_CASE("rotation identity I(w z) = w^{-S} I(z)") {
    const C z = std::polar(2.0, kPi / 8.0);
    for (int k = 1; k <= 3; ++k) {
        const C wk = std::polar(1.0, 2.0 * kPi * k / 4.0);
        const C lhs = kAb.eval_I(wk * z);
        const C rhs = std::pow(wk, -7.0) * kAb.eval_I(z);
        CHECK(std::abs(lhs - rhs) < 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("I(1): infinity series against the ray quadrature") {
    const C s = kAb.series_infinity(C(1.0, 0.0), 1e-12);
    const C q = defining_integral(4, 7, 1, C(1.0, 0.0));
    CHECK(std::abs(s - q) / std::abs(q) < 1e-11);
    // Abel boundary: the Laurent expansion converges to the same value at 1
    const C l = kAb.series_laurent(C(1.0, 0.0), 1e-12);
    CHECK(std::abs(l - q) / std::abs(q) < 1e-10);
}

TEST_CASE("excluded rays raise DomainError") {
    CHECK_THROWS_AS(kAb.eval_I(std::polar(2.0, kPi / 4.0)), DomainError);  // arg = pi/m
    CHECK_THROWS_AS(kAb.eval_I(std::polar(0.7, 3.0 * kPi / 4.0)), DomainError);
    CHECK_THROWS_AS(kAb.eval_I(C(0.0, 0.0)), DomainError);
}

TEST_CASE("derivative") {
    SUBCASE("finite-difference check") {
        const C z = std::polar(1.5, kPi / 8.0);
        const double h = 1e-5;
        const C fd = (kAb.eval_I(z + h) - kAb.eval_I(z - h)) / (2.0 * h);
        CHECK(std::abs(fd - kAb.eval_I_prime(z)) / std::abs(fd) < 1e-8);
    }
    SUBCASE("tends to zero at infinity") {
        CHECK(std::abs(kAb.eval_I_prime(std::polar(1e3, kPi / 8.0))) < 1e-15);
    }
    SUBCASE("conjugate symmetry") {
        const C z = std::polar(0.8, kPi / 6.0);
        CHECK(std::abs(kAb.eval_I_prime(std::conj(z)) - std::conj(kAb.eval_I_prime(z))) < 1e-14);
    }
    SUBCASE("valid on other sectors of O_m") {
        const C z = std::polar(1.2, 2.0 * kPi / 4.0 + 0.1);
        const double h = 1e-5;
        const C fd = (kAb.eval_I(z * (1 + h)) - kAb.eval_I(z * (1 - h))) / (2.0 * h * z);
        CHECK(std::abs(fd - kAb.eval_I_prime(z)) / std::abs(fd) < 1e-7);
    }
}

TEST_CASE("boundary values on the ray arg z = pi/m") {
    SUBCASE("corner continuity: both parametrizations give I1 at r = 1") {
        const C i1 = kAb.I1();
        CHECK(std::abs(kAb.boundary_lower(1.0) - i1) < 1e-11 * std::abs(i1));
        CHECK(std::abs(kAb.boundary_upper(1.0) - i1) < 1e-14 * std::abs(i1));
    }
    SUBCASE("|I1| from the Beta formula matches the quadrature route") {
        const double beta = beta_function(6.0 / 4.0, 5.0 / 4.0) / 4.0;
        CHECK(std::abs(kAb.I1()) == doctest::Approx(beta).epsilon(1e-14));
        CHECK(std::abs(kAb.boundary_lower(1.0)) == doctest::Approx(beta).epsilon(1e-11));
    }
    SUBCASE("r -> infinity end goes to 0, r -> 0 end blows up along zeta^{-S}") {
        CHECK(std::abs(kAb.boundary_lower(50.0)) < 1e-9);
        const C far = kAb.boundary_upper(0.05);
        CHECK(std::abs(far) > 1e3);
        const double dir = std::arg(far - kAb.I1());
        const double expect = std::remainder(-kPi * 7.0 / 4.0, 2.0 * kPi);
        CHECK(std::abs(std::remainder(dir - expect, 2.0 * kPi)) < 1e-10);
    }
    SUBCASE("monotone decrease in r on each piece") {
        CHECK(std::abs(kAb.boundary_lower(1.0)) > std::abs(kAb.boundary_lower(2.0)));
        CHECK(std::abs(kAb.boundary_lower(2.0)) > std::abs(kAb.boundary_lower(4.0)));
        CHECK(std::abs(kAb.boundary_upper(0.3) - kAb.I1()) >
              std::abs(kAb.boundary_upper(0.6) - kAb.I1()));
    }
}

TEST_CASE("inverse map J") {
    SplitMix64 rng(111222333ULL);
    SUBCASE("I(J(w)) = w over the slit plane") {
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const double radius = std::exp(std::log(0.05) + rng.uniform01() * std::log(2000.0));
            const double angle = (2.0 * rng.uniform01() - 1.0) * 0.995 * kPi;
            const C w = std::polar(radius, angle);
            const C z = kAb.eval_J(w);
            CHECK(std::abs(std::arg(z)) < kPi / 4);  // image containment in S_m
            worst = std::max(worst, std::abs(kAb.eval_I(z) - w) / std::max(1.0, std::abs(w)));
        }
        CHECK(worst < 1e-10);
    }
    SUBCASE("J(I(z)) = z on the lower half of the sector, inside J's image") {
        // the image of J stops at the preimage curve of the negative axis;
        // lower-sector points map into J's domain exactly when I(z) lies in
        // the upper half-plane
        double worst = 0.0;
        int kept = 0;
        for (int i = 0; i < 400 && kept < 200; ++i) {
            const double radius = std::exp(std::log(0.2) + rng.uniform01() * std::log(25.0));
            const double angle = -rng.uniform_pos() * 0.95 * kPi / 4;
            const C z = std::polar(radius, angle);
            const C w = kAb.eval_I(z);
            if (w.imag() <= 1e-12) continue;
            ++kept;
            worst = std::max(worst, std::abs(kAb.eval_J(w) - z));
        }
        CHECK(kept >= 200);
        CHECK(worst < 1e-10);
    }
    SUBCASE("conjugate symmetry J(conj w) = conj J(w)") {
        for (int i = 0; i < 50; ++i) {
            const double radius = std::exp(std::log(0.1) + rng.uniform01() * std::log(1000.0));
            const double angle = rng.uniform_pos() * 0.99 * kPi;
            const C w = std::polar(radius, angle);
            CHECK(std::abs(kAb.eval_J(std::conj(w)) - std::conj(kAb.eval_J(w))) <
                  1e-13 * (1.0 + std::abs(kAb.eval_J(w))));
        }
    }
    SUBCASE("positive real w: J real, positive, decreasing") {
        const double j1 = kAb.eval_J(C(0.5, 0.0)).real();
        const double j2 = kAb.eval_J(C(1.0, 0.0)).real();
        const double j3 = kAb.eval_J(C(2.0, 0.0)).real();
        CHECK(std::abs(kAb.eval_J(C(1.0, 0.0)).imag()) < 1e-13);
        CHECK(j1 > j2);
        CHECK(j2 > j3);
        CHECK(j3 > 0.0);
    }
    SUBCASE("large-w Puiseux behavior") {
        const C w = std::polar(1e6, -0.3);
        const C z = kAb.eval_J(w);
        const C lead = std::exp(std::log(1.0 / (7.0 * w)) / 7.0);
        CHECK(std::abs(z / lead - 1.0) < 1e-3);
        CHECK(std::abs(kAb.eval_I(z) - w) < 1e-8 * std::abs(w));
        // the three-term seed alone is already accurate to o(|w|^{-1/7})
        CHECK(std::abs(kAb.puiseux_seed(w) - z) < 1e-6 * std::abs(z));
    }
    SUBCASE("the cut itself is rejected") {
        CHECK_THROWS_AS(kAb.eval_J(C(-1.0, 0.0)), DomainError);
        CHECK_THROWS_AS(kAb.eval_J(C(0.0, 0.0)), DomainError);
    }
}

TEST_CASE("one-sided boundary values of J on the negative axis") {
    const double c0 = kAb.C0();
    REQUIRE(c0 < 0.0);
    SUBCASE("conjugate pair by construction, nonreal") {
        const C jm = kAb.eval_J_boundary(c0, BoundarySide::minus);
        const C jp = kAb.eval_J_boundary(c0, BoundarySide::plus);
        CHECK(jp == std::conj(jm));
        CHECK(jm.imag() > 1e-3);  // J(C0-) lies strictly inside the upper sector
        CHECK(std::abs(jm) > 1e-3);
    }
    SUBCASE("one-sided residual: I at the limit returns x") {
        for (double x : {-0.05, -0.5, -2.0, kAb.C0()}) {
            const C j = kAb.eval_J_boundary(x, BoundarySide::minus);
            CHECK(std::abs(kAb.eval_I(j) - x) < 1e-8 * std::max(1.0, std::abs(x)));
        }
    }
    SUBCASE("rejects nonnegative x") {
        CHECK_THROWS_AS(kAb.eval_J_boundary(0.5, BoundarySide::minus), DomainError);
    }
}

TEST_CASE("second parameter set (5, 8, 2) behaves the same") {
    const AbelianIntegral ab(5, 8, 2);
    SplitMix64 rng(555ULL);
    double worst = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double radius = std::exp(std::log(0.1) + rng.uniform01() * std::log(500.0));
        const double angle = (2.0 * rng.uniform01() - 1.0) * 0.99 * kPi;
        const C w = std::polar(radius, angle);
        const C z = ab.eval_J(w);
        worst = std::max(worst, std::abs(ab.eval_I(z) - w) / std::max(1.0, std::abs(w)));
    }
    CHECK(worst < 1e-10);
    const C z = std::polar(0.75, -kPi / 7.0);
    const C oracle = defining_integral(5, 8, 2, z);
    CHECK(std::abs(ab.series_laurent(z) - oracle) < 1e-10 * std::abs(oracle));
}
