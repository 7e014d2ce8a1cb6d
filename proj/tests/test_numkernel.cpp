#include "doctest.h"

#include "wright/complexhp.hpp"
#include "wright/gammafn.hpp"
#include "wright/precision.hpp"

using namespace wright;

namespace {

// Deterministic 64-bit LCG for reproducible sampling.
struct Lcg {
    unsigned long long s = 0x9e3779b97f4a7c15ULL;
    unsigned long long next() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return s;
    }
    // uniform in [lo, hi) with ~2^-20 granularity
    double uniform(double lo, double hi) {
        return lo + (hi - lo) * static_cast<double>(next() >> 44) / 1048576.0;
    }
};

}  // namespace

TEST_CASE("gamma at classical points") {
    PrecisionCtx ctx(192, 0);
    Real one = gamma(Real::from_long(1, 192), ctx);
    CHECK(rel_err(one, Real::from_long(1, 192)).to_double() < 1e-50);

    Real half = gamma(Real::from_rational(Rational(1, 2), 192), ctx);
    Real sqrt_pi = sqrt(Real::pi(192));
    CHECK(rel_err(half, sqrt_pi).to_double() < 1e-50);

    // Gamma(1/3)/Gamma(7/3) = 1/((1/3)(4/3)) = 9/4
    Real g13 = gamma(Real::from_rational(Rational(1, 3), 192), ctx);
    Real g73 = gamma(Real::from_rational(Rational(7, 3), 192), ctx);
    CHECK(rel_err(g13 / g73, Real::from_rational(Rational(9, 4), 192)).to_double() < 1e-50);
}

TEST_CASE("gamma pole and integer values") {
    PrecisionCtx ctx(128, 0);
    CHECK_THROWS_AS(gamma(Real::from_long(0, 128), ctx), PoleError);
    CHECK_THROWS_AS(gamma(Real::from_long(-3, 128), ctx), PoleError);
    CHECK_THROWS_AS(gamma(Complex::from_long(-7, 128), ctx), PoleError);
    Real g6 = gamma(Real::from_long(6, 128), ctx);
    CHECK(rel_err(g6, Real::from_long(120, 128)).to_double() < 1e-30);

    CHECK(rgamma(Real::from_long(-4, 128), ctx).is_zero());
    CHECK(rgamma(Complex::from_long(0, 128), ctx).is_zero());
}

TEST_CASE("reflection consistency on random points") {
    PrecisionCtx ctx(128, 0);
    Lcg rng;
    Real tol = eps_bits(100, 160);
    for (int i = 0; i < 1000; ++i) {
        double re = rng.uniform(-20.0, 20.0);
        double im = (i % 2 == 0) ? 0.0 : rng.uniform(-10.0, 10.0);
        // keep away from the integer lattice where gamma blows up
        double frac = re - static_cast<double>(static_cast<long>(re));
        if (im == 0.0 && (frac < 0.1 && frac > -0.1)) re += 0.31;
        Complex z(Real::from_double(re, 160), Real::from_double(im, 160));
        Complex lhs = gamma(z, ctx) * gamma(Complex::from_long(1, 160) - z, ctx) *
                      sin_pi(z, 160) / Complex(Real::pi(160));
        CHECK(rel_err(lhs, Complex::from_long(1, 160)) < tol);
    }
}

TEST_CASE("gamma_star definition and asymptotics") {
    PrecisionCtx ctx(192, 0);
    // Gamma*(1) = e / sqrt(2 pi)
    Complex gs1 = gamma_star(Complex::from_long(1, 192), ctx);
    Real expected = exp(Real::from_long(1, 192)) / sqrt(Real::pi(192) * 2);
    CHECK(rel_err(gs1.re, expected).to_double() < 1e-50);
    CHECK(gs1.im.is_zero());

    // |Gamma*(100) - (1 + 1/1200 + 1/2880000)| <= 1e-8
    // (gamma_k series truncated at k=2; the k=3 term bounds the tail)
    Complex gs100 = gamma_star(Complex::from_long(100, 192), ctx);
    Rational approx = Rational(1) + Rational(1, 1200) + Rational(1, 2880000);
    Real diff = abs(gs100.re - Real::from_rational(approx, 192));
    CHECK(diff.to_double() <= 1e-8);

    // consistency: Gamma*(z) sqrt(2 pi) e^-z z^(z-1/2) = Gamma(z)
    for (long zi : {3, 7, 40}) {
        Complex z = Complex::from_long(zi, 192);
        Complex gs = gamma_star(z, ctx);
        Complex back = gs * Complex(sqrt(Real::pi(192) * 2)) *
                       exp(Complex(z.re * (-1)) + (z - Complex::from_rational(Rational(1, 2), 192)) * log(z));
        CHECK(rel_err(back, gamma(z, ctx)).to_double() < 1e-50);
    }
}

TEST_CASE("bernoulli numbers") {
    // independent check value: the defining recurrence solved by hand for n=2
    // sum_j C(3,j) B_j = 0 -> B_2 = -(B_0 + 3 B_1)/3 = -(1 - 3/2)/3 = 1/6
    auto B = bernoulli_numbers(12);
    CHECK(B[0] == Rational(1));
    CHECK(B[1] == Rational(-1, 2));
    CHECK(B[2] == Rational(1, 6));
    CHECK(B[3] == Rational(0));
    CHECK(B[4] == Rational(-1, 30));
    CHECK(B[12] == Rational(-691, 2730));
    CHECK(bernoulli_numbers(0).size() == 1);
}

TEST_CASE("stirling coefficients exact") {
    auto g = stirling_coeffs(4);
    REQUIRE(g.size() == 5);
    CHECK(g[0] == Rational(1));
    CHECK(g[1] == Rational(-1, 12));
    CHECK(g[2] == Rational(1, 288));
    CHECK(g[3] == Rational(139, 51840));
    CHECK(g[4] == Rational(-571, 2488320));
}

TEST_CASE("precision doubling keeps verified digits") {
    Real x = Real::from_rational(Rational(13, 7), 512);
    Real lo = gamma(x.rounded_to(128), PrecisionCtx(128, 0));
    Real hi = gamma(x, PrecisionCtx(256, 0));
    // the low-precision result is accurate to ~2^-120; doubling must agree
    CHECK(rel_err(lo, hi) < eps_bits(118, 256));

    Complex zc(Real::from_double(2.25, 512), Real::from_double(-3.5, 512));
    Complex clo = gamma(zc.rounded_to(128), PrecisionCtx(128, 0));
    Complex chi = gamma(zc, PrecisionCtx(256, 0));
    CHECK(rel_err(clo, chi) < eps_bits(118, 256));
}

TEST_CASE("promotion and rounding semantics") {
    Real a = Real::from_rational(Rational(1, 3), 64);
    Real b = Real::from_rational(Rational(1, 7), 256);
    CHECK((a + b).prec() == 256);
    CHECK((a * b).prec() == 256);
    Complex ca(a), cb(b);
    CHECK((ca * cb).prec() == 256);
    CHECK_THROWS_AS(PrecisionCtx(32, 0), InvalidParams);
}
