#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "wright/complexhp.hpp"
#include "wright/params.hpp"
#include "wright/precision.hpp"

namespace wright {

// Normalised expansion coefficients c_j = A_j/A_0 with the leading amplitude
// A_0. Exact rationals when all four parameters are rational; otherwise
// realized in configurable precision with `exact` false.
struct CoefficientSet {
    Complex A0;
    std::vector<Complex> c;               // realized values, c[0] = 1
    std::vector<Rational> c_rat;          // filled iff exact
    bool exact = false;
    std::optional<long> termination_index;

    long size() const { return static_cast<long>(c.size()); }
    const Complex& operator[](long j) const { return c[static_cast<size_t>(j)]; }
};

// Leading amplitude A_0 = kappa^(-1/2-theta) alpha^(a-1/2) beta^(1/2-b).
Complex leading_A0(const WrightParams& p, const PrecisionCtx& ctx);

// (A_0, A_1) in closed form.
std::pair<Complex, Complex> leading_A0_A1(const WrightParams& p, const PrecisionCtx& ctx);

// A_1/A_0 in closed form, exact; requires rational parameters.
Rational leading_c1_exact(const WrightParams& p);

// Normalised coefficients c_0..c_{M-1} by recursive coefficient matching of
// the inverse factorial expansion in powers of chi = 1/(kappa s): the four
// scaled-gamma factors and the four e(alpha s; gamma) factors expand the
// left side, the Pochhammer basis expands the right side, and the resulting
// unit-triangular system is solved order by order. Termination rules for
// integer theta (alpha = beta) are applied to the result.
CoefficientSet c_coefficients(const WrightParams& p, long M, const PrecisionCtx& ctx);

// Terminal coefficient in closed form via the cover-up rule:
// c_n = alpha^(-n) (b)_n for theta = n; c_J = (-)^J alpha^(n-1) (n)_J for
// theta = -n under the alpha = 1/q, a = p/q parameter family.
Rational coverup_closed_form(const WrightParams& p);

// Terminant smoothing coefficients g_0, g_2, ..., g_{2(N-1)}.
struct GCoeffs {
    bool exact = false;
    Rational mu_rat, delta_rat;
    Complex mu{64}, delta{64};
    std::vector<Rational> g_even_rat;
    std::vector<Complex> g_even;
    long N = 0;
};

// The printed polynomials for ghat_0..ghat_6, g_{2k} = ghat_{2k} 6^(-2k);
// only N <= 4 of them exist in print.
GCoeffs g_even_table(const Rational& mu, const Rational& delta, long N);
GCoeffs g_even_table(const Complex& mu, const Complex& delta, long N, long prec);

// Generator to arbitrary order: expand w(tau) from w^2/2 = tau - log tau - 1
// on the tau'(0) = +1 branch, revert to tau(w), and read the g_k off
// mu tau^(delta-1) (1 - tau^mu)^(-1) dtau/dw = -1/w + sum g_k w^k.
GCoeffs g_even_generate(const Rational& mu, const Rational& delta, long N);
GCoeffs g_even_generate(const Complex& mu, const Complex& delta, long N, long prec);

// Composite Stokes-line coefficients B_j, j = 0..M-1, at evaluation point x
// with H truncated at m terms: B_j = sum_k (-2)^k (1/2)_k A_{j-k} g_{2k} with
// delta_{j-k} = nu - x - (j-k), nu = mu(a+m) + theta.
std::vector<Complex> B_coefficients(const WrightParams& p, const CoefficientSet& cs,
                                    const Real& x, long m, long M, const PrecisionCtx& ctx);

// B_j/A_0, exact when the parameters and x are rational (test surface and
// the internal route for the Stokes evaluation).
std::vector<Rational> b_normalized_exact(const WrightParams& p, const CoefficientSet& cs,
                                         const Rational& x, long m, long M);
std::vector<Complex> b_normalized(const WrightParams& p, const CoefficientSet& cs,
                                  const Real& x, long m, long M, const PrecisionCtx& ctx);

}  // namespace wright
