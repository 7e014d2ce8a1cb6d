#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wright/coeffs.hpp"
#include "wright/complexhp.hpp"
#include "wright/params.hpp"
#include "wright/precision.hpp"

namespace wright {

enum class Route {
    ConvergentSeries,
    Theorem1Sector,
    Theorem3Stokes,
    Theorem4Stokes,
    PolynomialExact,
    ClosedFormFinite,
};

std::string route_name(Route r);

struct EvalResult {
    Complex value;
    Route route = Route::ConvergentSeries;
    std::optional<long> m_used;   // algebraic truncation
    std::optional<long> M_used;   // exponential truncation
    Real err_estimate{64};        // magnitude of the first omitted term
};

// The defining series sum_r Gamma(alpha r + a)/Gamma(beta r + b) z^r/r!,
// summed with cancellation guard bits; converges for all z when kappa > 0,
// inside |z| < 1/h when kappa = 0, and diverges for kappa < 0.
EvalResult eval_series(const WrightParams& p, const Complex& z, const PrecisionCtx& ctx);

// Algebraic expansion H(z): first m terms of
// (1/alpha) sum_k (-)^k/k! Gamma((k+a)/alpha) / Gamma(b - beta(k+a)/alpha)
//   z^(-(k+a)/alpha).
// Terms whose denominator gamma sits at a pole are exact zeros.
Complex eval_H(const WrightParams& p, const Complex& z, long m, const PrecisionCtx& ctx);

// Exponential expansion E(z) = Z^theta e^Z sum_{j<J} A_j Z^-j,
// Z = kappa (h z)^(1/kappa) on the principal branch.
Complex eval_E(const WrightParams& p, const Complex& z, const CoefficientSet& cs, long J,
               const PrecisionCtx& ctx);

// Index of the first local minimum of |term_k| of H at z = x (ties go to the
// smaller index); the sum of terms k < m_o is the optimally truncated H.
long optimal_truncation(const WrightParams& p, const Real& x, const PrecisionCtx& ctx);

// Sector dispatch of the standard large-|z| expansion for 0 < kappa < 2:
// E(z) + H(z e^{-+ pi i}) inside |arg z| <= pi kappa / 2, H alone otherwise;
// upper sign for Im z >= 0.
EvalResult eval_theorem1(const WrightParams& p, const Complex& z, long m, long J,
                         const PrecisionCtx& ctx);

// Stokes-line evaluation at z = -x (arg z = +pi), kappa = 1. Dispatches on
// theta: the smoothed expansion with the A and B series for non-integer
// theta, the n-term algebraic sum plus the cos(pi theta) A-series for
// theta = -n, the exact polynomial for theta = +n, and the exact finite
// closed form when the A-series terminates.
EvalResult eval_stokes_kappa1(const WrightParams& p, const Real& x, long M,
                              const PrecisionCtx& ctx);

// Coefficients of the degree-n polynomial from wp_0 = 1,
// wp_{r+1}(z) = (alpha z + b + r) wp_r(z) + alpha z wp_r'(z).
struct WrightPolynomial {
    bool exact = false;
    std::vector<Rational> coef_rat;   // ascending powers, filled iff exact
    std::vector<Complex> coef;        // always filled

    Complex eval(const Complex& z) const;
    long degree() const { return static_cast<long>(coef.size()) - 1; }
};

WrightPolynomial wright_polynomial(const WrightParams& p, long n, const PrecisionCtx& ctx);

}  // namespace wright
