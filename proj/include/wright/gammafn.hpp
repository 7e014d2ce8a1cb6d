#pragma once

#include <vector>

#include "wright/complexhp.hpp"
#include "wright/precision.hpp"
#include "wright/rational.hpp"

namespace wright {

// Exact Bernoulli numbers B_0..B_K by the defining recurrence
// sum_{j<=n} C(n+1,j) B_j = 0 (so B_1 = -1/2, odd ones vanish from B_3 on).
std::vector<Rational> bernoulli_numbers(long K);

// Stirling coefficients gamma_0..gamma_K of Gamma*(z) ~ sum (-)^k gamma_k z^-k,
// computed as the formal exponential of the Bernoulli series for log Gamma*.
std::vector<Rational> stirling_coeffs(long K);

// Gamma function by the Stirling series with argument raising, reflection for
// Re z < 1/2. Relative error within 2^(8-bits) of the context.
Complex gamma(const Complex& z, const PrecisionCtx& ctx);
Real gamma(const Real& x, const PrecisionCtx& ctx);

// 1/Gamma, returning an exact zero at the poles z = 0, -1, -2, ...
Complex rgamma(const Complex& z, const PrecisionCtx& ctx);
Real rgamma(const Real& x, const PrecisionCtx& ctx);

// Scaled gamma Gamma*(z) = Gamma(z) (2pi)^(-1/2) e^z z^(1/2-z); tends to 1 as
// |z| -> infinity away from the negative axis.
Complex gamma_star(const Complex& z, const PrecisionCtx& ctx);

// sin(pi z) without forming pi*z at low precision first.
Complex sin_pi(const Complex& z, long prec);
Real sin_pi(const Real& x, long prec);
Real cos_pi(const Real& x, long prec);

}  // namespace wright
