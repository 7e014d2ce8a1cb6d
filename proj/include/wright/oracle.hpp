#pragma once

#include "wright/complexhp.hpp"
#include "wright/params.hpp"
#include "wright/precision.hpp"

namespace wright {

// Vertical-contour description used by the Mellin-Barnes quadrature.
struct ContourSpec {
    Real c_offset{64};
    Real height{64};
    long nodes = 0;
};

// 1Psi1(-x) for alpha = beta via trapezoidal quadrature of
// (1/2 pi i) int Gamma(s) Gamma(a - alpha s)/Gamma(b - alpha s) x^(-s) ds
// on the straight vertical line Re s = c separating the two pole sequences.
// Node count doubles until self-convergence at the context tolerance.
Complex mb_quadrature(const WrightParams& p, const Real& x, const PrecisionCtx& ctx,
                      ContourSpec* used = nullptr);

// Kummer's confluent hypergeometric series sum (a)_r/(b)_r z^r/r! with the
// same cancellation guard as eval_series.
Complex kummer_series(const Complex& a, const Complex& b, const Complex& z,
                      const PrecisionCtx& ctx);

}  // namespace wright
