#include "wright/evaluate.hpp"

#include "wright/errors.hpp"
#include "wright/gammafn.hpp"

namespace wright {

namespace {

constexpr long kSlackBits = 32;
constexpr long kMaxSeriesTerms = 200000;
constexpr long kMaxGuardBits = 1 << 21;

// Largest-term exponent X = kappa (h|z|)^(1/kappa) for the guard-bit rule;
// coarse 64-bit arithmetic is enough to size the guard.
long series_guard_bits(const WrightParams& p, const Real& zmag) {
    const long probe = 64;
    Real al = p.alpha(probe), be = p.beta(probe);
    Real kappa = 1 + be - al;
    if (!(kappa > 0) || zmag.is_zero()) return 64;
    Real h = exp(al * log(al) - be * log(be));
    Real hx = h * zmag.rounded_to(probe);
    if (!(hx > 0)) return 64;
    Real X = kappa * exp(log(hx) / kappa);
    double xd = X.to_double();
    long g = cancellation_guard_bits(xd);
    if (g > kMaxGuardBits)
        throw Error("eval_series: cancellation guard exceeds the feasible precision budget");
    return g;
}

struct ThetaClass {
    bool is_integer = false;
    long n = 0;  // theta = n when is_integer
};

ThetaClass classify_theta(const WrightParams& p, long prec) {
    ThetaClass tc;
    if (auto tr = p.theta_rat()) {
        if (rat_is_integer(*tr)) {
            tc.is_integer = true;
            tc.n = rat_to_long(*tr);
        }
        return tc;
    }
    Complex theta = p.a(prec) - p.b(prec);
    if (theta.im.is_zero() && theta.re.is_integer()) {
        tc.is_integer = true;
        tc.n = theta.re.to_long();
    }
    return tc;
}

// One H term: (1/alpha)(-)^k/k! Gamma((k+a)/alpha) rGamma(b-beta(k+a)/alpha)
// z^(-(k+a)/alpha). Denominator-pole terms are exact zeros; with rational
// parameters the pole test and the gamma arguments are formed exactly.
class HTermGenerator {
  public:
    HTermGenerator(const WrightParams& p, const Complex& z, long prec)
        : prec_(prec), ctx_(prec, 0), z_log_(prec), alpha_(p.alpha(prec)),
          inv_alpha_(1 / alpha_), a_(p.a(prec)), b_(p.b(prec)), beta_(p.beta(prec)),
          exact_(p.exact()) {
        if (z.is_zero()) throw InvalidParams("H(z): z must be nonzero");
        z_log_ = log(z.rounded_to(prec));
        if (exact_) {
            a_rat_ = p.a_rat();
            b_rat_ = p.b_rat();
            alpha_rat_ = p.alpha_rat();
            beta_rat_ = p.beta_rat();
        }
        kfact_ = Real::from_long(1, prec);
    }

    // Produces the terms for k = 0, 1, 2, ... in order.
    Complex next() {
        long k = next_k_++;
        if (k > 0) kfact_ *= k;
        Complex num_arg(prec_);
        Complex den_arg(prec_);
        if (exact_) {
            Rational num = (Rational(k) + a_rat_) / alpha_rat_;
            Rational den = b_rat_ - beta_rat_ * num;
            if (rat_is_integer(den) && den <= 0) return Complex(prec_);
            num_arg = Complex::from_rational(num, prec_);
            den_arg = Complex::from_rational(den, prec_);
        } else {
            num_arg = (a_ + Complex::from_long(k, prec_)) * Complex(inv_alpha_);
            den_arg = b_ - Complex(beta_) * num_arg;
            if (den_arg.im.is_zero() && den_arg.re.is_integer() && den_arg.re.sgn() <= 0)
                return Complex(prec_);
        }
        Complex g = gamma(num_arg, ctx_) * rgamma(den_arg, ctx_);
        if (g.is_zero()) return Complex(prec_);
        Complex zp = exp(-(num_arg * z_log_));
        Complex t = g * zp * Complex(inv_alpha_ / kfact_);
        if (k % 2 == 1) t = -t;
        return t;
    }

  private:
    long prec_;
    PrecisionCtx ctx_;
    Complex z_log_;
    Real alpha_, inv_alpha_;
    Complex a_, b_;
    Real beta_;
    bool exact_;
    Rational a_rat_, b_rat_, alpha_rat_, beta_rat_;
    Real kfact_{64};
    long next_k_ = 0;
};

Real kappa_of(const WrightParams& p, long prec) { return 1 + p.beta(prec) - p.alpha(prec); }

bool kappa_is_one(const WrightParams& p) {
    if (auto kr = p.kappa_rat()) return *kr == 1;
    return kappa_of(p, 128) == 1;
}

Complex cos_pi_c(const Complex& z, long prec) {
    if (z.im.is_zero()) return Complex(cos_pi(z.re, prec));
    Complex half = Complex::from_rational(Rational(1, 2), prec);
    return sin_pi(z + half, prec);
}

// Finite exponential-series sum A0 * sum_{j<M} (-)^j c_j x^(-j), rational
// inner sum when the coefficient set is exact and x is (binary) rational.
Complex alternating_c_sum(const CoefficientSet& cs, const Real& x, long M, long prec) {
    if (cs.exact) {
        Rational xr;
        mpfr_get_q(xr.get_mpq_t(), x.raw());
        Rational acc(0);
        Rational xpow(1);
        for (long j = 0; j < M; ++j) {
            Rational t = cs.c_rat[static_cast<size_t>(j)] / xpow;
            if (j % 2 == 0)
                acc += t;
            else
                acc -= t;
            xpow *= xr;
        }
        return Complex::from_rational(acc, prec);
    }
    Complex acc(prec);
    Complex invx(1 / x.rounded_to(prec));
    Complex xpow = Complex::from_long(1, prec);
    for (long j = 0; j < M; ++j) {
        Complex t = cs.c[static_cast<size_t>(j)].rounded_to(prec) * xpow;
        acc += (j % 2 == 0) ? t : -t;
        xpow *= invx;
    }
    return acc;
}

}  // namespace

std::string route_name(Route r) {
    switch (r) {
        case Route::ConvergentSeries: return "ConvergentSeries";
        case Route::Theorem1Sector: return "Theorem1Sector";
        case Route::Theorem3Stokes: return "Theorem3Stokes";
        case Route::Theorem4Stokes: return "Theorem4Stokes";
        case Route::PolynomialExact: return "PolynomialExact";
        case Route::ClosedFormFinite: return "ClosedFormFinite";
    }
    return "?";
}

EvalResult eval_series(const WrightParams& p, const Complex& z, const PrecisionCtx& ctx) {
    // kappa sign decides convergence.
    if (auto kr = p.kappa_rat()) {
        if (*kr < 0) throw DivergentSeries("eval_series: kappa < 0, the sum diverges");
    } else if (kappa_of(p, 96) < 0) {
        throw DivergentSeries("eval_series: kappa < 0, the sum diverges");
    }
    bool kappa_zero = p.kappa_rat() ? (*p.kappa_rat() == 0) : kappa_of(p, 96).is_zero();
    Real zmag = abs(z);
    if (kappa_zero) {
        const long probe = 96;
        Real al = p.alpha(probe), be = p.beta(probe);
        Real h = exp(al * log(al) - be * log(be));
        if (!(zmag.rounded_to(probe) * h < 1))
            throw RadiusExceeded("eval_series: |z| is outside the radius of convergence 1/h");
    }

    if (z.is_zero()) {
        // Only the r = 0 term survives.
        PrecisionCtx zctx(ctx.bits, ctx.guard_bits + kSlackBits);
        EvalResult out;
        out.value = gamma(p.a(zctx.total()), zctx) * rgamma(p.b(zctx.total()), zctx);
        out.route = Route::ConvergentSeries;
        out.m_used = 1;
        out.err_estimate = Real(zctx.total());
        return out;
    }

    long auto_guard = series_guard_bits(p, zmag);
    long guard = ctx.guard_bits > auto_guard ? ctx.guard_bits : auto_guard;
    long P = ctx.bits + guard + kSlackBits;
    PrecisionCtx gctx(P < 64 ? 64 : P, 0);

    bool real_path = z.im.is_zero() && p.a(96).im.is_zero() && p.b(96).im.is_zero();

    Complex sum(P);
    Real maxmag(P);
    Real thresh_scale = eps_bits(ctx.bits + guard, P);
    long below = 0;
    long r = 0;
    Real last_mag(P);

    if (real_path) {
        Real al = p.alpha(P), be = p.beta(P);
        Real a = p.a(P).re, b = p.b(P).re;
        Real zr = z.re.rounded_to(P);
        Real zpow = Real::from_long(1, P);
        Real rfact = Real::from_long(1, P);
        Real acc(P);
        for (r = 0; r < kMaxSeriesTerms; ++r) {
            if (r > 0) {
                zpow *= zr;
                rfact *= r;
            }
            Real t = gamma(al * r + a, gctx) * rgamma(be * r + b, gctx) * zpow / rfact;
            acc += t;
            last_mag = abs(t);
            if (last_mag > maxmag) maxmag = last_mag;
            if (!maxmag.is_zero() && last_mag < thresh_scale * maxmag) {
                if (++below >= 20) break;
            } else {
                below = 0;
            }
        }
        sum = Complex(acc);
    } else {
        Complex a = p.a(P), b = p.b(P);
        Real al = p.alpha(P), be = p.beta(P);
        Complex zc = z.rounded_to(P);
        Complex zpow = Complex::from_long(1, P);
        Real rfact = Real::from_long(1, P);
        for (r = 0; r < kMaxSeriesTerms; ++r) {
            if (r > 0) {
                zpow *= zc;
                rfact *= r;
            }
            Complex t = gamma(a + Complex::from_long(r, P) * Complex(al), gctx) *
                        rgamma(b + Complex::from_long(r, P) * Complex(be), gctx) * zpow /
                        rfact;
            sum += t;
            last_mag = abs(t);
            if (last_mag > maxmag) maxmag = last_mag;
            if (!maxmag.is_zero() && last_mag < thresh_scale * maxmag) {
                if (++below >= 20) break;
            } else {
                below = 0;
            }
        }
    }
    if (r >= kMaxSeriesTerms) throw Error("eval_series: term budget exhausted");

    EvalResult out;
    out.value = sum;
    out.route = Route::ConvergentSeries;
    out.m_used = r + 1;
    out.err_estimate = last_mag;
    return out;
}

Complex eval_H(const WrightParams& p, const Complex& z, long m, const PrecisionCtx& ctx) {
    if (m < 1) throw InvalidParams("eval_H: m must be >= 1");
    long P = ctx.total() + kSlackBits;
    HTermGenerator gen(p, z, P);
    Complex sum(P);
    for (long k = 0; k < m; ++k) sum += gen.next();
    return sum.rounded_to(ctx.total());
}

Complex eval_E(const WrightParams& p, const Complex& z, const CoefficientSet& cs, long J,
               const PrecisionCtx& ctx) {
    if (J < 1) throw InvalidParams("eval_E: J must be >= 1");
    if (J > cs.size()) throw InsufficientCoeffs("eval_E: J exceeds the available coefficients");
    long P = ctx.total() + kSlackBits;
    Real al = p.alpha(P), be = p.beta(P);
    Real kappa = 1 + be - al;
    if (!(kappa > 0)) throw InvalidParams("eval_E: kappa must be positive");
    Complex theta = p.a(P) - p.b(P);
    Real h = exp(al * log(al) - be * log(be));
    Complex hz = z.rounded_to(P) * Complex(h);
    Complex Z = exp(log(hz) / Complex(kappa)) * Complex(kappa);
    Complex invZ = inv(Z);
    // Horner over A0 c_j Z^-j
    Complex acc = cs.exact ? Complex::from_rational(cs.c_rat[static_cast<size_t>(J - 1)], P)
                           : cs.c[static_cast<size_t>(J - 1)].rounded_to(P);
    for (long j = J - 2; j >= 0; --j) {
        Complex cj = cs.exact ? Complex::from_rational(cs.c_rat[static_cast<size_t>(j)], P)
                              : cs.c[static_cast<size_t>(j)].rounded_to(P);
        acc = acc * invZ + cj;
    }
    Complex val = exp(theta * log(Z) + Z) * cs.A0.rounded_to(P) * acc;
    return val.rounded_to(ctx.total());
}

long optimal_truncation(const WrightParams& p, const Real& x, const PrecisionCtx& ctx) {
    if (!kappa_is_one(p)) throw KappaNotOne("optimal_truncation: requires kappa = 1");
    if (!(x > 0)) throw InvalidParams("optimal_truncation: x must be positive");
    long P = ctx.bits + kSlackBits;
    double ax = (p.alpha(64) * x.rounded_to(64)).to_double();
    long cap = static_cast<long>(4.0 * ax) + 50;

    HTermGenerator gen(p, Complex(x.rounded_to(P)), P);
    Real prev = abs(gen.next());
    long m = -1;
    for (long k = 1; k <= cap; ++k) {
        Real cur = abs(gen.next());
        if (cur >= prev) {
            m = k - 1;
            break;
        }
        prev = cur;
    }
    if (m < 0)
        throw NoMinimumFound("optimal_truncation: terms still decreasing at the scan cap; "
                             "x too small for the asymptotic regime");
    double dev = static_cast<double>(m) - ax;
    double lim = ax * 0.2 > 5.0 ? ax * 0.2 : 5.0;
    if (dev > lim || dev < -lim)
        throw NoMinimumFound("optimal_truncation: scan minimum is inconsistent with m ~ alpha x");
    return m;
}

EvalResult eval_theorem1(const WrightParams& p, const Complex& z, long m, long J,
                         const PrecisionCtx& ctx) {
    {
        Real kap = kappa_of(p, 96);
        if (!(kap > 0) || !(kap < 2))
            throw KappaOutOfRange("eval_theorem1: requires 0 < kappa < 2");
    }
    long P = ctx.total() + kSlackBits;
    PrecisionCtx wctx(ctx.bits, ctx.guard_bits + kSlackBits);

    // Upper sign for Im z >= 0: H(z e^{-pi i}) = H(-z) with the zero imaginary
    // part normalized to +0 so negation lands on the upper-sign branch.
    Complex zz = z.rounded_to(P);
    if (zz.im.is_zero()) mpfr_set_zero(zz.im.raw(), 1);
    Complex w = -zz;

    Real kappa = kappa_of(p, P);
    Real az = arg(zz);
    bool exp_sector = abs(az) * 2 <= Real::pi(P) * kappa;

    EvalResult out;
    out.route = Route::Theorem1Sector;
    out.m_used = m;

    Complex hval = eval_H(p, w, m, wctx);
    Real herr(P);
    {
        HTermGenerator gen(p, w, P);
        Complex t(P);
        for (long k = 0; k <= m; ++k) t = gen.next();
        herr = abs(t);
    }
    if (exp_sector) {
        CoefficientSet cs = c_coefficients(p, J + 1, wctx);
        Complex eval = eval_E(p, zz, cs, J, wctx);
        out.value = eval + hval;
        out.M_used = J;
        // first omitted exponential term A0 c_J Z^(theta - J) e^Z
        Real h = exp(p.alpha(P) * log(p.alpha(P)) - p.beta(P) * log(p.beta(P)));
        Complex Z = exp(log(zz * Complex(h)) / Complex(kappa)) * Complex(kappa);
        Complex theta = p.a(P) - p.b(P);
        Complex tail = exp(theta * log(Z) + Z) * cs.A0.rounded_to(P) *
                       cs.c[static_cast<size_t>(J)].rounded_to(P) * pow_si(Z, -J);
        out.err_estimate = herr + abs(tail);
    } else {
        out.value = hval;
        out.err_estimate = herr;
    }
    return out;
}

EvalResult eval_stokes_kappa1(const WrightParams& p, const Real& x, long M,
                              const PrecisionCtx& ctx) {
    if (!kappa_is_one(p)) throw KappaNotOne("eval_stokes_kappa1: requires kappa = 1 (alpha = beta)");
    if (!(x > 0)) throw InvalidParams("eval_stokes_kappa1: x must be positive");
    if (M < 1) throw InvalidParams("eval_stokes_kappa1: M must be >= 1");
    long P = ctx.total() + kSlackBits;
    PrecisionCtx wctx(ctx.bits, ctx.guard_bits + kSlackBits);
    Real xr = x.rounded_to(P);
    ThetaClass tc = classify_theta(p, P);

    EvalResult out;

    if (tc.is_integer && tc.n >= 0) {
        // theta = +n: 1Psi1(z) = wp_n(z) e^z exactly.
        Complex mz(-xr);
        Complex val = Complex(exp(-xr));
        if (tc.n >= 1) {
            WrightPolynomial poly = wright_polynomial(p, tc.n, wctx);
            val = poly.eval(mz) * val;
        }
        out.value = val.rounded_to(ctx.total());
        out.route = Route::PolynomialExact;
        out.err_estimate = Real(ctx.total());
        return out;
    }

    if (tc.is_integer) {
        // theta = -n: n algebraic terms plus the cos(pi theta) A-series.
        long n = -tc.n;
        CoefficientSet cs = c_coefficients(p, M + 1, wctx);
        bool finite = cs.termination_index && M > *cs.termination_index;
        long terms = finite ? *cs.termination_index + 1 : M;
        Complex alg = eval_H(p, Complex(xr), n, wctx);
        Complex s_a = alternating_c_sum(cs, xr, terms, P);
        Complex theta = p.a(P) - p.b(P);
        Complex prefac = exp(theta * log(Complex(xr)) - Complex(xr)) * cs.A0.rounded_to(P);
        if (n % 2 == 1) s_a = -s_a;  // cos(pi theta) = (-1)^n
        out.value = (alg + prefac * s_a).rounded_to(ctx.total());
        out.route = finite ? Route::ClosedFormFinite : Route::Theorem4Stokes;
        out.m_used = n;
        out.M_used = terms;
        out.err_estimate = finite ? Real(ctx.total())
                                  : abs(prefac * cs.c[static_cast<size_t>(M)].rounded_to(P) *
                                        pow_si(Complex(xr), -M));
        return out;
    }

    // Non-integer theta: optimally truncated H plus the smoothed expansion.
    long m;
    try {
        m = optimal_truncation(p, xr, ctx);
    } catch (const NoMinimumFound& e) {
        throw AsymptoticRegimeTooSmall(e.what());
    }
    if (m < 1)
        throw AsymptoticRegimeTooSmall("eval_stokes_kappa1: optimal truncation is empty at this x");

    CoefficientSet cs = c_coefficients(p, M + 1, wctx);
    Complex h_o = eval_H(p, Complex(xr), m, wctx);

    Complex s_a = alternating_c_sum(cs, xr, M, P);
    Complex s_b(P);
    Real b_tail_mag(P);
    if (cs.exact) {
        Rational xq;
        mpfr_get_q(xq.get_mpq_t(), xr.raw());
        std::vector<Rational> bn = b_normalized_exact(p, cs, xq, m, M + 1);
        Rational acc(0), xpow(1);
        for (long j = 0; j < M; ++j) {
            Rational t = bn[static_cast<size_t>(j)] / xpow;
            if (j % 2 == 0)
                acc += t;
            else
                acc -= t;
            xpow *= xq;
        }
        s_b = Complex::from_rational(acc, P);
        b_tail_mag = abs(Real::from_rational(bn[static_cast<size_t>(M)], P));
    } else {
        std::vector<Complex> bn = b_normalized(p, cs, xr, m, M + 1, wctx);
        Complex invx(1 / xr);
        Complex xpow = Complex::from_long(1, P);
        for (long j = 0; j < M; ++j) {
            Complex t = bn[static_cast<size_t>(j)].rounded_to(P) * xpow;
            s_b += (j % 2 == 0) ? t : -t;
            xpow *= invx;
        }
        b_tail_mag = abs(bn[static_cast<size_t>(M)]);
    }

    Complex theta = p.a(P) - p.b(P);
    Complex cpt = cos_pi_c(theta, P);
    Complex spt = sin_pi(theta, P);
    Real root = sqrt(Real::pi(P) * 2 * xr);
    Complex brace = cpt * s_a - (spt * 2 / Complex(root)) * s_b;
    Complex prefac = exp(theta * log(Complex(xr)) - xr) * cs.A0.rounded_to(P);
    out.value = (h_o + prefac * brace).rounded_to(ctx.total());
    out.route = Route::Theorem3Stokes;
    out.m_used = m;
    out.M_used = M;
    Real tail = abs(cpt) * abs(cs.c[static_cast<size_t>(M)].rounded_to(P)) +
                abs(spt) * 2 / root * b_tail_mag;
    out.err_estimate = abs(prefac) * tail / pow_si(xr, M).rounded_to(P);
    return out;
}

Complex WrightPolynomial::eval(const Complex& z) const {
    Complex acc = coef.back().rounded_to(z.prec());
    for (long i = static_cast<long>(coef.size()) - 2; i >= 0; --i)
        acc = acc * z + coef[static_cast<size_t>(i)].rounded_to(z.prec());
    return acc;
}

WrightPolynomial wright_polynomial(const WrightParams& p, long n, const PrecisionCtx& ctx) {
    if (n < 1) throw NotPolynomialCase("wright_polynomial: n must be >= 1");
    if (!p.alpha_equals_beta())
        throw NotPolynomialCase("wright_polynomial: requires alpha = beta");
    ThetaClass tc = classify_theta(p, 128);
    if (!tc.is_integer || tc.n != n)
        throw NotPolynomialCase("wright_polynomial: requires theta = n");

    WrightPolynomial out;
    long P = ctx.total();
    if (p.exact()) {
        const Rational& alpha = p.alpha_rat();
        const Rational& b = p.b_rat();
        std::vector<Rational> cur{Rational(1)};
        for (long r = 0; r < n; ++r) {
            std::vector<Rational> next(cur.size() + 1, Rational(0));
            for (size_t i = 0; i < cur.size(); ++i) {
                next[i + 1] += alpha * cur[i];
                next[i] += (b + Rational(r) + alpha * Rational(static_cast<long>(i))) * cur[i];
            }
            cur = std::move(next);
        }
        out.exact = true;
        out.coef_rat = cur;
        for (const Rational& q : cur) out.coef.push_back(Complex::from_rational(q, P));
    } else {
        Complex alpha(p.alpha(P));
        Complex b = p.b(P);
        std::vector<Complex> cur{Complex::from_long(1, P)};
        for (long r = 0; r < n; ++r) {
            std::vector<Complex> next(cur.size() + 1, Complex(P));
            for (size_t i = 0; i < cur.size(); ++i) {
                next[i + 1] += alpha * cur[i];
                next[i] += (b + Complex::from_long(r, P) + alpha * Complex::from_long(static_cast<long>(i), P)) * cur[i];
            }
            cur = std::move(next);
        }
        out.coef = std::move(cur);
    }
    return out;
}

}  // namespace wright
