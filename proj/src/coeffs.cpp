#include "wright/coeffs.hpp"

#include "wright/errors.hpp"
#include "wright/fps.hpp"
#include "wright/gammafn.hpp"

namespace wright {

namespace {

template <class K>
K from_rat(const K& proto, const Rational& q) {
    return ScalarTraits<K>::from_rational_like(proto, q);
}
template <class K>
K from_l(const K& proto, long v) {
    return ScalarTraits<K>::from_long_like(proto, v);
}

// chi-series of Gamma*(lambda s + gamma_c) through order N, chi = 1/(kappa s).
// 1/(lambda s + gamma_c) = (kappa/lambda) chi sum_i (-c chi)^i with
// c = gamma_c kappa / lambda, then compose with Gamma*(z) ~ sum (-)^k g_k z^-k.
template <class K>
Series<K> gstar_chi_series(const K& kappa, const K& lambda, const K& gamma_c, long N,
                           const std::vector<Rational>& stirling) {
    const K& proto = kappa;
    Series<K> u = Series<K>::zero(proto, N);
    K c = gamma_c * kappa / lambda;
    K base = kappa / lambda;
    K pw = from_l(proto, 1);
    for (long i = 1; i <= N; ++i) {
        u[i] = base * pw;
        pw = pw * c;
        pw = -pw;
    }
    auto signed_stirling = [&](long k) {
        Rational v = stirling[static_cast<size_t>(k)];
        if (k % 2 == 1) v = -v;
        return from_rat(proto, v);
    };
    Series<K> s = Series<K>::constant(signed_stirling(N), N);
    for (long k = N - 1; k >= 0; --k) {
        s = s * u;
        s[0] = s[0] + signed_stirling(k);
    }
    return s;
}

// chi-series of the exponent of e(lambda s; gamma_c) =
// exp[(lambda s + gamma_c - 1/2) log(1 + gamma_c/(lambda s)) - gamma_c].
// The constant term cancels exactly; orders 1..N survive.
template <class K>
Series<K> efactor_exponent(const K& kappa, const K& lambda, const K& gamma_c, long N) {
    const K& proto = kappa;
    Series<K> e = Series<K>::zero(proto, N);
    K c = gamma_c * kappa / lambda;
    if (ScalarTraits<K>::is_zero(c)) return e;
    K lk = lambda / kappa;
    K gh = gamma_c - from_rat(proto, Rational(1, 2));
    K cp = c;
    for (long i = 1; i <= N + 1; ++i) {
        // (-1)^(i+1) c^i / i
        K s = cp / from_l(proto, i);
        if (i % 2 == 0) s = -s;
        if (i >= 2) e[i - 1] = e[i - 1] + lk * s;
        if (i <= N) e[i] = e[i] + gh * s;
        cp = cp * c;
    }
    return e;
}

template <class K>
bool near_one(const K& v, long prec);
template <>
bool near_one<Rational>(const Rational& v, long) { return v == 1; }
template <>
bool near_one<Complex>(const Complex& v, long prec) {
    Complex one = Complex::from_long(1, prec);
    return rel_err(v, one) < eps_bits(prec / 2, prec);
}

template <class K>
std::vector<K> c_match_impl(const K& a, const K& b, const K& alpha, const K& beta, long M,
                            long check_prec) {
    const K one = from_l(a, 1);
    const K kappa = one + beta - alpha;
    const K theta = a - b;
    const long N = M - 1;
    std::vector<Rational> stirling = stirling_coeffs(N);

    const K one_minus_b = K(one - b);
    const K one_minus_a = K(one - a);
    Series<K> ups = gstar_chi_series(kappa, one, ScalarTraits<K>::zero_like(a), N, stirling) *
                    gstar_chi_series(kappa, beta, one_minus_b, N, stirling) /
                    (gstar_chi_series(kappa, kappa, theta, N, stirling) *
                     gstar_chi_series(kappa, alpha, one_minus_a, N, stirling));
    Series<K> expo = efactor_exponent(kappa, one, ScalarTraits<K>::zero_like(a), N) +
                     efactor_exponent(kappa, beta, one_minus_b, N) -
                     efactor_exponent(kappa, kappa, theta, N) -
                     efactor_exponent(kappa, alpha, one_minus_a, N);
    Series<K> lhs = fps_exp(expo) * ups;
    if (!near_one(lhs[0], check_prec))
        throw MatchFailure("coefficient matching: constant term of R*Upsilon is not 1");

    // Basis 1/(1-kappa s-theta)_j = (-chi)^j prod_{i<j} (1-(1-theta+i)chi)^(-1):
    // unit triangular in chi with diagonal (-1)^j.
    const K minus_one = K(-one);
    std::vector<Series<K>> basis;
    basis.push_back(Series<K>::constant(one, N));
    for (long j = 1; j <= N; ++j) {
        K q = one - theta + from_l(a, j - 1);
        Series<K> geom = Series<K>::zero(kappa, N);
        K pw = one;
        for (long i = 0; i <= N; ++i) {
            geom[i] = pw;
            pw = pw * q;
        }
        basis.push_back(fps_shift_up(basis.back() * geom, 1) * minus_one);
    }

    std::vector<K> c;
    c.reserve(static_cast<size_t>(M));
    c.push_back(lhs[0]);
    for (long m = 1; m <= N; ++m) {
        K acc = lhs[m];
        for (long j = 0; j < m; ++j) acc = acc - c[static_cast<size_t>(j)] * basis[static_cast<size_t>(j)][m];
        c.push_back(acc / basis[static_cast<size_t>(m)][m]);
    }
    return c;
}

// Termination index when alpha = beta and theta is an integer (Appendix
// cover-up analysis); nullopt when the series does not terminate.
std::optional<long> termination_for(const WrightParams& p) {
    if (!p.exact()) return std::nullopt;
    if (p.alpha_rat() != p.beta_rat()) return std::nullopt;
    Rational theta = *p.theta_rat();
    if (!rat_is_integer(theta)) return std::nullopt;
    long n = rat_to_long(theta);
    if (n >= 0) return n;
    // theta = -n: finite only for alpha = 1/q, a = p/q.
    const Rational& alpha = p.alpha_rat();
    const Rational& a = p.a_rat();
    if (alpha.get_num() != 1 || a <= 0) return std::nullopt;
    mpz_class q = alpha.get_den();
    if (a.get_den() != q) return std::nullopt;
    if (!a.get_num().fits_slong_p()) return std::nullopt;
    long pp = a.get_num().get_si();
    long qq = q.get_si();
    long nn = -n;
    return pp - qq + nn * (qq - 1);
}

// g_{2k} generator over one scalar kind. Returns g_0, g_2, ..., g_{2(N-1)}.
template <class K>
std::vector<K> g_even_gen_impl(const K& mu, const K& delta, long N) {
    if (N < 1) throw InvalidParams("g_even_generate: N must be >= 1");
    const K one = from_l(mu, 1);
    const long W = 2 * N;

    // q(t) = 2(tau - log tau - 1)/t^2 with tau = 1+t; w = t sqrt(q).
    Series<K> q = Series<K>::zero(mu, W - 1);
    for (long j = 0; j <= W - 1; ++j)
        q[j] = from_rat(mu, rat_make((j % 2 == 0) ? 2 : -2, j + 2));
    Series<K> root = fps_pow(q, from_rat(mu, Rational(1, 2)));
    Series<K> w = Series<K>::zero(mu, W);
    for (long i = 1; i <= W; ++i) w[i] = root[i - 1];

    Series<K> t_of_w = fps_reversion(w);
    if (!ScalarTraits<K>::is_one(t_of_w[1]))
        throw BranchError("g_even_generate: tau'(0) != 1 on the chosen branch");
    Series<K> tau = t_of_w;
    tau[0] = one;

    Series<K> dtau = fps_derivative(tau);              // order W-1
    Series<K> tau_mu = fps_pow(tau, mu);               // order W
    Series<K> num = Series<K>::constant(one, W) - tau_mu;  // 1 - tau^mu, valuation 1
    Series<K> u = fps_shift_down(num, 1) * K(-(one / mu));  // u(0) = 1
    if (!ScalarTraits<K>::is_one(u[0]))
        throw BranchError("g_even_generate: (1-tau^mu)/(-mu w) does not start at 1");

    Series<K> pser = fps_pow(tau, K(delta - one)) * dtau * fps_inv(u);
    // mu tau^(delta-1) (1-tau^mu)^(-1) dtau/dw = -P(w)/w, so g_k = -[w^(k+1)] P.
    std::vector<K> g;
    g.reserve(static_cast<size_t>(N));
    for (long k = 0; k <= 2 * (N - 1); k += 2) g.push_back(-pser[k + 1]);
    return g;
}

// The printed ghat polynomials, k <= 3.
template <class K>
std::vector<K> g_even_table_impl(const K& mu, const K& delta, long N) {
    if (N < 1) throw InvalidParams("g_even_table: N must be >= 1");
    if (N > 4) throw OrderTooHigh("g_even_table: only ghat_0..ghat_6 are available");
    auto R = [&](long num, long den = 1) { return from_rat(mu, rat_make(num, den)); };
    const K mu2 = mu * mu;
    const K mu4 = mu2 * mu2;
    const K mu6 = mu4 * mu2;
    const K d = delta;
    const K d2 = d * d, d3 = d2 * d, d4 = d3 * d, d5 = d4 * d, d6 = d5 * d, d7 = d6 * d;

    std::vector<K> g;
    g.push_back(R(1, 6) - d + mu * R(1, 2));
    if (N >= 2) {
        K ghat = (R(2) + mu * R(45) + mu2 * R(45) - d * (R(1) + mu * R(3) + mu2) * R(90) +
                  d2 * (R(1) + mu) * R(270) - d3 * R(180)) *
                 R(1, 30);
        g.push_back(ghat * R(1, 36));
    }
    if (N >= 3) {
        K ghat = (R(-65) + mu * R(105) + mu2 * R(630) - mu4 * R(210) -
                  d * (R(5) + mu * R(90) + mu2 * R(100) - mu4 * R(6)) * R(42) +
                  d2 * (R(3) + mu * R(10) + mu2 * R(5)) * R(1260) -
                  d3 * (R(10) + mu * R(15) + mu2 * R(3)) * R(840) +
                  d4 * (R(5) + mu * R(3)) * R(1260) - d5 * R(1512)) *
                 R(1, 140);
        g.push_back(ghat * R(1, 1296));
    }
    if (N >= 4) {
        K ghat = ((R(-16) - mu * R(417) + mu2 * R(225) - mu4 * R(1008) + mu6 * R(180)) * R(7) -
                  d * (R(-973) + mu * R(1575) + mu2 * R(9555) - mu4 * R(4410) + mu6 * R(180)) *
                      R(6) +
                  d2 * (R(5) + mu * R(91) + mu2 * R(112) - mu4 * R(14)) * R(1890) -
                  d3 * (R(91) + mu * R(336) + mu2 * R(210) - mu4 * R(6)) * R(1260) +
                  d4 * (R(8) + mu * R(15) + mu2 * R(5)) * R(26460) -
                  d5 * (R(7) + mu * R(7) + mu2) * R(22680) + d6 * (R(7) + mu * R(3)) * R(7560) -
                  d7 * R(6480)) *
                 R(1, 700);
        g.push_back(ghat * R(1, 46656));
    }
    return g;
}

// (1/2)_k as exact rationals.
std::vector<Rational> half_pochhammers(long K) {
    std::vector<Rational> v(static_cast<size_t>(K) + 1);
    v[0] = 1;
    for (long k = 1; k <= K; ++k) v[static_cast<size_t>(k)] = v[static_cast<size_t>(k - 1)] * rat_make(2 * k - 1, 2);
    return v;
}

template <class K>
std::vector<K> b_normalized_impl(const std::vector<K>& c, const K& mu, const K& theta,
                                 const K& a, const K& x, long m, long M) {
    if (static_cast<long>(c.size()) < M)
        throw InsufficientCoeffs("B_coefficients: need at least M normalised coefficients");
    const K nu = mu * (a + from_l(mu, m)) + theta;
    std::vector<Rational> halfp = half_pochhammers(M - 1);

    // g_{2k}(mu; i) with delta_i = nu - x - i, for i = 0..M-1, k <= M-1-i.
    std::vector<std::vector<K>> g(static_cast<size_t>(M));
    for (long i = 0; i < M; ++i) {
        K delta_i = nu - x - from_l(mu, i);
        g[static_cast<size_t>(i)] = g_even_gen_impl(mu, delta_i, M - i);
    }

    std::vector<K> b;
    b.reserve(static_cast<size_t>(M));
    for (long j = 0; j < M; ++j) {
        K acc = ScalarTraits<K>::zero_like(mu);
        Rational pow2(1);
        for (long k = 0; k <= j; ++k) {
            Rational factor = pow2 * halfp[static_cast<size_t>(k)];
            acc = acc + from_rat(mu, factor) * c[static_cast<size_t>(j - k)] *
                            g[static_cast<size_t>(j - k)][static_cast<size_t>(k)];
            pow2 *= -2;
        }
        b.push_back(acc);
    }
    return b;
}

}  // namespace

Complex leading_A0(const WrightParams& p, const PrecisionCtx& ctx) {
    long prec = ctx.total() + 32;
    Real al = p.alpha(prec), be = p.beta(prec);
    Real kappa = 1 + be - al;
    if (!(kappa > 0)) throw InvalidParams("leading_A0: kappa must be positive");
    Complex a = p.a(prec), b = p.b(prec);
    Complex theta = a - b;
    Real half = Real::from_rational(Rational(1, 2), prec);
    Complex expo = (Complex(-half) - theta) * Complex(log(kappa)) +
                   (a - Complex(half)) * Complex(log(al)) +
                   (Complex(half) - b) * Complex(log(be));
    return exp(expo).rounded_to(ctx.total());
}

std::pair<Complex, Complex> leading_A0_A1(const WrightParams& p, const PrecisionCtx& ctx) {
    long prec = ctx.total() + 32;
    Complex A0 = leading_A0(p, ctx).rounded_to(prec);
    Real al = p.alpha(prec), be = p.beta(prec);
    Real kappa = 1 + be - al;
    Complex a = p.a(prec), b = p.b(prec);
    Complex theta = a - b;
    Complex one = Complex::from_long(1, prec);
    Rational sixth(1, 6);
    Complex term_a = (a * a - a + Complex::from_rational(sixth, prec)) / Complex(al);
    Complex term_b = (b * b - b + Complex::from_rational(sixth, prec)) / Complex(be);
    Complex term_k = (one - Complex(kappa) - theta * (one - theta) * 6) / Complex(kappa * 6);
    Complex A1 = A0 * Complex(kappa) * (term_a - term_b + term_k) / 2;
    return {A0.rounded_to(ctx.total()), A1.rounded_to(ctx.total())};
}

Rational leading_c1_exact(const WrightParams& p) {
    if (!p.exact()) throw Error("leading_c1_exact: parameters are not all rational");
    const Rational &a = p.a_rat(), &b = p.b_rat(), &al = p.alpha_rat(), &be = p.beta_rat();
    Rational kappa = Rational(1) + be - al;
    if (kappa <= 0) throw InvalidParams("leading_c1_exact: kappa must be positive");
    Rational theta = a - b;
    Rational sixth(1, 6);
    Rational term = (a * a - a + sixth) / al - (b * b - b + sixth) / be +
                    (Rational(1) - kappa - Rational(6) * theta * (Rational(1) - theta)) /
                        (Rational(6) * kappa);
    return kappa * term / 2;
}

CoefficientSet c_coefficients(const WrightParams& p, long M, const PrecisionCtx& ctx) {
    if (M < 1) throw InvalidParams("c_coefficients: M must be >= 1");
    if (auto kr = p.kappa_rat()) {
        if (*kr <= 0) throw InvalidParams("c_coefficients: kappa must be positive");
    } else {
        Real kap = 1 + p.beta(96) - p.alpha(96);
        if (!(kap > 0)) throw InvalidParams("c_coefficients: kappa must be positive");
    }

    CoefficientSet out;
    out.A0 = leading_A0(p, ctx);
    out.termination_index = termination_for(p);

    if (p.exact()) {
        std::vector<Rational> c = c_match_impl<Rational>(p.a_rat(), p.b_rat(), p.alpha_rat(),
                                                         p.beta_rat(), M, 0);
        if (out.termination_index) {
            for (long j = *out.termination_index + 1; j < M; ++j)
                if (c[static_cast<size_t>(j)] != 0)
                    throw MatchFailure("terminating series produced a nonzero coefficient past "
                                       "the termination index");
        }
        out.exact = true;
        out.c_rat = std::move(c);
        out.c.reserve(out.c_rat.size());
        for (const Rational& q : out.c_rat)
            out.c.push_back(Complex::from_rational(q, ctx.total()));
        return out;
    }

    // Mixed or floating parameters: run the matching at 4x the requested
    // working precision.
    long p4 = 4 * ctx.total();
    Complex a = p.a(p4), b = p.b(p4);
    Complex alpha(p.alpha(p4)), beta(p.beta(p4));
    std::vector<Complex> c = c_match_impl<Complex>(a, b, alpha, beta, M, p4);
    out.exact = false;
    out.c.reserve(c.size());
    for (Complex& v : c) out.c.push_back(v.rounded_to(ctx.total()));
    return out;
}

Rational coverup_closed_form(const WrightParams& p) {
    if (!p.exact()) throw NotApplicable("coverup: requires rational parameters");
    if (p.alpha_rat() != p.beta_rat()) throw NotApplicable("coverup: requires alpha = beta");
    Rational theta = *p.theta_rat();
    if (!rat_is_integer(theta)) throw NotApplicable("coverup: requires integer theta");
    long n = rat_to_long(theta);
    const Rational& alpha = p.alpha_rat();
    if (n >= 1) {
        return rat_pow(alpha, -n) * rat_pochhammer(p.b_rat(), n);
    }
    if (n <= -1) {
        std::optional<long> T = termination_for(p);
        if (!T) throw NotApplicable("coverup: theta=-n needs alpha=1/q, a=p/q");
        long J = *T;
        Rational val = rat_pow(alpha, -n - 1) * rat_pochhammer(Rational(-n), J);
        return (J % 2 == 0) ? val : -val;
    }
    throw NotApplicable("coverup: theta = 0 has no terminal coefficient formula");
}

GCoeffs g_even_table(const Rational& mu, const Rational& delta, long N) {
    GCoeffs out;
    out.exact = true;
    out.mu_rat = mu;
    out.delta_rat = delta;
    out.N = N;
    out.g_even_rat = g_even_table_impl<Rational>(mu, delta, N);
    for (const Rational& q : out.g_even_rat) out.g_even.push_back(Complex::from_rational(q, 128));
    return out;
}

GCoeffs g_even_table(const Complex& mu, const Complex& delta, long N, long prec) {
    GCoeffs out;
    out.mu = mu.rounded_to(prec);
    out.delta = delta.rounded_to(prec);
    out.N = N;
    out.g_even = g_even_table_impl<Complex>(out.mu, out.delta, N);
    return out;
}

GCoeffs g_even_generate(const Rational& mu, const Rational& delta, long N) {
    GCoeffs out;
    out.exact = true;
    out.mu_rat = mu;
    out.delta_rat = delta;
    out.N = N;
    out.g_even_rat = g_even_gen_impl<Rational>(mu, delta, N);
    for (const Rational& q : out.g_even_rat) out.g_even.push_back(Complex::from_rational(q, 128));
    return out;
}

GCoeffs g_even_generate(const Complex& mu, const Complex& delta, long N, long prec) {
    GCoeffs out;
    out.mu = mu.rounded_to(prec);
    out.delta = delta.rounded_to(prec);
    out.N = N;
    out.g_even = g_even_gen_impl<Complex>(out.mu, out.delta, N);
    return out;
}

std::vector<Rational> b_normalized_exact(const WrightParams& p, const CoefficientSet& cs,
                                         const Rational& x, long m, long M) {
    if (!cs.exact || !p.exact())
        throw Error("b_normalized_exact: requires the exact coefficient path");
    Rational mu = *p.mu_rat();
    Rational theta = *p.theta_rat();
    return b_normalized_impl<Rational>(cs.c_rat, mu, theta, p.a_rat(), x, m, M);
}

std::vector<Complex> b_normalized(const WrightParams& p, const CoefficientSet& cs, const Real& x,
                                  long m, long M, const PrecisionCtx& ctx) {
    long prec = ctx.total() + 32;
    std::vector<Complex> c;
    c.reserve(cs.c.size());
    for (size_t i = 0; i < cs.c.size(); ++i)
        c.push_back(cs.exact ? Complex::from_rational(cs.c_rat[i], prec)
                             : cs.c[i].rounded_to(prec));
    Complex mu(1 / p.alpha(prec));
    Complex theta = p.a(prec) - p.b(prec);
    std::vector<Complex> b = b_normalized_impl<Complex>(c, mu, theta, p.a(prec),
                                                        Complex(x.rounded_to(prec)), m, M);
    for (Complex& v : b) v = v.rounded_to(ctx.total());
    return b;
}

std::vector<Complex> B_coefficients(const WrightParams& p, const CoefficientSet& cs,
                                    const Real& x, long m, long M, const PrecisionCtx& ctx) {
    std::vector<Complex> b = b_normalized(p, cs, x, m, M, ctx);
    Complex A0 = leading_A0(p, ctx);
    for (Complex& v : b) v = v * A0;
    return b;
}

}  // namespace wright
