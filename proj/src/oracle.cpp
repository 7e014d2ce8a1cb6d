#include "wright/oracle.hpp"

#include "wright/errors.hpp"
#include "wright/gammafn.hpp"

namespace wright {

namespace {

constexpr double kMaxHeight = 1.0e4;

struct MBIntegrand {
    long prec;
    PrecisionCtx gctx;
    Complex a, b;
    Real alpha, logx, c;

    MBIntegrand(const WrightParams& p, const Real& x, long prec_, const Real& c_)
        : prec(prec_), gctx(prec_, 0), a(p.a(prec_)), b(p.b(prec_)),
          alpha(p.alpha(prec_)), logx(log(x.rounded_to(prec_))), c(c_.rounded_to(prec_)) {}

    Complex at(const Real& t) const {
        Complex s(c, t.rounded_to(prec));
        Complex as = Complex(alpha) * s;
        Complex val = gamma(s, gctx) * gamma(a - as, gctx) * rgamma(b - as, gctx);
        return val * exp(-(s * Complex(logx)));
    }

    Real magnitude(double t) const { return abs(at(Real::from_double(t, prec))); }
};

}  // namespace

Complex mb_quadrature(const WrightParams& p, const Real& x, const PrecisionCtx& ctx,
                      ContourSpec* used) {
    if (!p.alpha_equals_beta())
        throw InvalidParams("mb_quadrature: requires alpha = beta (kappa = 1)");
    if (!(x > 0)) throw InvalidParams("mb_quadrature: x must be positive");

    long P = ctx.total() + 48;
    Real ra = p.a(P).re;
    Real al = p.alpha(P);
    Real upper = ra / al;  // first pole of Gamma(a - alpha s) on the real axis
    if (!(upper > 0))
        throw ContourFailure("mb_quadrature: no vertical line separates the pole sequences");
    if (upper > 1) upper = Real::from_long(1, P);
    Real c = upper / 2;

    MBIntegrand f(p, x, P, c);

    // Tolerance target: the integrand peak scales the absolute cutoff.
    Real peak = f.magnitude(0.0);
    for (double t : {0.5, 1.0, 2.0, 4.0}) {
        Real m = f.magnitude(t);
        if (m > peak) peak = m;
    }
    Real cutoff = peak * eps_bits(ctx.total() + 8, P);

    // Bracket the contour height where the integrand falls below the cutoff,
    // then bisect onto the crossing.
    double t_hi = 8.0;
    while (f.magnitude(t_hi) >= cutoff) {
        t_hi *= 2.0;
        if (t_hi > kMaxHeight)
            throw TruncationFailure("mb_quadrature: tail bound not met below the height cap");
    }
    double t_lo = t_hi / 2.0;
    for (int i = 0; i < 10; ++i) {
        double mid = 0.5 * (t_lo + t_hi);
        if (f.magnitude(mid) >= cutoff)
            t_lo = mid;
        else
            t_hi = mid;
    }
    double T = t_hi;

    // Trapezoidal step from the analyticity strip |Im t| < d: error ~ e^(-2 pi d / h).
    double cd = c.to_double();
    double d = cd < upper.to_double() - cd ? cd : upper.to_double() - cd;
    if (d > 1.0) d = 1.0;
    double bits_target = static_cast<double>(ctx.total() + 8);
    double h = 2.0 * 3.141592653589793 * d / (bits_target * 0.6931471805599453);

    const bool conj_sym = p.a(96).im.is_zero() && p.b(96).im.is_zero();
    Real tol = eps_bits(ctx.total(), P);

    Complex prev(P);
    Complex result(P);
    long nodes = 0;
    for (int round = 0; round < 4; ++round) {
        long N = static_cast<long>(T / h) + 1;
        Real hr = Real::from_double(T, P) / N;
        Complex acc = f.at(Real(P));  // t = 0 node
        if (conj_sym) {
            // f(conj(s)) = conj(f(s)): fold the two half-lines.
            for (long k = 1; k <= N; ++k) {
                Complex v = f.at(hr * k);
                acc += Complex(v.re * 2, Real(P));
            }
        } else {
            for (long k = 1; k <= N; ++k) {
                acc += f.at(hr * k);
                acc += f.at(-(hr * k));
            }
        }
        result = acc * Complex(hr / (Real::pi(P) * 2));
        nodes = 2 * N + 1;
        if (round > 0 && abs(result - prev) <= tol * abs(result)) break;
        prev = result;
        h *= 0.5;
        if (round == 3)
            throw TruncationFailure("mb_quadrature: self-convergence not reached");
    }

    if (used) {
        used->c_offset = c;
        used->height = Real::from_double(T, P);
        used->nodes = nodes;
    }
    return result.rounded_to(ctx.total());
}

Complex kummer_series(const Complex& a, const Complex& b, const Complex& z,
                      const PrecisionCtx& ctx) {
    if (b.im.is_zero() && b.re.is_integer() && b.re.sgn() <= 0)
        throw InvalidParams("kummer_series: b must not be a non-positive integer");
    long guard = cancellation_guard_bits(abs(z).to_double());
    long P = ctx.bits + (ctx.guard_bits > guard ? ctx.guard_bits : guard) + 32;
    Complex av = a.rounded_to(P), bv = b.rounded_to(P), zv = z.rounded_to(P);
    Complex term = Complex::from_long(1, P);
    Complex sum = term;
    Real maxmag = abs(term);
    Real thresh = eps_bits(P - 32, P);
    long below = 0;
    for (long r = 0; r < 100000; ++r) {
        Complex rr = Complex::from_long(r, P);
        Complex ratio_num = av + rr;
        if (ratio_num.is_zero()) break;  // (a)_r terminates: polynomial case
        term = term * ratio_num * zv / ((bv + rr) * Complex::from_long(r + 1, P));
        sum += term;
        Real mag = abs(term);
        if (mag > maxmag) maxmag = mag;
        if (mag < thresh * maxmag) {
            if (++below >= 20) break;
        } else {
            below = 0;
        }
    }
    return sum.rounded_to(ctx.total());
}

}  // namespace wright
