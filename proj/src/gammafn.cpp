#include "wright/gammafn.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "wright/errors.hpp"
#include "wright/fps.hpp"

namespace wright {

namespace {

std::mutex g_bernoulli_mutex;
std::vector<Rational>& bernoulli_cache() {
    static std::vector<Rational> cache{Rational(1)};
    return cache;
}

// Precision-dependent machinery for the Stirling series: raise |z| above the
// threshold where the optimally truncated series meets the target precision
// (min term ~ e^(-2*pi*|z|)), then sum log Gamma*(w) = sum b_k w^(1-2k).
struct StirlingPlan {
    long work_prec;
    double threshold;
    std::vector<Real> coeff;  // b_k = B_2k / (2k(2k-1)), k = 1..
    Real half_log_2pi;

    explicit StirlingPlan(long prec)
        : work_prec(prec),
          threshold(0.1103 * static_cast<double>(prec) + 16.0),
          half_log_2pi(prec) {
        long kmax = static_cast<long>(3.3 * threshold) + 8;
        std::vector<Rational> B = bernoulli_numbers(2 * kmax);
        coeff.reserve(static_cast<size_t>(kmax));
        for (long k = 1; k <= kmax; ++k) {
            Rational b = B[static_cast<size_t>(2 * k)] / Rational(2 * k * (2 * k - 1));
            coeff.push_back(Real::from_rational(b, prec));
        }
        Real two_pi = Real::pi(prec) * 2;
        half_log_2pi = log(two_pi) / 2;
    }
};

const StirlingPlan& plan_for(long work_prec) {
    static std::mutex mu;
    static std::map<long, std::unique_ptr<StirlingPlan>> plans;
    // Quantize so nearby precisions share a plan.
    long key = ((work_prec + 63) / 64) * 64;
    std::lock_guard<std::mutex> lock(mu);
    auto it = plans.find(key);
    if (it == plans.end()) it = plans.emplace(key, std::make_unique<StirlingPlan>(key)).first;
    return *it->second;
}

template <class T>
bool is_nonpositive_integer(const T& z);

template <>
bool is_nonpositive_integer<Real>(const Real& x) {
    return x.is_integer() && x.sgn() <= 0;
}
template <>
bool is_nonpositive_integer<Complex>(const Complex& z) {
    return z.im.is_zero() && is_nonpositive_integer<Real>(z.re);
}

Real re_part(const Real& x) { return x; }
const Real& re_part(const Complex& z) { return z.re; }

Real abs_val(const Real& x) { return abs(x); }
Real abs_val(const Complex& z) { return abs(z); }

Real im_mag(const Real& x) { return Real(x.prec()); }
Real im_mag(const Complex& z) { return abs(z.im); }

// log Gamma(w) for w already in the Stirling region (Re w >> 0).
template <class T>
T stirling_log_gamma(const T& w, const StirlingPlan& plan) {
    long p = plan.work_prec;
    T logw = log(w);
    T half = T(Real::from_rational(Rational(1, 2), p));
    T result = (w - half) * logw - w + T(plan.half_log_2pi);
    T w2 = w * w;
    T zpow = inv(w);
    T tail = ScalarTraits<T>::zero_like(w);
    Real bound = eps_bits(p + 4, p);
    for (const Real& bk : plan.coeff) {
        T term = zpow * bk;
        tail = tail + term;
        if (abs_val(term) < bound * abs_val(result)) break;
        zpow = zpow / w2;
    }
    return result + tail;
}

template <>
Real stirling_log_gamma<Real>(const Real& w, const StirlingPlan& plan) {
    long p = plan.work_prec;
    Real logw = log(w);
    Real result = (w - Real::from_rational(Rational(1, 2), p)) * logw - w + plan.half_log_2pi;
    Real w2 = w * w;
    Real zpow = 1 / w;
    Real bound = eps_bits(p + 4, p);
    for (const Real& bk : plan.coeff) {
        Real term = zpow * bk;
        result += term;
        if (abs(term) < bound * abs(result)) break;
        zpow /= w2;
    }
    return result;
}

template <class T>
T gamma_impl(const T& z, long out_prec) {
    if (is_nonpositive_integer(z)) throw PoleError("gamma: pole at non-positive integer");
    long wp = out_prec + 64;
    const StirlingPlan& plan = plan_for(wp);
    long p = plan.work_prec;
    T zw = z.rounded_to(p);

    // Reflection into Re z >= 1/2.
    if (re_part(zw) < Real::from_rational(Rational(1, 2), p)) {
        T one_minus = T(Real::from_long(1, p)) - zw;
        T g = gamma_impl(one_minus, out_prec);
        T s = sin_pi(zw, p);
        T val = T(Real::pi(p)) / (s * g);
        return val.rounded_to(out_prec);
    }

    // Raise until |z+n| clears the Stirling threshold.
    Real thr = Real::from_double(plan.threshold, p);
    long n = 0;
    if (abs_val(zw) < thr) {
        Real imag = im_mag(zw);
        Real need(p);
        if (imag < thr) {
            mpfr_sqr(need.raw(), thr.raw(), MPFR_RNDN);
            Real i2 = imag * imag;
            need = sqrt(need - i2) - re_part(zw);
            if (need.sgn() > 0) n = need.to_long() + 1;
        }
    }
    T w = zw + T(Real::from_long(n, p));
    T lg = stirling_log_gamma(w, plan);
    T val = exp(lg);
    for (long i = 0; i < n; ++i) val = val / (zw + T(Real::from_long(i, p)));
    return val.rounded_to(out_prec);
}

}  // namespace

std::vector<Rational> bernoulli_numbers(long K) {
    if (K < 0) throw InvalidParams("bernoulli_numbers: K must be >= 0");
    std::lock_guard<std::mutex> lock(g_bernoulli_mutex);
    std::vector<Rational>& cache = bernoulli_cache();
    for (long n = static_cast<long>(cache.size()); n <= K; ++n) {
        if (n > 2 && (n % 2) == 1) {
            cache.emplace_back(0);
            continue;
        }
        Rational acc(0);
        for (long j = 0; j < n; ++j)
            acc += rat_binomial(static_cast<unsigned long>(n + 1), static_cast<unsigned long>(j)) *
                   cache[static_cast<size_t>(j)];
        cache.push_back(-acc / Rational(n + 1));
    }
    return std::vector<Rational>(cache.begin(), cache.begin() + K + 1);
}

std::vector<Rational> stirling_coeffs(long K) {
    if (K < 0) throw InvalidParams("stirling_coeffs: K must be >= 0");
    static std::mutex mu;
    static std::vector<Rational> cache;
    std::lock_guard<std::mutex> lock(mu);
    if (static_cast<long>(cache.size()) <= K) {
        // log Gamma*(z) = sum_{k>=1} B_2k/(2k(2k-1)) z^(1-2k); exponentiate
        // formally in u = 1/z and read gamma_k = (-)^k [u^k].
        std::vector<Rational> B = bernoulli_numbers(2 * K + 2);
        Series<Rational> f = Series<Rational>::zero(Rational(0), K);
        for (long k = 1; 2 * k - 1 <= K; ++k)
            f[2 * k - 1] = B[static_cast<size_t>(2 * k)] / Rational(2 * k * (2 * k - 1));
        Series<Rational> g = fps_exp(f);
        cache.clear();
        cache.reserve(static_cast<size_t>(K) + 1);
        for (long k = 0; k <= K; ++k)
            cache.push_back((k % 2 == 0) ? g[k] : -g[k]);
    }
    return std::vector<Rational>(cache.begin(), cache.begin() + K + 1);
}

namespace {
// Parity of an integer-valued Real.
bool is_odd_integer_value(const Real& n) {
    if (n.is_zero()) return false;
    Real h = n / 2;
    return !h.is_integer();
}
}  // namespace

Real sin_pi(const Real& x, long prec) {
    // Exact zeros at integers; reduce to |r| <= 1/2 before multiplying by pi.
    Real xr = x.rounded_to(prec + 32);
    if (xr.is_integer()) return Real(prec);
    Real n = round_nearest(xr);
    Real r = xr - n;  // in [-1/2, 1/2]
    Real s = sin(Real::pi(prec + 32) * r);
    if (is_odd_integer_value(n)) s = -s;
    return s.rounded_to(prec);
}

Real cos_pi(const Real& x, long prec) {
    Real xr = x.rounded_to(prec + 32);
    Real twice = xr * 2;
    if (twice.is_integer() && !xr.is_integer()) return Real(prec);  // half-integers
    Real n = round_nearest(xr);
    Real r = xr - n;
    Real c = cos(Real::pi(prec + 32) * r);
    if (is_odd_integer_value(n)) c = -c;
    return c.rounded_to(prec);
}

Complex sin_pi(const Complex& z, long prec) {
    if (z.im.is_zero()) return Complex(sin_pi(z.re, prec));
    long p = prec + 32;
    Real n = round_nearest(z.re.rounded_to(p));
    Real r = z.re.rounded_to(p) - n;
    Real pi = Real::pi(p);
    Real a = pi * r;
    Real b = pi * z.im.rounded_to(p);
    // sin(pi(n+r) + i b) = (-1)^n [sin(pi r) cosh b + i cos(pi r) sinh b]
    Complex val(sin(a) * cosh(b), cos(a) * sinh(b));
    if (is_odd_integer_value(n)) val = -val;
    return val.rounded_to(prec);
}

Complex gamma(const Complex& z, const PrecisionCtx& ctx) {
    if (z.im.is_zero()) return Complex(gamma_impl<Real>(z.re, ctx.total()));
    return gamma_impl<Complex>(z, ctx.total());
}

Real gamma(const Real& x, const PrecisionCtx& ctx) { return gamma_impl<Real>(x, ctx.total()); }

Complex rgamma(const Complex& z, const PrecisionCtx& ctx) {
    if (is_nonpositive_integer<Complex>(z)) return Complex(ctx.total());
    return inv(gamma(z, ctx));
}

Real rgamma(const Real& x, const PrecisionCtx& ctx) {
    if (is_nonpositive_integer<Real>(x)) return Real(ctx.total());
    return 1 / gamma(x, ctx);
}

Complex gamma_star(const Complex& z, const PrecisionCtx& ctx) {
    if (z.im.is_zero() && z.re.sgn() <= 0)
        throw PoleError("gamma_star: argument on the non-positive real axis");
    long p = ctx.total() + 64;
    Complex zw = z.rounded_to(p);
    Complex g = gamma_impl<Complex>(zw, p);
    Real half = Real::from_rational(Rational(1, 2), p);
    // Gamma(z) (2pi)^(-1/2) exp(z + (1/2 - z) log z)
    Complex expo = zw + (Complex(half) - zw) * log(zw);
    Complex val = g * exp(expo) / sqrt(Real::pi(p) * 2);
    return val.rounded_to(ctx.total());
}

}  // namespace wright
