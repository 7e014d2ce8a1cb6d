#pragma once

#include <algorithm>
#include <vector>

#include "wright/complexhp.hpp"
#include "wright/errors.hpp"
#include "wright/rational.hpp"

namespace wright {

// Scalar plumbing for series coefficients: exact rationals or configurable-
// precision values. Floating scalars need an exemplar to carry precision, so
// constructors go through an existing value of the same kind.
template <class K>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
    static constexpr bool exact = true;
    static Rational zero_like(const Rational&) { return Rational(0); }
    static Rational from_long_like(const Rational&, long v) { return Rational(v); }
    static Rational from_rational_like(const Rational&, const Rational& q) { return q; }
    static bool is_zero(const Rational& x) { return x == 0; }
    static bool is_one(const Rational& x) { return x == 1; }
};

template <>
struct ScalarTraits<Complex> {
    static constexpr bool exact = false;
    static Complex zero_like(const Complex& p) { return Complex(p.prec()); }
    static Complex from_long_like(const Complex& p, long v) {
        return Complex::from_long(v, p.prec());
    }
    static Complex from_rational_like(const Complex& p, const Rational& q) {
        return Complex::from_rational(q, p.prec());
    }
    static bool is_zero(const Complex& x) { return x.is_zero(); }
    static bool is_one(const Complex& x) { return x.re == 1 && x.im.is_zero(); }
};

template <>
struct ScalarTraits<Real> {
    static constexpr bool exact = false;
    static Real zero_like(const Real& p) { return Real(p.prec()); }
    static Real from_long_like(const Real& p, long v) { return Real::from_long(v, p.prec()); }
    static Real from_rational_like(const Real& p, const Rational& q) {
        return Real::from_rational(q, p.prec());
    }
    static bool is_zero(const Real& x) { return x.is_zero(); }
    static bool is_one(const Real& x) { return x == 1; }
};

// Truncated formal power series: coefficients of x^0..x^N, known through
// order N. Binary operations truncate to the smaller operand order.
template <class K>
class Series {
  public:
    using Traits = ScalarTraits<K>;

    Series() : c_(1, K()) {}
    explicit Series(std::vector<K> coeffs) : c_(std::move(coeffs)) {
        if (c_.empty()) throw Error("Series: empty coefficient list");
    }
    // Zero series of the given order, scalar kind taken from the exemplar.
    static Series zero(const K& proto, long order) {
        return Series(std::vector<K>(static_cast<size_t>(order) + 1, Traits::zero_like(proto)));
    }
    static Series constant(const K& value, long order) {
        Series s = zero(value, order);
        s.c_[0] = value;
        return s;
    }
    // The series x (when order >= 1).
    static Series identity(const K& proto, long order) {
        Series s = zero(proto, order);
        if (order >= 1) s.c_[1] = Traits::from_long_like(proto, 1);
        return s;
    }

    long order() const { return static_cast<long>(c_.size()) - 1; }
    const K& operator[](long i) const { return c_[static_cast<size_t>(i)]; }
    K& operator[](long i) { return c_[static_cast<size_t>(i)]; }
    const std::vector<K>& coeffs() const { return c_; }
    const K& proto() const { return c_[0]; }

    Series truncated(long order) const {
        if (order >= this->order()) return *this;
        return Series(std::vector<K>(c_.begin(), c_.begin() + order + 1));
    }

    // Lowest nonzero index, or order()+1 when identically zero.
    long valuation() const {
        for (long i = 0; i <= order(); ++i)
            if (!Traits::is_zero(c_[static_cast<size_t>(i)])) return i;
        return order() + 1;
    }

  private:
    std::vector<K> c_;
};

template <class K>
Series<K> operator+(const Series<K>& f, const Series<K>& g) {
    long n = std::min(f.order(), g.order());
    Series<K> r = Series<K>::zero(f.proto(), n);
    for (long i = 0; i <= n; ++i) r[i] = f[i] + g[i];
    return r;
}

template <class K>
Series<K> operator-(const Series<K>& f, const Series<K>& g) {
    long n = std::min(f.order(), g.order());
    Series<K> r = Series<K>::zero(f.proto(), n);
    for (long i = 0; i <= n; ++i) r[i] = f[i] - g[i];
    return r;
}

template <class K>
Series<K> operator*(const Series<K>& f, const K& s) {
    Series<K> r = f;
    for (long i = 0; i <= r.order(); ++i) r[i] = r[i] * s;
    return r;
}

// Cauchy product truncated to the smaller order.
template <class K>
Series<K> operator*(const Series<K>& f, const Series<K>& g) {
    long n = std::min(f.order(), g.order());
    Series<K> r = Series<K>::zero(f.proto(), n);
    for (long i = 0; i <= n; ++i) {
        K acc = ScalarTraits<K>::zero_like(f.proto());
        for (long j = 0; j <= i; ++j) acc = acc + f[j] * g[i - j];
        r[i] = acc;
    }
    return r;
}

// Multiplicative inverse; constant term must be nonzero.
template <class K>
Series<K> fps_inv(const Series<K>& f) {
    if (ScalarTraits<K>::is_zero(f[0])) throw BadConstantTerm("fps_inv: zero constant term");
    long n = f.order();
    Series<K> r = Series<K>::zero(f.proto(), n);
    K inv0 = ScalarTraits<K>::from_long_like(f.proto(), 1) / f[0];
    r[0] = inv0;
    for (long i = 1; i <= n; ++i) {
        K acc = ScalarTraits<K>::zero_like(f.proto());
        for (long j = 1; j <= i; ++j) acc = acc + f[j] * r[i - j];
        r[i] = -acc * inv0;
    }
    return r;
}

template <class K>
Series<K> operator/(const Series<K>& f, const Series<K>& g) {
    return f * fps_inv(g.truncated(std::min(f.order(), g.order())));
}

template <class K>
Series<K> fps_derivative(const Series<K>& f) {
    long n = f.order();
    if (n == 0) return Series<K>::zero(f.proto(), 0);
    Series<K> r = Series<K>::zero(f.proto(), n - 1);
    for (long i = 1; i <= n; ++i) r[i - 1] = f[i] * ScalarTraits<K>::from_long_like(f.proto(), i);
    return r;
}

// Divide by x^k; the dropped low coefficients must vanish.
template <class K>
Series<K> fps_shift_down(const Series<K>& f, long k) {
    if (k == 0) return f;
    if (f.order() < k) throw Error("fps_shift_down: order too small");
    for (long i = 0; i < k; ++i)
        if (!ScalarTraits<K>::is_zero(f[i]))
            throw Error("fps_shift_down: nonzero low coefficient");
    Series<K> r = Series<K>::zero(f.proto(), f.order() - k);
    for (long i = k; i <= f.order(); ++i) r[i - k] = f[i];
    return r;
}

// Multiply by x^k, keeping the order (top coefficients fall off).
template <class K>
Series<K> fps_shift_up(const Series<K>& f, long k) {
    Series<K> r = Series<K>::zero(f.proto(), f.order());
    for (long i = k; i <= f.order(); ++i) r[i] = f[i - k];
    return r;
}

// Formal exponential via (exp f)' = f' exp f. The rational kind requires a
// zero constant term; floating kinds factor out exp(f0) as a scalar.
template <class K>
Series<K> fps_exp(const Series<K>& f) {
    long n = f.order();
    Series<K> g = Series<K>::zero(f.proto(), n);
    K one = ScalarTraits<K>::from_long_like(f.proto(), 1);
    K scale = one;
    if (!ScalarTraits<K>::is_zero(f[0])) {
        if constexpr (ScalarTraits<K>::exact)
            throw NonzeroConstantTerm("fps_exp: rational series needs zero constant term");
        else
            scale = exp(f[0]);
    }
    g[0] = one;
    for (long i = 1; i <= n; ++i) {
        // i*g_i = sum_{k=1..i} k f_k g_{i-k}
        K acc = ScalarTraits<K>::zero_like(f.proto());
        for (long k = 1; k <= i; ++k)
            acc = acc + f[k] * ScalarTraits<K>::from_long_like(f.proto(), k) * g[i - k];
        g[i] = acc / ScalarTraits<K>::from_long_like(f.proto(), i);
    }
    if (!ScalarTraits<K>::is_one(scale)) g = g * scale;
    return g;
}

// Formal logarithm; constant term must be 1.
template <class K>
Series<K> fps_log(const Series<K>& f) {
    if (!ScalarTraits<K>::is_one(f[0])) throw BadConstantTerm("fps_log: constant term must be 1");
    long n = f.order();
    // log f = integral of f'/f
    Series<K> d = fps_derivative(f);
    Series<K> q = d / f.truncated(n == 0 ? 0 : n - 1);
    Series<K> r = Series<K>::zero(f.proto(), n);
    for (long i = 1; i <= n; ++i)
        r[i] = q[i - 1] / ScalarTraits<K>::from_long_like(f.proto(), i);
    return r;
}

// f^e = exp(e log f) for a scalar exponent; constant term must be 1.
template <class K>
Series<K> fps_pow(const Series<K>& f, const K& e) {
    if (!ScalarTraits<K>::is_one(f[0])) throw BadConstantTerm("fps_pow: constant term must be 1");
    return fps_exp(fps_log(f) * e);
}

// f(g(x)) truncated; g must have zero constant term.
template <class K>
Series<K> fps_compose(const Series<K>& f, const Series<K>& g) {
    if (!ScalarTraits<K>::is_zero(g[0]))
        throw BadConstantTerm("fps_compose: inner constant term must be 0");
    long n = std::min(f.order(), g.order());
    Series<K> gt = g.truncated(n);
    Series<K> r = Series<K>::constant(f[f.order()], n);
    for (long i = f.order() - 1; i >= 0; --i) {
        r = r * gt;
        r[0] = r[0] + f[i];
    }
    return r.truncated(n);
}

// Compositional inverse: g with f(g(x)) = x. Requires f(0)=0, f'(0)!=0.
template <class K>
Series<K> fps_reversion(const Series<K>& f) {
    if (!ScalarTraits<K>::is_zero(f[0])) throw NotInvertible("fps_reversion: f(0) must be 0");
    if (f.order() < 1 || ScalarTraits<K>::is_zero(f[1]))
        throw NotInvertible("fps_reversion: f'(0) must be nonzero");
    long n = f.order();
    K one = ScalarTraits<K>::from_long_like(f.proto(), 1);
    Series<K> g = Series<K>::zero(f.proto(), n);
    g[1] = one / f[1];
    // Raise the match order one power at a time: with g correct through
    // x^m, the x^(m+1) defect of f(g) is linear in the unknown g_{m+1}.
    for (long m = 2; m <= n; ++m) {
        Series<K> comp = fps_compose(f.truncated(m), g.truncated(m));
        g[m] = -comp[m] / f[1];
    }
    return g;
}

// Evaluate the truncated polynomial at a scalar point.
template <class K>
K fps_eval(const Series<K>& f, const K& x) {
    K acc = f[f.order()];
    for (long i = f.order() - 1; i >= 0; --i) acc = acc * x + f[i];
    return acc;
}

}  // namespace wright
