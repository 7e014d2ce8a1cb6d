#pragma once

#include <mpfr.h>

#include <cmath>
#include <string>
#include <utility>

#include "wright/errors.hpp"
#include "wright/rational.hpp"

namespace wright {

// Working precision for one evaluation: a base mantissa size plus guard bits
// absorbing series cancellation. Values produced under a context carry their
// precision with them; mixed-precision arithmetic promotes to the larger.
struct PrecisionCtx {
    long bits = 64;
    long guard_bits = 0;

    PrecisionCtx() = default;
    PrecisionCtx(long bits_, long guard_) : bits(bits_), guard_bits(guard_) {
        if (bits < 64) throw InvalidParams("PrecisionCtx: bits must be >= 64");
        if (guard_bits < 0) throw InvalidParams("PrecisionCtx: guard_bits must be >= 0");
    }

    long total() const { return bits + guard_bits; }

    static long bits_for_digits(long digits) {
        // log2(10) = 3.3219..., plus headroom for downstream rounding.
        long b = static_cast<long>(std::ceil(static_cast<double>(digits) * 3.3219280948873626)) + 16;
        return b < 64 ? 64 : b;
    }

    static PrecisionCtx from_digits(long digits, long guard = 0) {
        return PrecisionCtx(bits_for_digits(digits), guard);
    }
};

// Guard bits for summing a series whose largest term is ~e^X while the result
// is algebraically small: the largest-term/result ratio bounds the loss.
inline long cancellation_guard_bits(double x_exponent) {
    if (!(x_exponent > 0.0)) return 64;
    return static_cast<long>(std::ceil(x_exponent * 1.4426950408889634)) + 64;
}

// Configurable-precision real. Owns one mpfr_t; rounding is to nearest-even
// everywhere. Binary operations evaluate at the larger operand precision.
class Real {
  public:
    explicit Real(long prec = 64) {
        mpfr_init2(v_, clamp(prec));
        mpfr_set_zero(v_, 1);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real from_long(long x, long prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real from_double(double x, long prec) {
        Real r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real from_rational(const Rational& q, long prec) {
        Real r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real from_string(const std::string& s, long prec) {
        Real r(prec);
        if (mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN) != 0)
            throw InvalidParams("unparseable number: " + s);
        return r;
    }
    static Real pi(long prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static Real log2_const(long prec) {
        Real r(prec);
        mpfr_const_log2(r.v_, MPFR_RNDN);
        return r;
    }
    // 10^k, exact mantissa permitting; used for decimal tolerances.
    static Real pow10(long k, long prec) {
        Real r(prec);
        mpfr_set_si(r.v_, 10, MPFR_RNDN);
        mpfr_pow_si(r.v_, r.v_, k, MPFR_RNDN);
        return r;
    }

    long prec() const { return mpfr_get_prec(v_); }
    Real rounded_to(long prec) const {
        Real r(prec);
        mpfr_set(r.v_, v_, MPFR_RNDN);
        return r;
    }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_inf() const { return mpfr_inf_p(v_) != 0; }
    bool is_integer() const { return mpfr_integer_p(v_) != 0; }
    int sgn() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    long to_long() const { return mpfr_get_si(v_, MPFR_RNDN); }

    std::string str(long digits = 0) const {
        char* out = nullptr;
        int ndig = digits > 0 ? static_cast<int>(digits)
                              : static_cast<int>(mpfr_get_prec(v_) / 3.33) + 1;
        mpfr_asprintf(&out, "%.*Rg", ndig, v_);
        std::string s = out ? out : "nan";
        mpfr_free_str(out);
        return s;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    friend void swap(Real& a, Real& b) noexcept { mpfr_swap(a.v_, b.v_); }

  private:
    static long clamp(long p) { return p < MPFR_PREC_MIN ? MPFR_PREC_MIN : p; }
    mpfr_t v_;
};

inline long promote_prec(const Real& a, const Real& b) {
    return a.prec() > b.prec() ? a.prec() : b.prec();
}

#define WRIGHT_REAL_BINOP(op, fn)                              \
    inline Real operator op(const Real& a, const Real& b) {   \
        Real r(promote_prec(a, b));                            \
        fn(r.raw(), a.raw(), b.raw(), MPFR_RNDN);              \
        return r;                                              \
    }
WRIGHT_REAL_BINOP(+, mpfr_add)
WRIGHT_REAL_BINOP(-, mpfr_sub)
WRIGHT_REAL_BINOP(*, mpfr_mul)
WRIGHT_REAL_BINOP(/, mpfr_div)
#undef WRIGHT_REAL_BINOP

inline Real operator-(const Real& a) {
    Real r(a.prec());
    mpfr_neg(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}
inline Real operator+(const Real& a, long b) { return a + Real::from_long(b, a.prec()); }
inline Real operator-(const Real& a, long b) { return a - Real::from_long(b, a.prec()); }
inline Real operator*(const Real& a, long b) {
    Real r(a.prec());
    mpfr_mul_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
inline Real operator/(const Real& a, long b) {
    Real r(a.prec());
    mpfr_div_si(r.raw(), a.raw(), b, MPFR_RNDN);
    return r;
}
inline Real operator+(long a, const Real& b) { return b + a; }
inline Real operator*(long a, const Real& b) { return b * a; }
inline Real operator-(long a, const Real& b) { return Real::from_long(a, b.prec()) - b; }
inline Real operator/(long a, const Real& b) { return Real::from_long(a, b.prec()) / b; }

inline Real& operator+=(Real& a, const Real& b) { a = a + b; return a; }
inline Real& operator-=(Real& a, const Real& b) { a = a - b; return a; }
inline Real& operator*=(Real& a, const Real& b) { a = a * b; return a; }
inline Real& operator/=(Real& a, const Real& b) { a = a / b; return a; }
inline Real& operator+=(Real& a, long b) { a = a + b; return a; }
inline Real& operator-=(Real& a, long b) { a = a - b; return a; }
inline Real& operator*=(Real& a, long b) { a = a * b; return a; }
inline Real& operator/=(Real& a, long b) { a = a / b; return a; }

inline int cmp(const Real& a, const Real& b) { return mpfr_cmp(a.raw(), b.raw()); }
inline bool operator<(const Real& a, const Real& b) { return cmp(a, b) < 0; }
inline bool operator>(const Real& a, const Real& b) { return cmp(a, b) > 0; }
inline bool operator<=(const Real& a, const Real& b) { return cmp(a, b) <= 0; }
inline bool operator>=(const Real& a, const Real& b) { return cmp(a, b) >= 0; }
inline bool operator==(const Real& a, const Real& b) { return mpfr_equal_p(a.raw(), b.raw()) != 0; }
inline bool operator!=(const Real& a, const Real& b) { return !(a == b); }
inline bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) < 0; }
inline bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) > 0; }
inline bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) <= 0; }
inline bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) >= 0; }
inline bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.raw(), b) == 0; }

#define WRIGHT_REAL_UNFN(name, fn)            \
    inline Real name(const Real& a) {         \
        Real r(a.prec());                     \
        fn(r.raw(), a.raw(), MPFR_RNDN);      \
        return r;                             \
    }
WRIGHT_REAL_UNFN(abs, mpfr_abs)
WRIGHT_REAL_UNFN(sqrt, mpfr_sqrt)
WRIGHT_REAL_UNFN(exp, mpfr_exp)
WRIGHT_REAL_UNFN(log, mpfr_log)
WRIGHT_REAL_UNFN(sin, mpfr_sin)
WRIGHT_REAL_UNFN(cos, mpfr_cos)
WRIGHT_REAL_UNFN(sinh, mpfr_sinh)
WRIGHT_REAL_UNFN(cosh, mpfr_cosh)
#undef WRIGHT_REAL_UNFN

inline Real floor(const Real& a) {
    Real r(a.prec());
    mpfr_rint(r.raw(), a.raw(), MPFR_RNDD);
    return r;
}
inline Real ceil(const Real& a) {
    Real r(a.prec());
    mpfr_rint(r.raw(), a.raw(), MPFR_RNDU);
    return r;
}
inline Real round_nearest(const Real& a) {
    Real r(a.prec());
    mpfr_rint(r.raw(), a.raw(), MPFR_RNDN);
    return r;
}

inline Real atan2(const Real& y, const Real& x) {
    Real r(promote_prec(y, x));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real hypot(const Real& x, const Real& y) {
    Real r(promote_prec(x, y));
    mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
    return r;
}
inline Real pow(const Real& a, const Real& b) {
    Real r(promote_prec(a, b));
    mpfr_pow(r.raw(), a.raw(), b.raw(), MPFR_RNDN);
    return r;
}
inline Real pow_si(const Real& a, long e) {
    Real r(a.prec());
    mpfr_pow_si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}
inline Real ldexp2(const Real& a, long e) {
    Real r(a.prec());
    mpfr_mul_2si(r.raw(), a.raw(), e, MPFR_RNDN);
    return r;
}

// 2^-k at the precision of the exemplar; the unit for precision-scaled bounds.
inline Real eps_bits(long k, long prec) {
    Real r = Real::from_long(1, prec);
    return ldexp2(r, -k);
}

}  // namespace wright
