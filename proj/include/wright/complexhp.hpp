#pragma once

#include <string>

#include "wright/precision.hpp"

namespace wright {

// Configurable-precision complex value. Components share one precision; the
// constructor promotes the smaller to the larger. All powers and logs use the
// principal branch with arg in (-pi, pi].
struct Complex {
    Real re, im;

    explicit Complex(long prec = 64) : re(prec), im(prec) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) { align(); }
    explicit Complex(Real r) : re(std::move(r)), im(re.prec()) {}

    static Complex from_long(long x, long prec) { return Complex(Real::from_long(x, prec)); }
    static Complex from_rational(const Rational& q, long prec) {
        return Complex(Real::from_rational(q, prec));
    }

    long prec() const { return re.prec(); }
    Complex rounded_to(long prec) const { return Complex(re.rounded_to(prec), im.rounded_to(prec)); }
    bool is_real() const { return im.is_zero(); }
    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_nan() const { return re.is_nan() || im.is_nan(); }

    std::string str(long digits = 0) const {
        if (im.is_zero()) return re.str(digits);
        std::string s = re.str(digits);
        s += (im.sgn() < 0) ? " - " : " + ";
        Real ai = abs(im);
        s += ai.str(digits) + "i";
        return s;
    }

  private:
    void align() {
        long p = promote_prec(re, im);
        if (re.prec() != p) re = re.rounded_to(p);
        if (im.prec() != p) im = im.rounded_to(p);
    }
};

inline long promote_prec(const Complex& a, const Complex& b) {
    return a.prec() > b.prec() ? a.prec() : b.prec();
}

inline Complex operator+(const Complex& a, const Complex& b) {
    return Complex(a.re + b.re, a.im + b.im);
}
inline Complex operator-(const Complex& a, const Complex& b) {
    return Complex(a.re - b.re, a.im - b.im);
}
inline Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
inline Complex operator*(const Complex& a, const Complex& b) {
    return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
inline Complex operator*(const Complex& a, const Real& s) { return Complex(a.re * s, a.im * s); }
inline Complex operator*(const Real& s, const Complex& a) { return a * s; }
inline Complex operator*(const Complex& a, long s) { return Complex(a.re * s, a.im * s); }
inline Complex operator/(const Complex& a, const Real& s) { return Complex(a.re / s, a.im / s); }
inline Complex operator/(const Complex& a, long s) { return Complex(a.re / s, a.im / s); }
inline Complex operator/(const Complex& a, const Complex& b) {
    Real d = b.re * b.re + b.im * b.im;
    return Complex((a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d);
}
inline Complex operator+(const Complex& a, const Real& s) { return Complex(a.re + s, a.im); }
inline Complex operator-(const Complex& a, const Real& s) { return Complex(a.re - s, a.im); }
inline Complex operator+(const Real& s, const Complex& a) { return a + s; }
inline Complex operator-(const Real& s, const Complex& a) { return Complex(s - a.re, -a.im); }

inline Complex& operator+=(Complex& a, const Complex& b) { a = a + b; return a; }
inline Complex& operator-=(Complex& a, const Complex& b) { a = a - b; return a; }
inline Complex& operator*=(Complex& a, const Complex& b) { a = a * b; return a; }
inline Complex& operator/=(Complex& a, const Complex& b) { a = a / b; return a; }

inline bool operator==(const Complex& a, const Complex& b) {
    return a.re == b.re && a.im == b.im;
}

inline Complex conj(const Complex& a) { return Complex(a.re, -a.im); }
inline Real abs(const Complex& a) { return hypot(a.re, a.im); }
inline Real arg(const Complex& a) { return atan2(a.im, a.re); }

inline Complex exp(const Complex& a) {
    if (a.im.is_zero()) return Complex(exp(a.re));
    Real m = exp(a.re);
    return Complex(m * cos(a.im), m * sin(a.im));
}

inline Complex log(const Complex& a) {
    if (a.im.is_zero() && a.re.sgn() > 0) return Complex(log(a.re));
    return Complex(log(abs(a)), arg(a));
}

inline Complex inv(const Complex& a) {
    Real d = a.re * a.re + a.im * a.im;
    return Complex(a.re / d, -a.im / d);
}

inline Complex pow_si(const Complex& a, long e) {
    long p = a.prec();
    if (e == 0) return Complex::from_long(1, p);
    unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    Complex acc = Complex::from_long(1, p);
    Complex base = a;
    while (mag > 0) {
        if (mag & 1) acc *= base;
        mag >>= 1;
        if (mag > 0) base *= base;
    }
    return e < 0 ? inv(acc) : acc;
}

// Principal-branch power.
inline Complex pow(const Complex& a, const Complex& e) {
    if (e.im.is_zero() && e.re.is_integer() &&
        mpfr_cmpabs_ui(e.re.raw(), 1000000) <= 0)
        return pow_si(a, e.re.to_long());
    return exp(e * log(a));
}
inline Complex pow(const Complex& a, const Real& e) { return pow(a, Complex(e)); }

inline Complex sqrt(const Complex& a) {
    if (a.im.is_zero() && a.re.sgn() >= 0) return Complex(sqrt(a.re));
    long p = a.prec();
    return exp(log(a) / Real::from_long(2, p));
}

// Relative distance |a-b| / max(|b|, tiny); the comparison workhorse in tests.
inline Real rel_err(const Complex& a, const Complex& b) {
    Real num = abs(a - b);
    Real den = abs(b);
    if (den.is_zero()) return num;
    return num / den;
}
inline Real rel_err(const Real& a, const Real& b) {
    Real num = abs(a - b);
    Real den = abs(b);
    if (den.is_zero()) return num;
    return num / den;
}

}  // namespace wright
