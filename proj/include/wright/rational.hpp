#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include "wright/errors.hpp"

namespace wright {

// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
// denominator) through arithmetic.
using Rational = mpq_class;

inline bool rat_is_integer(const Rational& q) {
    return mpz_cmp_ui(q.get_den().get_mpz_t(), 1) == 0;
}

// mpq_class(p, q) does not reduce; this does.
inline Rational rat_make(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool rat_fits_long(const Rational& q) {
    return rat_is_integer(q) && q.get_num().fits_slong_p();
}

inline long rat_to_long(const Rational& q) {
    if (!rat_fits_long(q)) throw Error("rational does not fit in long: " + q.get_str());
    return q.get_num().get_si();
}

inline Rational rat_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    const unsigned long mag = static_cast<unsigned long>(e < 0 ? -e : e);
    Rational r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), mag);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), mag);
    r.canonicalize();
    if (e < 0) {
        if (r == 0) throw Error("rat_pow: zero base with negative exponent");
        r = Rational(1) / r;
    }
    return r;
}

// Pochhammer symbol (a)_n = a(a+1)...(a+n-1).
inline Rational rat_pochhammer(const Rational& a, long n) {
    Rational r(1);
    for (long i = 0; i < n; ++i) r *= a + i;
    return r;
}

inline Rational rat_binomial(unsigned long n, unsigned long k) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

// Parses "p/q", "p", or a leading-sign variant. Decimal strings are rejected:
// the caller decides whether such inputs go down the floating-point path.
inline std::optional<Rational> rat_parse(const std::string& text) {
    if (text.empty() || text.find_first_of(".eE") != std::string::npos) return std::nullopt;
    std::string s = text;
    if (!s.empty() && s.front() == '+') s.erase(s.begin());
    Rational q;
    if (mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
    if (mpz_sgn(mpq_denref(q.get_mpq_t())) == 0) return std::nullopt;
    q.canonicalize();
    return q;
}

inline std::string rat_str(const Rational& q) { return q.get_str(); }

}  // namespace wright
