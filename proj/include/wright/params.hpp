#pragma once

#include <optional>
#include <string>

#include "wright/complexhp.hpp"
#include "wright/errors.hpp"
#include "wright/precision.hpp"
#include "wright/rational.hpp"

namespace wright {

// The parameter quadruple (a, alpha; b, beta) of 1Psi1. Rationality of each
// field is tracked: all-rational parameters enable the exact coefficient
// path, anything else realizes at the requested working precision. Stored
// values are precision-independent (rational or source decimal string).
class WrightParams {
  public:
    WrightParams(Rational a, Rational b, Rational alpha, Rational beta)
        : a_rat_(std::move(a)), b_rat_(std::move(b)),
          alpha_rat_(std::move(alpha)), beta_rat_(std::move(beta)) {
        validate();
    }

    // Decimal-string construction: any field that parses as p/q or integer
    // stays exact; decimal text goes down the floating path.
    WrightParams(const std::string& a, const std::string& b,
                 const std::string& alpha, const std::string& beta)
        : a_txt_(a), b_txt_(b), alpha_txt_(alpha), beta_txt_(beta),
          a_rat_(rat_parse(a)), b_rat_(rat_parse(b)),
          alpha_rat_(rat_parse(alpha)), beta_rat_(rat_parse(beta)) {
        validate();
    }

    // Fully numeric (possibly complex a, b) construction at fixed values.
    static WrightParams from_values(Complex a, Complex b, Real alpha, Real beta) {
        WrightParams p;
        p.a_num_ = std::move(a);
        p.b_num_ = std::move(b);
        p.alpha_num_ = std::move(alpha);
        p.beta_num_ = std::move(beta);
        p.validate();
        return p;
    }

    bool exact() const { return a_rat_ && b_rat_ && alpha_rat_ && beta_rat_; }

    const Rational& a_rat() const { return req(a_rat_, "a"); }
    const Rational& b_rat() const { return req(b_rat_, "b"); }
    const Rational& alpha_rat() const { return req(alpha_rat_, "alpha"); }
    const Rational& beta_rat() const { return req(beta_rat_, "beta"); }
    std::optional<Rational> theta_rat() const {
        if (a_rat_ && b_rat_) return *a_rat_ - *b_rat_;
        return std::nullopt;
    }
    std::optional<Rational> kappa_rat() const {
        if (alpha_rat_ && beta_rat_) return Rational(1) + *beta_rat_ - *alpha_rat_;
        return std::nullopt;
    }
    std::optional<Rational> mu_rat() const {
        if (alpha_rat_) return Rational(1) / *alpha_rat_;
        return std::nullopt;
    }

    Complex a(long prec) const { return realize_complex(a_rat_, a_txt_, a_num_, prec); }
    Complex b(long prec) const { return realize_complex(b_rat_, b_txt_, b_num_, prec); }
    Real alpha(long prec) const { return realize_real(alpha_rat_, alpha_txt_, alpha_num_, prec); }
    Real beta(long prec) const { return realize_real(beta_rat_, beta_txt_, beta_num_, prec); }

    // alpha == beta, exactly when known exactly.
    bool alpha_equals_beta() const {
        if (alpha_rat_ && beta_rat_) return *alpha_rat_ == *beta_rat_;
        return alpha(96) == beta(96);
    }

    std::string describe() const {
        auto one = [](const std::optional<Rational>& r, const std::string& t, const auto& v) {
            if (r) return rat_str(*r);
            if (!t.empty()) return t;
            return v ? v->str(20) : std::string("?");
        };
        return "a=" + one(a_rat_, a_txt_, a_num_) + " b=" + one(b_rat_, b_txt_, b_num_) +
               " alpha=" + one(alpha_rat_, alpha_txt_, alpha_num_) +
               " beta=" + one(beta_rat_, beta_txt_, beta_num_);
    }

  private:
    WrightParams() = default;

    static const Rational& req(const std::optional<Rational>& r, const char* name) {
        if (!r) throw Error(std::string("parameter ") + name + " is not rational");
        return *r;
    }

    static Complex realize_complex(const std::optional<Rational>& r, const std::string& txt,
                                   const std::optional<Complex>& num, long prec) {
        if (r) return Complex::from_rational(*r, prec);
        if (!txt.empty()) return Complex(Real::from_string(txt, prec));
        if (num) return num->rounded_to(prec);
        throw Error("parameter not set");
    }
    static Real realize_real(const std::optional<Rational>& r, const std::string& txt,
                             const std::optional<Real>& num, long prec) {
        if (r) return Real::from_rational(*r, prec);
        if (!txt.empty()) return Real::from_string(txt, prec);
        if (num) return num->rounded_to(prec);
        throw Error("parameter not set");
    }

    // alpha, beta > 0 and the numerator restriction: alpha*r + a must avoid
    // the non-positive integers for every r >= 0.
    void validate() const {
        static constexpr long kProbePrec = 128;
        Real al = alpha(kProbePrec), be = beta(kProbePrec);
        if (!(al > 0) || !(be > 0))
            throw InvalidParams("alpha and beta must be positive");
        if (a_rat_ && alpha_rat_) {
            if (*a_rat_ <= 0 || rat_is_integer(*a_rat_)) {
                // candidates r with alpha*r + a <= 0, plus r = 0
                Rational bound = -*a_rat_ / *alpha_rat_;
                long rmax = bound > 0 ? rat_to_long_floor(bound) : 0;
                for (long r = 0; r <= rmax; ++r) {
                    Rational v = *alpha_rat_ * r + *a_rat_;
                    if (rat_is_integer(v) && v <= 0)
                        throw InvalidParams("alpha*r + a hits a non-positive integer at r=" +
                                            std::to_string(r));
                }
            }
        } else {
            Complex av = a(kProbePrec);
            if (av.im.is_zero() && av.re <= 0) {
                long rmax = static_cast<long>((-av.re / al).to_double()) + 1;
                for (long r = 0; r <= rmax; ++r) {
                    Real v = al * r + av.re;
                    if (v.is_integer() && v <= 0)
                        throw InvalidParams("alpha*r + a hits a non-positive integer at r=" +
                                            std::to_string(r));
                }
            }
        }
    }

    static long rat_to_long_floor(const Rational& q) {
        mpz_class z;
        mpz_fdiv_q(z.get_mpz_t(), q.get_num().get_mpz_t(), q.get_den().get_mpz_t());
        return z.get_si();
    }

    std::string a_txt_, b_txt_, alpha_txt_, beta_txt_;
    std::optional<Rational> a_rat_, b_rat_, alpha_rat_, beta_rat_;
    std::optional<Complex> a_num_, b_num_;
    std::optional<Real> alpha_num_, beta_num_;
};

// kappa = 1 + beta - alpha, h = alpha^alpha beta^(-beta), theta = a - b,
// mu = 1/alpha, realized fresh at the requested precision.
struct DerivedParams {
    Real kappa, h;
    Complex theta;
    Real mu;
};

inline DerivedParams derive_params(const WrightParams& p, long prec) {
    Real al = p.alpha(prec), be = p.beta(prec);
    Real kappa = 1 + be - al;
    // h = exp(alpha log alpha - beta log beta)
    Real h = exp(al * log(al) - be * log(be));
    Complex theta = p.a(prec) - p.b(prec);
    Real mu = 1 / al;
    return DerivedParams{std::move(kappa), std::move(h), std::move(theta), std::move(mu)};
}

}  // namespace wright
