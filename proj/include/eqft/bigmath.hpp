// bigmath.hpp
// Thin RAII layer over MPFR plus the digit-tagged decimal type used for all
// arbitrary-precision results.  Exact rational work uses mpq_class directly.

#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

#include "eqft/common.hpp"

namespace eqft {

class BigFloat {
  public:
    explicit BigFloat(mpfr_prec_t prec) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }

    BigFloat(const BigFloat& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    BigFloat& operator=(BigFloat o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    static BigFloat pi(mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    static BigFloat from_ui(std::uint64_t u, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_ui(r.v_, u, MPFR_RNDN);
        return r;
    }
    static BigFloat from_rational(const mpq_class& q, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }

    BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
    friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
    friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
    friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }

    friend BigFloat sin(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_sin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqrt(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat asin(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_asin(r.v_, a.v_, MPFR_RNDN);
        return r;
    }
    friend BigFloat sqr(const BigFloat& a) {
        BigFloat r(a.prec());
        mpfr_sqr(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    int compare(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }

  private:
    mpfr_t v_;
};

// A nonnegative decimal value truncated toward zero to a fixed number of
// fractional digits, tagged with that digit count and the error bound of the
// computation that produced it.
struct PrecisionDecimal {
    std::string text;          // e.g. "0.451447703179"
    int fractional_digits = 0; // digits after the point
    double error_bound = 0.0;  // bound on |true value - computed value|

    double approx() const { return std::stod(text); }
};

// Truncates x (>= 0) toward zero at `digits` fractional digits.
inline std::string truncate_decimal(const BigFloat& x, int digits) {
    require(digits >= 1, "truncate_decimal: digits must be >= 1");
    require(mpfr_sgn(x.raw()) >= 0, "truncate_decimal: negative value");
    mpz_class ten_d;
    mpz_ui_pow_ui(ten_d.get_mpz_t(), 10, unsigned(digits));
    BigFloat scaled(x.prec());
    mpfr_mul_z(scaled.raw(), x.raw(), ten_d.get_mpz_t(), MPFR_RNDZ);
    mpz_class units;
    mpfr_get_z(units.get_mpz_t(), scaled.raw(), MPFR_RNDZ);
    std::string s = units.get_str();
    if (int(s.size()) <= digits) {
        s.insert(0, std::size_t(digits + 1) - s.size(), '0');
    }
    s.insert(s.size() - std::size_t(digits), ".");
    return s;
}

} // namespace eqft
