#pragma once

// Minimal RAII wrapper over an MPFR variable. Every value carries its own
// precision; binary operations produce a result at the larger of the two
// operand precisions, so there is no global or thread-wide precision state.

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <utility>

namespace fracrenewal::detail {

inline mpfr_prec_t digits_to_bits(int digits) {
  return static_cast<mpfr_prec_t>(std::ceil(digits * 3.3219280948873623)) + 8;
}

class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits = 128) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double x, mpfr_prec_t bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_prec_t bits() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }
  int sign() const { return mpfr_sgn(v_); }

  // log10 of the magnitude, usable for values far outside double range.
  double log10_abs() const {
    if (is_zero()) return -INFINITY;
    long exp2 = 0;
    const double mant = mpfr_get_d_2exp(&exp2, v_, MPFR_RNDN);
    return std::log10(std::fabs(mant)) + static_cast<double>(exp2) * 0.30102999566398120;
  }

  BigFloat& operator+=(const BigFloat& o) {
    widen(o);
    mpfr_add(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator-=(const BigFloat& o) {
    widen(o);
    mpfr_sub(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(const BigFloat& o) {
    widen(o);
    mpfr_mul(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(const BigFloat& o) {
    widen(o);
    mpfr_div(v_, v_, o.v_, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(double d) {
    mpfr_mul_d(v_, v_, d, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(double d) {
    mpfr_div_d(v_, v_, d, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator*=(long n) {
    mpfr_mul_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(long n) {
    mpfr_div_si(v_, v_, n, MPFR_RNDN);
    return *this;
  }

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator-(BigFloat a) {
    mpfr_neg(a.v_, a.v_, MPFR_RNDN);
    return a;
  }

  friend BigFloat abs(BigFloat a) {
    mpfr_abs(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat exp(BigFloat a) {
    mpfr_exp(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat log(BigFloat a) {
    mpfr_log(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend BigFloat pow(const BigFloat& a, long n) {
    BigFloat r(a.bits());
    mpfr_pow_si(r.v_, a.v_, n, MPFR_RNDN);
    return r;
  }
  friend BigFloat pow(const BigFloat& a, const BigFloat& b) {
    BigFloat r(std::max(a.bits(), b.bits()));
    mpfr_pow(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }
  friend BigFloat gamma(BigFloat a) {
    mpfr_gamma(a.v_, a.v_, MPFR_RNDN);
    return a;
  }
  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_) != 0; }

  // 1/Gamma(x), with the entire-function convention 1/Gamma = 0 at the poles.
  friend BigFloat rgamma(const BigFloat& x) {
    BigFloat r(x.bits());
    if (mpfr_integer_p(x.v_) && mpfr_sgn(x.v_) <= 0) return r;
    mpfr_gamma(r.v_, x.v_, MPFR_RNDN);
    mpfr_ui_div(r.v_, 1, r.v_, MPFR_RNDN);
    return r;
  }

  static BigFloat pi(mpfr_prec_t bits) {
    BigFloat r(bits);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

 private:
  void widen(const BigFloat& o) {
    if (mpfr_get_prec(o.v_) > mpfr_get_prec(v_)) mpfr_prec_round(v_, mpfr_get_prec(o.v_), MPFR_RNDN);
  }

  mpfr_t v_;
};

}  // namespace fracrenewal::detail
