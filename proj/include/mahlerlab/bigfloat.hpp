#pragma once

// Thin RAII layer over MPFR. Every value carries its own precision; binary
// operations round to the larger precision of their operands.

#include <mpfr.h>
#include <gmpxx.h>

#include <string>
#include <utility>

namespace mahlerlab {

using Bits = mpfr_prec_t;

inline constexpr Bits kDefaultBits = 128;

class BigFloat {
 public:
  BigFloat() : BigFloat(kDefaultBits) {}
  explicit BigFloat(Bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(double x, Bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  BigFloat(long x, Bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  BigFloat(int x, Bits bits) : BigFloat(static_cast<long>(x), bits) {}
  BigFloat(const mpz_class& x, Bits bits) {
    mpfr_init2(v_, bits);
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
  }
  BigFloat(const mpq_class& x, Bits bits) {
    mpfr_init2(v_, bits);
    exact_ = mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN) == 0;
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
    exact_ = o.exact_;
  }
  BigFloat(BigFloat&& o) noexcept {
    v_[0] = o.v_[0];
    o.v_[0]._mpfr_d = nullptr;
    exact_ = o.exact_;
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      if (v_[0]._mpfr_d == nullptr) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
      } else if (mpfr_get_prec(v_) != mpfr_get_prec(o.v_)) {
        mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      }
      mpfr_set(v_, o.v_, MPFR_RNDN);
      exact_ = o.exact_;
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    std::swap(v_[0], o.v_[0]);
    exact_ = o.exact_;
    return *this;
  }
  ~BigFloat() {
    if (v_[0]._mpfr_d != nullptr) mpfr_clear(v_);
  }

  Bits precision() const { return mpfr_get_prec(v_); }
  // True when the value was converted from a rational without rounding.
  bool exact_conversion() const { return exact_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  double to_double_up() const { return mpfr_get_d(v_, MPFR_RNDU); }
  std::string to_string(int digits = 20) const;

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  mpfr_ptr raw() { return v_; }
  mpfr_srcptr raw() const { return v_; }

  BigFloat& operator+=(const BigFloat& o) { return apply(mpfr_add, o); }
  BigFloat& operator-=(const BigFloat& o) { return apply(mpfr_sub, o); }
  BigFloat& operator*=(const BigFloat& o) { return apply(mpfr_mul, o); }
  BigFloat& operator/=(const BigFloat& o) { return apply(mpfr_div, o); }
  BigFloat& operator*=(double x) {
    mpfr_mul_d(v_, v_, x, MPFR_RNDN);
    return *this;
  }
  BigFloat& operator/=(double x) {
    mpfr_div_d(v_, v_, x, MPFR_RNDN);
    return *this;
  }

  friend BigFloat operator+(const BigFloat& a, const BigFloat& b) {
    return binary(mpfr_add, a, b);
  }
  friend BigFloat operator-(const BigFloat& a, const BigFloat& b) {
    return binary(mpfr_sub, a, b);
  }
  friend BigFloat operator*(const BigFloat& a, const BigFloat& b) {
    return binary(mpfr_mul, a, b);
  }
  friend BigFloat operator/(const BigFloat& a, const BigFloat& b) {
    return binary(mpfr_div, a, b);
  }
  friend BigFloat operator*(const BigFloat& a, double x) {
    BigFloat r(a.precision());
    mpfr_mul_d(r.v_, a.v_, x, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator*(double x, const BigFloat& a) { return a * x; }
  friend BigFloat operator/(const BigFloat& a, double x) {
    BigFloat r(a.precision());
    mpfr_div_d(r.v_, a.v_, x, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator+(const BigFloat& a, double x) {
    BigFloat r(a.precision());
    mpfr_add_d(r.v_, a.v_, x, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a, double x) {
    BigFloat r(a.precision());
    mpfr_sub_d(r.v_, a.v_, x, MPFR_RNDN);
    return r;
  }
  friend BigFloat operator-(const BigFloat& a) {
    BigFloat r(a.precision());
    mpfr_neg(r.v_, a.v_, MPFR_RNDN);
    return r;
  }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }
  friend bool operator<(const BigFloat& a, double x) { return mpfr_cmp_d(a.v_, x) < 0; }
  friend bool operator>(const BigFloat& a, double x) { return mpfr_cmp_d(a.v_, x) > 0; }
  friend bool operator<=(const BigFloat& a, double x) { return mpfr_cmp_d(a.v_, x) <= 0; }
  friend bool operator>=(const BigFloat& a, double x) { return mpfr_cmp_d(a.v_, x) >= 0; }

 private:
  using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

  BigFloat& apply(BinaryFn fn, const BigFloat& o) {
    if (o.precision() > precision()) mpfr_prec_round(v_, o.precision(), MPFR_RNDN);
    fn(v_, v_, o.v_, MPFR_RNDN);
    exact_ = false;
    return *this;
  }
  static BigFloat binary(BinaryFn fn, const BigFloat& a, const BigFloat& b) {
    BigFloat r(a.precision() > b.precision() ? a.precision() : b.precision());
    fn(r.v_, a.v_, b.v_, MPFR_RNDN);
    return r;
  }

  mpfr_t v_;
  bool exact_ = false;
};

BigFloat abs(const BigFloat& x);
BigFloat sqrt(const BigFloat& x);
BigFloat log(const BigFloat& x);
BigFloat exp(const BigFloat& x);
BigFloat pow(const BigFloat& x, const BigFloat& y);
BigFloat hypot(const BigFloat& x, const BigFloat& y);
BigFloat pi(Bits bits);
BigFloat cos(const BigFloat& x);
BigFloat sin(const BigFloat& x);
// 2^-bits, the unit roundoff scale at a given precision.
BigFloat ulp_scale(Bits bits);
// Exact rational value of a finite BigFloat.
mpq_class to_rational(const BigFloat& x);

class BigComplex {
 public:
  BigComplex() = default;
  explicit BigComplex(Bits bits) : re_(bits), im_(bits) {}
  BigComplex(BigFloat re, BigFloat im) : re_(std::move(re)), im_(std::move(im)) {}
  BigComplex(double re, double im, Bits bits) : re_(re, bits), im_(im, bits) {}

  const BigFloat& real() const { return re_; }
  const BigFloat& imag() const { return im_; }
  BigFloat& real() { return re_; }
  BigFloat& imag() { return im_; }
  Bits precision() const { return re_.precision(); }

  friend BigComplex operator+(const BigComplex& a, const BigComplex& b) {
    return {a.re_ + b.re_, a.im_ + b.im_};
  }
  friend BigComplex operator-(const BigComplex& a, const BigComplex& b) {
    return {a.re_ - b.re_, a.im_ - b.im_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigComplex& b) {
    return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
  }
  friend BigComplex operator*(const BigComplex& a, const BigFloat& s) {
    return {a.re_ * s, a.im_ * s};
  }
  friend BigComplex operator/(const BigComplex& a, const BigComplex& b) {
    BigFloat den = b.re_ * b.re_ + b.im_ * b.im_;
    return {(a.re_ * b.re_ + a.im_ * b.im_) / den, (a.im_ * b.re_ - a.re_ * b.im_) / den};
  }
  friend BigComplex operator-(const BigComplex& a) { return {-a.re_, -a.im_}; }
  BigComplex& operator+=(const BigComplex& o) {
    re_ += o.re_;
    im_ += o.im_;
    return *this;
  }
  BigComplex& operator-=(const BigComplex& o) {
    re_ -= o.re_;
    im_ -= o.im_;
    return *this;
  }

  BigComplex conj() const { return {re_, -im_}; }
  // Squared modulus.
  BigFloat norm() const { return re_ * re_ + im_ * im_; }
  BigFloat abs() const { return hypot(re_, im_); }

 private:
  BigFloat re_;
  BigFloat im_;
};

BigComplex inverse(const BigComplex& z);

}  // namespace mahlerlab
