#include "mahlerlab/bigfloat.hpp"

#include <vector>

namespace mahlerlab {

std::string BigFloat::to_string(int digits) const {
  if (!is_finite()) return is_zero() ? "0" : (mpfr_nan_p(v_) ? "nan" : "inf");
  std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, v_);
  return buf.data();
}

namespace {

template <typename Fn>
BigFloat unary(Fn fn, const BigFloat& x) {
  BigFloat r(x.precision());
  fn(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

}  // namespace

BigFloat abs(const BigFloat& x) { return unary(mpfr_abs, x); }
BigFloat sqrt(const BigFloat& x) { return unary(mpfr_sqrt, x); }
BigFloat log(const BigFloat& x) { return unary(mpfr_log, x); }
BigFloat exp(const BigFloat& x) { return unary(mpfr_exp, x); }

BigFloat pow(const BigFloat& x, const BigFloat& y) {
  BigFloat r(x.precision() > y.precision() ? x.precision() : y.precision());
  mpfr_pow(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

BigFloat hypot(const BigFloat& x, const BigFloat& y) {
  BigFloat r(x.precision() > y.precision() ? x.precision() : y.precision());
  mpfr_hypot(r.raw(), x.raw(), y.raw(), MPFR_RNDN);
  return r;
}

BigFloat pi(Bits bits) {
  BigFloat r(bits);
  mpfr_const_pi(r.raw(), MPFR_RNDN);
  return r;
}

BigFloat cos(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_cos(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat sin(const BigFloat& x) {
  BigFloat r(x.precision());
  mpfr_sin(r.raw(), x.raw(), MPFR_RNDN);
  return r;
}

BigFloat ulp_scale(Bits bits) {
  BigFloat r(1.0, bits);
  mpfr_mul_2si(r.raw(), r.raw(), -static_cast<long>(bits), MPFR_RNDN);
  return r;
}

mpq_class to_rational(const BigFloat& x) {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), x.raw());
  return q;
}

BigComplex inverse(const BigComplex& z) {
  BigFloat den = z.norm();
  return {z.real() / den, -z.imag() / den};
}

}  // namespace mahlerlab
