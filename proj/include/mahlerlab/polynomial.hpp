#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mahlerlab/bigfloat.hpp"

namespace mahlerlab {

/// Univariate polynomial with exact rational coefficients, stored in
/// ascending order a_0, ..., a_d. Trailing zeros are trimmed on construction
/// so degree() is always the degree of the true leading term; the zero
/// polynomial has degree -1 and an empty coefficient list.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<mpq_class> coeffs);
  Polynomial(std::initializer_list<long> coeffs);

  static Polynomial from_integers(std::span<const long> coeffs);
  static Polynomial from_integers(const std::vector<mpz_class>& coeffs);
  static Polynomial monomial(const mpq_class& c, int k);
  static Polynomial constant(const mpq_class& c) { return monomial(c, 0); }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<mpq_class>& coefficients() const { return coeffs_; }
  // Coefficient of x^j; zero outside [0, degree].
  mpq_class coeff(int j) const;
  const mpq_class& leading() const { return coeffs_.back(); }

  bool is_integer() const;
  bool is_monic() const { return !is_zero() && leading() == 1; }
  std::vector<mpz_class> integer_coefficients() const;

  mpq_class evaluate(const mpq_class& x) const;
  Polynomial derivative() const;
  Polynomial monic() const;
  // Integer primitive part with positive leading coefficient.
  Polynomial primitive_part() const;
  // P(-x).
  Polynomial negate_variable() const;
  // P(x^m).
  Polynomial inflate(int m) const;
  // P(1 - x).
  Polynomial reflect_at_one() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const mpq_class& s);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<mpq_class> coeffs_;
};

struct DivMod {
  Polynomial quotient;
  Polynomial remainder;
};

DivMod divmod(const Polynomial& a, const Polynomial& b);
bool divides(const Polynomial& divisor, const Polynomial& p);
// Monic gcd over Q; gcd(0, 0) is 0.
Polynomial gcd(const Polynomial& a, const Polynomial& b);
// True when the two polynomials certainly share no root (modular shortcut
// falling back to an exact gcd).
bool coprime(const Polynomial& a, const Polynomial& b);
// Yun's algorithm: P = lc * prod S_k^k with S_k monic squarefree and
// pairwise coprime. Factors of degree zero are omitted.
std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p);
bool is_squarefree(const Polynomial& p);

struct ComplexEval {
  BigComplex value;
  // Bound on |computed - exact| covering coefficient conversion and Horner
  // rounding at the precision of the evaluation point.
  BigFloat error;
};

ComplexEval evaluate(const Polynomial& p, const BigComplex& z);

struct ApproxReal {
  double value = 0.0;
  double error = 0.0;
};

struct NormBundle {
  mpq_class height;      // H(P)
  mpq_class length;      // L(P)
  mpq_class l2_squared;  // L2(P)^2
  std::optional<ApproxReal> supnorm;
  std::optional<ApproxReal> mahler;

  double l2() const;
};

/// Exact height, length and squared Euclidean norm. Throws
/// std::invalid_argument on the zero polynomial.
NormBundle norms(const Polynomial& p);

/// x^d P(1/x): the coefficient list reversed, with the degree dropping when
/// a_0 = 0.
Polynomial reciprocal(const Polynomial& p);

struct StructureFlags {
  bool self_reciprocal = false;
  // Empty when the polynomial has non-integer coefficients.
  std::optional<bool> primitive_c1;
  std::optional<bool> sign_c2;
  std::optional<mpz_class> content;
  // Largest m with P = R(x^m); 1 when primitive.
  int inflation = 1;
  bool vanishes_at_0 = false;
  bool vanishes_at_1 = false;
  bool vanishes_at_minus_1 = false;
};

StructureFlags structural_flags(const Polynomial& p);

/// a_0^{-1} P P* for monic P with P(0) != 0; monic, self-reciprocal, degree 2d.
Polynomial reciprocal_product(const Polynomial& p);

}  // namespace mahlerlab
