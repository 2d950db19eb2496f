#include "mahlerlab/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "mahlerlab/modular.hpp"

namespace mahlerlab {

Polynomial::Polynomial(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

Polynomial::Polynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

Polynomial Polynomial::from_integers(std::span<const long> coeffs) {
  std::vector<mpq_class> v;
  v.reserve(coeffs.size());
  for (long c : coeffs) v.emplace_back(c);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::from_integers(const std::vector<mpz_class>& coeffs) {
  std::vector<mpq_class> v;
  v.reserve(coeffs.size());
  for (const auto& c : coeffs) v.emplace_back(c);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monomial(const mpq_class& c, int k) {
  if (k < 0) throw std::invalid_argument("monomial: negative exponent");
  std::vector<mpq_class> v(static_cast<std::size_t>(k) + 1);
  v.back() = c;
  return Polynomial(std::move(v));
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

mpq_class Polynomial::coeff(int j) const {
  if (j < 0 || j > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(j)];
}

bool Polynomial::is_integer() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpq_class& c) { return c.get_den() == 1; });
}

std::vector<mpz_class> Polynomial::integer_coefficients() const {
  if (!is_integer()) throw std::invalid_argument("polynomial has non-integer coefficients");
  std::vector<mpz_class> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.get_num());
  return out;
}

mpq_class Polynomial::evaluate(const mpq_class& x) const {
  mpq_class acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (degree() < 1) return {};
  std::vector<mpq_class> v(coeffs_.size() - 1);
  for (std::size_t j = 1; j < coeffs_.size(); ++j) v[j - 1] = coeffs_[j] * static_cast<long>(j);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * mpq_class(1 / leading());
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return *this;
  mpz_class den_lcm = 1;
  for (const auto& c : coeffs_) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> ints;
  ints.reserve(coeffs_.size());
  mpz_class g = 0;
  for (const auto& c : coeffs_) {
    mpz_class v = c.get_num() * (den_lcm / c.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    ints.push_back(std::move(v));
  }
  if (ints.back() < 0) g = -g;
  for (auto& v : ints) v /= g;
  return from_integers(ints);
}

Polynomial Polynomial::negate_variable() const {
  std::vector<mpq_class> v = coeffs_;
  for (std::size_t j = 1; j < v.size(); j += 2) v[j] = -v[j];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::inflate(int m) const {
  if (m < 1) throw std::invalid_argument("inflate: m must be positive");
  if (is_zero()) return *this;
  std::vector<mpq_class> v(static_cast<std::size_t>(degree()) * static_cast<std::size_t>(m) + 1);
  for (std::size_t j = 0; j < coeffs_.size(); ++j) v[j * static_cast<std::size_t>(m)] = coeffs_[j];
  return Polynomial(std::move(v));
}

Polynomial Polynomial::reflect_at_one() const {
  // Horner in the substituted variable: acc = acc * (1 - x) + a_j.
  const Polynomial one_minus_x{1, -1};
  Polynomial acc;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * one_minus_x + constant(*it);
  return acc;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] += o.coeffs_[j];
  trim();
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t j = 0; j < o.coeffs_.size(); ++j) coeffs_[j] -= o.coeffs_[j];
  trim();
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> v(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(const Polynomial& a, const mpq_class& s) {
  std::vector<mpq_class> v = a.coeffs_;
  for (auto& c : v) c *= s;
  return Polynomial(std::move(v));
}

std::string Polynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (int j = degree(); j >= 0; --j) {
    const mpq_class& c = coeffs_[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    const bool negative = c < 0;
    const mpq_class mag = negative ? mpq_class(-c) : c;
    if (first) {
      if (negative) out << "-";
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || j == 0) out << mag.get_str();
    if (j >= 1) out << "x";
    if (j >= 2) out << "^" << j;
  }
  return out.str();
}

DivMod divmod(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw std::domain_error("division by the zero polynomial");
  if (a.degree() < b.degree()) return {{}, a};
  std::vector<mpq_class> r = a.coefficients();
  const int db = b.degree();
  std::vector<mpq_class> q(static_cast<std::size_t>(a.degree() - db) + 1);
  const mpq_class inv_lead = 1 / b.leading();
  const auto& bc = b.coefficients();
  for (int i = a.degree(); i >= db; --i) {
    const mpq_class c = r[static_cast<std::size_t>(i)] * inv_lead;
    q[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) r[static_cast<std::size_t>(i - db + j)] -= c * bc[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(db));
  return {Polynomial(std::move(q)), Polynomial(std::move(r))};
}

bool divides(const Polynomial& divisor, const Polynomial& p) { return divmod(p, divisor).remainder.is_zero(); }

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  Polynomial x = a, y = b;
  while (!y.is_zero()) {
    Polynomial r = divmod(x, y).remainder;
    // Keeping the remainders monic curbs rational coefficient growth.
    x = std::move(y);
    y = r.monic();
  }
  return x.monic();
}

namespace {

// Large primes for modular shortcuts.
constexpr modp::Coeff kShortcutPrimes[] = {2147483647ULL, 2147483629ULL, 2147483587ULL};

}  // namespace

bool coprime(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return a.degree() == 0 || b.degree() == 0;
  if (a.degree() == 0 || b.degree() == 0) return true;
  for (modp::Coeff p : kShortcutPrimes) {
    const modp::Field F(p);
    auto ra = modp::reduce(a, F);
    auto rb = modp::reduce(b, F);
    if (!ra || !rb) continue;
    if (modp::degree(*ra) != a.degree() || modp::degree(*rb) != b.degree()) continue;
    // Leading coefficients survive, so a common factor over Q stays common mod p.
    if (modp::degree(modp::gcd(*ra, *rb, F)) == 0) return true;
  }
  return gcd(a, b).degree() == 0;
}

bool is_squarefree(const Polynomial& p) {
  if (p.degree() <= 1) return true;
  return coprime(p, p.derivative());
}

std::vector<std::pair<Polynomial, int>> squarefree_decomposition(const Polynomial& p) {
  std::vector<std::pair<Polynomial, int>> out;
  if (p.degree() < 1) return out;
  const Polynomial f = p.monic();
  if (is_squarefree(f)) {
    out.emplace_back(f, 1);
    return out;
  }
  const Polynomial fp = f.derivative();
  Polynomial a = gcd(f, fp);
  Polynomial b = divmod(f, a).quotient;
  Polynomial c = divmod(fp, a).quotient;
  Polynomial d = c - b.derivative();
  int k = 1;
  while (b.degree() > 0) {
    Polynomial g = gcd(b, d);
    if (g.degree() > 0) out.emplace_back(g, k);
    b = divmod(b, g).quotient;
    c = divmod(d, g).quotient;
    d = c - b.derivative();
    ++k;
  }
  return out;
}

ComplexEval evaluate(const Polynomial& p, const BigComplex& z) {
  const Bits bits = z.precision();
  BigComplex acc(bits);
  BigFloat absacc(bits);
  const BigFloat absz = z.abs();
  for (auto it = p.coefficients().rbegin(); it != p.coefficients().rend(); ++it) {
    const BigFloat c(*it, bits);
    acc = acc * z;
    acc.real() += c;
    absacc = absacc * absz + abs(c);
  }
  // Horner rounding is bounded by gamma_{2d} * sum |a_j| |z|^j; one more unit
  // covers the conversion of each rational coefficient.
  const double factor = 2.0 * std::max(1, p.degree()) + 2.0;
  BigFloat err = absacc * ulp_scale(bits) * (factor * 1.01);
  return {std::move(acc), std::move(err)};
}

double NormBundle::l2() const { return std::sqrt(l2_squared.get_d()); }

NormBundle norms(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("norms: zero polynomial");
  NormBundle n;
  n.height = 0;
  n.length = 0;
  n.l2_squared = 0;
  for (const auto& c : p.coefficients()) {
    const mpq_class a = abs(c);
    if (a > n.height) n.height = a;
    n.length += a;
    n.l2_squared += c * c;
  }
  return n;
}

Polynomial reciprocal(const Polynomial& p) {
  std::vector<mpq_class> v(p.coefficients().rbegin(), p.coefficients().rend());
  // Reversal puts the zero low-order coefficients on top; the constructor
  // trims them, which drops the degree.
  return Polynomial(std::move(v));
}

StructureFlags structural_flags(const Polynomial& p) {
  StructureFlags f;
  f.self_reciprocal = !p.is_zero() && reciprocal(p) == p && p.coeff(0) != 0;
  f.vanishes_at_0 = p.coeff(0) == 0;
  f.vanishes_at_1 = p.evaluate(1) == 0;
  f.vanishes_at_minus_1 = p.evaluate(-1) == 0;

  if (!p.is_integer() || p.is_zero()) return f;

  mpz_class content = 0;
  for (const auto& c : p.coefficients()) mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_num_mpz_t());
  f.content = content;

  long g = 0;
  std::optional<bool> sign;
  for (int j = 1; j <= p.degree(); ++j) {
    const mpq_class& c = p.coefficients()[static_cast<std::size_t>(j)];
    if (c == 0) continue;
    g = std::gcd(g, static_cast<long>(j));
    if (!sign) sign = c > 0;
  }
  f.inflation = g >= 2 ? static_cast<int>(g) : 1;
  f.primitive_c1 = g < 2;
  f.sign_c2 = sign.value_or(false);
  return f;
}

Polynomial reciprocal_product(const Polynomial& p) {
  if (!p.is_monic()) throw std::invalid_argument("reciprocal_product: polynomial must be monic");
  if (p.coeff(0) == 0) throw std::invalid_argument("reciprocal_product: P(0) must be non-zero");
  return p * reciprocal(p) * mpq_class(1 / p.coeff(0));
}

}  // namespace mahlerlab
