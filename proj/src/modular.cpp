#include "mahlerlab/modular.hpp"

#include <algorithm>
#include <stdexcept>

namespace mahlerlab::modp {

Coeff Field::pow(Coeff a, std::uint64_t e) const {
  Coeff r = 1 % p_;
  a %= p_;
  while (e != 0) {
    if (e & 1U) r = mul(r, a);
    a = mul(a, a);
    e >>= 1U;
  }
  return r;
}

Coeff Field::reduce(const mpz_class& x) const {
  mpz_class r = x % static_cast<unsigned long>(p_);
  if (r < 0) r += static_cast<unsigned long>(p_);
  return r.get_ui();
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

int degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

std::optional<Poly> reduce(const Polynomial& f, const Field& F) {
  Poly out;
  out.reserve(f.coefficients().size());
  for (const auto& c : f.coefficients()) {
    const Coeff den = F.reduce(c.get_den());
    if (den == 0) return std::nullopt;
    out.push_back(F.mul(F.reduce(c.get_num()), F.inv(den)));
  }
  trim(out);
  return out;
}

Poly add(const Poly& a, const Poly& b, const Field& F) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
  trim(r);
  return r;
}

Poly sub(const Poly& a, const Poly& b, const Field& F) {
  Poly r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
  trim(r);
  return r;
}

Poly mul(const Poly& a, const Poly& b, const Field& F) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
  }
  trim(r);
  return r;
}

Poly scale(const Poly& a, Coeff s, const Field& F) {
  Poly r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], s);
  trim(r);
  return r;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Field& F) {
  if (b.empty()) throw std::domain_error("modp::divmod: division by zero polynomial");
  Poly r = a;
  const int db = degree(b);
  if (degree(r) < db) return {{}, r};
  Poly q(static_cast<std::size_t>(degree(r) - db + 1), 0);
  const Coeff inv_lead = F.inv(b.back());
  for (int i = degree(r); i >= db; --i) {
    const Coeff c = F.mul(r[static_cast<std::size_t>(i)], inv_lead);
    q[static_cast<std::size_t>(i - db)] = c;
    if (c == 0) continue;
    for (int j = 0; j <= db; ++j) {
      auto& slot = r[static_cast<std::size_t>(i - db + j)];
      slot = F.sub(slot, F.mul(c, b[static_cast<std::size_t>(j)]));
    }
  }
  trim(q);
  trim(r);
  return {q, r};
}

Poly rem(const Poly& a, const Poly& b, const Field& F) { return divmod(a, b, F).second; }

Poly make_monic(const Poly& a, const Field& F) {
  if (a.empty()) return a;
  return scale(a, F.inv(a.back()), F);
}

Poly derivative(const Poly& a, const Field& F) {
  if (a.size() <= 1) return {};
  Poly r(a.size() - 1);
  for (std::size_t i = 1; i < a.size(); ++i) r[i - 1] = F.mul(a[i], i % F.modulus());
  trim(r);
  return r;
}

Poly gcd(Poly a, Poly b, const Field& F) {
  while (!b.empty()) {
    Poly r = rem(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return make_monic(a, F);
}

ExtGcd ext_gcd(const Poly& a, const Poly& b, const Field& F) {
  Poly r0 = a, r1 = b;
  Poly s0{1}, s1{};
  Poly t0{}, t1{1};
  while (!r1.empty()) {
    auto [q, r] = divmod(r0, r1, F);
    Poly s2 = sub(s0, mul(q, s1, F), F);
    Poly t2 = sub(t0, mul(q, t1, F), F);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) return {{}, {}, {}};
  const Coeff inv = F.inv(r0.back());
  return {scale(r0, inv, F), scale(s0, inv, F), scale(t0, inv, F)};
}

Poly powmod(const Poly& base, const mpz_class& e, const Poly& m, const Field& F) {
  Poly result{1};
  result = rem(result, m, F);
  Poly b = rem(base, m, F);
  const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = rem(mul(result, result, F), m, F);
    if (mpz_tstbit(e.get_mpz_t(), i) != 0) result = rem(mul(result, b, F), m, F);
  }
  return result;
}

std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f, const Field& F) {
  std::vector<std::pair<Poly, int>> out;
  Poly rest = f;
  const Poly x{0, 1};
  Poly h = rem(x, rest, F);
  const mpz_class p(static_cast<unsigned long>(F.modulus()));
  for (int k = 1; 2 * k <= degree(rest); ++k) {
    h = powmod(h, p, rest, F);
    Poly g = gcd(rest, sub(h, x, F), F);
    if (degree(g) > 0) {
      out.emplace_back(g, k);
      rest = divmod(rest, g, F).first;
      h = rem(h, rest, F);
    }
  }
  if (degree(rest) > 0) out.emplace_back(make_monic(rest, F), degree(rest));
  return out;
}

std::vector<Poly> equal_degree(const Poly& f, int k, const Field& F, std::mt19937_64& rng) {
  const int n = degree(f);
  if (n == k) return {f};
  if (F.modulus() == 2) throw std::invalid_argument("equal_degree: p = 2 unsupported");
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.modulus()), static_cast<unsigned long>(k));
  e = (e - 1) / 2;
  std::uniform_int_distribution<Coeff> dist(0, F.modulus() - 1);
  while (true) {
    Poly a(static_cast<std::size_t>(n), 0);
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (degree(a) < 1) continue;
    Poly g = gcd(f, a, F);
    if (degree(g) > 0 && degree(g) < n) {
      auto left = equal_degree(g, k, F, rng);
      auto right = equal_degree(divmod(f, g, F).first, k, F, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
    Poly b = powmod(a, e, f, F);
    b = sub(b, Poly{1}, F);
    g = gcd(f, b, F);
    if (degree(g) > 0 && degree(g) < n) {
      auto left = equal_degree(g, k, F, rng);
      auto right = equal_degree(make_monic(divmod(f, g, F).first, F), k, F, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::vector<Poly> factor_squarefree(const Poly& f, const Field& F, std::mt19937_64& rng) {
  std::vector<Poly> out;
  for (const auto& [g, k] : distinct_degree(make_monic(f, F), F)) {
    auto parts = equal_degree(g, k, F, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end(), [](const Poly& a, const Poly& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

}  // namespace mahlerlab::modp
