#pragma once

// Dense polynomial arithmetic over prime fields F_p with p < 2^32.

#include <cstdint>
#include <optional>
#include <random>
#include <utility>
#include <vector>

#include "mahlerlab/polynomial.hpp"

namespace mahlerlab::modp {

using Coeff = std::uint64_t;
// Ascending coefficients, trimmed; the zero polynomial is empty.
using Poly = std::vector<Coeff>;

class Field {
 public:
  explicit Field(Coeff p) : p_(p) {}
  Coeff modulus() const { return p_; }
  Coeff add(Coeff a, Coeff b) const { return (a + b) % p_; }
  Coeff sub(Coeff a, Coeff b) const { return (a + p_ - b) % p_; }
  Coeff mul(Coeff a, Coeff b) const {
    return static_cast<Coeff>((static_cast<unsigned __int128>(a) * b) % p_);
  }
  Coeff neg(Coeff a) const { return a == 0 ? 0 : p_ - a; }
  Coeff pow(Coeff a, std::uint64_t e) const;
  Coeff inv(Coeff a) const { return pow(a, p_ - 2); }
  Coeff reduce(const mpz_class& x) const;

 private:
  Coeff p_;
};

bool is_prime(std::uint64_t n);

void trim(Poly& f);
int degree(const Poly& f);

// Reduction of a rational polynomial; nullopt when p divides a denominator.
std::optional<Poly> reduce(const Polynomial& f, const Field& F);

Poly add(const Poly& a, const Poly& b, const Field& F);
Poly sub(const Poly& a, const Poly& b, const Field& F);
Poly mul(const Poly& a, const Poly& b, const Field& F);
Poly scale(const Poly& a, Coeff s, const Field& F);
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b, const Field& F);
Poly rem(const Poly& a, const Poly& b, const Field& F);
Poly make_monic(const Poly& a, const Field& F);
Poly derivative(const Poly& a, const Field& F);
Poly gcd(Poly a, Poly b, const Field& F);

struct ExtGcd {
  Poly g;  // monic gcd
  Poly s;
  Poly t;  // s*a + t*b = g
};
ExtGcd ext_gcd(const Poly& a, const Poly& b, const Field& F);

// base^e mod m.
Poly powmod(const Poly& base, const mpz_class& e, const Poly& m, const Field& F);

// f monic squarefree. Returns (product of all irreducible factors of
// degree k, k) for every k with a non-trivial product.
std::vector<std::pair<Poly, int>> distinct_degree(const Poly& f, const Field& F);
// f monic squarefree, all irreducible factors of degree k. Cantor-Zassenhaus
// splitting (odd p) with a caller-provided generator for determinism.
std::vector<Poly> equal_degree(const Poly& f, int k, const Field& F, std::mt19937_64& rng);
// Complete factorization of a monic squarefree polynomial into monic
// irreducibles, sorted by degree then coefficients.
std::vector<Poly> factor_squarefree(const Poly& f, const Field& F, std::mt19937_64& rng);

}  // namespace mahlerlab::modp
