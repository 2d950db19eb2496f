#include <doctest.h>

#include <random>

#include "mahlerlab/modular.hpp"
#include "mahlerlab/polynomial.hpp"

using namespace mahlerlab;

namespace {

Polynomial random_poly(std::mt19937_64& rng, int deg, long h) {
  std::uniform_int_distribution<long> d(-h, h);
  std::vector<mpq_class> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = d(rng);
  if (c.back() == 0) c.back() = 1;
  return Polynomial(std::move(c));
}

}  // namespace

TEST_CASE("construction trims and reports degree") {
  Polynomial p{1, 2, 0, 0};
  CHECK(p.degree() == 1);
  CHECK(Polynomial{}.degree() == -1);
  CHECK(Polynomial{0, 0}.is_zero());
  CHECK(Polynomial{-1, 0, 1}.to_string() == "x^2 - 1");
}

TEST_CASE("arithmetic against pointwise evaluation") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 50; ++t) {
    Polynomial a = random_poly(rng, 1 + t % 7, 9), b = random_poly(rng, 1 + t % 5, 9);
    for (long x = -3; x <= 3; ++x) {
      mpq_class q(x, 2);
      q.canonicalize();
      CHECK((a * b).evaluate(q) == a.evaluate(q) * b.evaluate(q));
      CHECK((a + b).evaluate(q) == a.evaluate(q) + b.evaluate(q));
      CHECK(a.negate_variable().evaluate(q) == a.evaluate(-q));
      CHECK(a.reflect_at_one().evaluate(q) == a.evaluate(1 - q));
      CHECK(a.inflate(3).evaluate(q) == a.evaluate(q * q * q));
    }
    auto [quo, r] = divmod(a * b + Polynomial{1, 1}, b);
    CHECK(quo * b + r == a * b + Polynomial{1, 1});
    CHECK(r.degree() < b.degree());
  }
}

TEST_CASE("gcd and squarefree decomposition recombine") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 30; ++t) {
    Polynomial f = random_poly(rng, 1 + t % 3, 5), g = random_poly(rng, 1 + t % 4, 5);
    Polynomial h = random_poly(rng, 2, 5);
    Polynomial p = f * f * f * g * h * h;
    Polynomial prod = Polynomial::constant(p.leading());
    for (const auto& [s, k] : squarefree_decomposition(p)) {
      CHECK(is_squarefree(s));
      for (int i = 0; i < k; ++i) prod = prod * s;
    }
    CHECK(prod == p);
    CHECK(divides(gcd(p, p.derivative()), p));
  }
  CHECK(coprime(Polynomial{-1, 0, 1}, Polynomial{1, 0, 1}));
  CHECK_FALSE(coprime(Polynomial{-1, 0, 1}, Polynomial{1, 1}));
}

TEST_CASE("norms and structural flags") {
  Polynomial p{1, 0, -3, 0, 1};
  auto n = norms(p);
  CHECK(n.height == 3);
  CHECK(n.length == 5);
  CHECK(n.l2_squared == 11);
  auto f = structural_flags(p);
  CHECK(f.self_reciprocal);
  CHECK(f.inflation == 2);
  CHECK(*f.primitive_c1 == false);
  CHECK(*f.sign_c2 == false);
  CHECK_THROWS_AS(norms(Polynomial{}), std::invalid_argument);

  Polynomial q{-1, -1, 0, 1};
  Polynomial Q = reciprocal_product(q);
  CHECK(Q.degree() == 6);
  CHECK(reciprocal(Q) == Q);
  CHECK(Q.is_monic());
}

TEST_CASE("complex evaluation error bound covers the exact value") {
  Polynomial p{3, -1, 4, 1, -5, 9};
  BigComplex z(0.3, -0.7, 64);
  auto e = evaluate(p, z);
  BigComplex zh(0.3, -0.7, 400);
  auto ref = evaluate(p, zh);
  BigFloat diff = (e.value - ref.value).abs();
  CHECK(diff <= e.error);
}

TEST_CASE("factorization over F_p multiplies back") {
  std::mt19937_64 rng(3);
  const modp::Field F(101);
  for (int t = 0; t < 20; ++t) {
    Polynomial p = random_poly(rng, 3 + t % 10, 50);
    auto r = modp::reduce(p, F);
    REQUIRE(r);
    modp::Poly f = modp::make_monic(*r, F);
    if (modp::degree(modp::gcd(f, modp::derivative(f, F), F)) > 0) continue;
    auto factors = modp::factor_squarefree(f, F, rng);
    modp::Poly prod{1};
    for (const auto& g : factors) {
      prod = modp::mul(prod, g, F);
      // Irreducibility check: x^(p^deg) = x mod g and no smaller degree split.
      auto ddf = modp::distinct_degree(g, F);
      CHECK(ddf.size() == 1);
      CHECK(ddf[0].second == modp::degree(g));
    }
    CHECK(prod == f);
  }
}
