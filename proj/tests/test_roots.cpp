#include <doctest.h>

#include <algorithm>
#include <random>

#include "mahlerlab/roots.hpp"
#include "oracles.hpp"

using namespace mahlerlab;

namespace {

const Polynomial kLehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};

Polynomial random_poly(std::mt19937_64& rng, int deg, long h) {
  std::uniform_int_distribution<long> d(-h, h);
  std::vector<mpq_class> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = d(rng);
  if (c.back() == 0) c.back() = 1;
  if (c.front() == 0) c.front() = -1;
  return Polynomial(std::move(c));
}

// Every oracle root lies within a few radii (or 1e-12) of some computed root.
void check_against_companion(const Polynomial& p, const RootSet& rs) {
  for (const auto& w : oracle::companion_roots(p)) {
    double best = INFINITY;
    for (const auto& e : rs.roots()) {
      const auto z = e.approx();
      best = std::min(best, std::abs(std::complex<double>(static_cast<double>(w.real()), static_cast<double>(w.imag())) - z));
    }
    CHECK(best < 1e-6);
  }
}

}  // namespace

TEST_CASE("x^2 + 1 has roots +-i with tiny radii") {
  RootSet rs = find_roots(Polynomial{1, 0, 1}, 128);
  REQUIRE(rs.roots().size() == 2);
  for (const auto& e : rs.roots()) {
    CHECK(std::abs(std::abs(e.approx().imag()) - 1.0) < 1e-15);
    CHECK(e.error_radius < 1e-30);
    CHECK(e.real == Decision::No);
    CHECK(e.on_unit_circle == Decision::Yes);
  }
}

TEST_CASE("Lehmer polynomial root structure") {
  RootSet rs = find_roots_adaptive(kLehmer);
  CHECK(rs.total_multiplicity() == 10);
  int unit = 0, real = 0;
  for (const auto& e : rs.roots()) {
    if (e.on_unit_circle == Decision::Yes) ++unit;
    if (e.real == Decision::Yes) ++real;
  }
  CHECK(unit == 8);
  CHECK(real == 2);
  CHECK(rs.roots()[0].approx().real() == doctest::Approx(1.17628081825991750654).epsilon(1e-15));
  CHECK(rs.roots().back().approx().real() == doctest::Approx(1.0 / 1.17628081825991750654).epsilon(1e-14));
  check_against_companion(kLehmer, rs);
  auto rc = count_real(rs);
  CHECK(rc.real == 2);
  CHECK(rc.positive == 2);
}

TEST_CASE("multiplicities from the squarefree decomposition") {
  Polynomial p = Polynomial{-2, 1} * Polynomial{-2, 1} * Polynomial{-2, 1};
  RootSet rs = find_roots(p);
  REQUIRE(rs.roots().size() == 1);
  CHECK(rs.roots()[0].multiplicity == 3);
  CHECK(rs.roots()[0].exact);
  CHECK(rs.roots()[0].approx().real() == 2.0);

  Polynomial q = Polynomial{0, 0, 1} * Polynomial{1, 0, 1} * Polynomial{1, 0, 1} * Polynomial{-1, -1, 0, 1};
  RootSet rq = find_roots(q);
  CHECK(rq.total_multiplicity() == 9);
}

TEST_CASE("disk counts") {
  RootSet lehmer = find_roots(kLehmer);
  auto dc = count_in_disk(lehmer, {1.0, 0.0}, 1.0);
  CHECK(dc.certified);
  CHECK(dc.count >= 2);
  CHECK(dc.count == *oracle::contour_count(kLehmer, {1.0L, 0.0L}, 1.0L));

  auto d2 = count_in_disk(find_roots(Polynomial{1, 0, 1}), {0.0, 0.0}, 2.0);
  CHECK(d2.count == 2);
  CHECK(d2.certified);

  auto boundary = count_in_disk(find_roots(Polynomial{-2, 1}), {1.0, 0.0}, 1.0);
  CHECK(boundary.count == 0);
  CHECK(boundary.certified);
}

TEST_CASE("real root counts") {
  CHECK(count_real(find_roots(Polynomial{1, 0, 1})).real == 0);
  // (x - 3/2)(x + 1/2)(x^2 + 4) * 4 = (2x - 3)(2x + 1)(x^2 + 4)
  Polynomial p = Polynomial{-3, 2} * Polynomial{1, 2} * Polynomial{4, 0, 1};
  auto rc = count_real(find_roots(p));
  CHECK(rc.real == 2);
  CHECK(rc.positive == 1);
}

TEST_CASE("random polynomials: oracle agreement, Vieta and conjugate closure") {
  std::mt19937_64 rng(2024);
  for (int t = 0; t < 40; ++t) {
    const int deg = 2 + t % 25;
    Polynomial p = random_poly(rng, deg, 10);
    RootSet rs = find_roots_adaptive(p);
    CHECK(rs.total_multiplicity() == deg);
    check_against_companion(p, rs);

    // Vieta: product of roots against (-1)^d a_0 / a_d.
    const Bits wp = rs.roots()[0].value.precision();
    BigComplex prod(1.0, 0.0, wp);
    double rel = 0.0;
    for (const auto& e : rs.roots()) {
      for (int k = 0; k < e.multiplicity; ++k) prod = prod * e.value;
      rel += e.multiplicity * e.error_radius / std::max(1e-300, std::abs(e.approx()));
    }
    mpq_class expect = p.coeff(0) / p.leading();
    if (deg % 2 == 1) expect = -expect;
    const double err = (prod - BigComplex(BigFloat(expect, wp), BigFloat(wp))).abs().to_double();
    CHECK(err <= std::abs(expect.get_d()) * (std::expm1(rel) * 1.01 + 1e-30) + 1e-30);

    // Conjugate closure within radii.
    for (const auto& e : rs.roots()) {
      const auto c = std::conj(e.approx());
      bool found = false;
      for (const auto& f : rs.roots()) {
        if (std::abs(f.approx() - c) <= e.error_radius + f.error_radius + 1e-15) found = true;
      }
      CHECK(found);
    }

    // Disk counts agree with the argument principle whenever both decide.
    for (double rad : {0.5, 1.0, 1.5}) {
      auto dc = count_in_disk(rs, {0.25, 0.1}, rad);
      auto oc = oracle::contour_count(p, {0.25L, 0.1L}, rad);
      if (dc.certified && oc) CHECK(dc.count == *oc);
    }
  }
}

TEST_CASE("self-reciprocal inputs are closed under z -> 1/conj z") {
  Polynomial p{1, -3, 5, -3, 1};
  RootSet rs = find_roots(p);
  for (const auto& e : rs.roots()) {
    const auto z = e.approx();
    const auto w = 1.0 / std::conj(z);
    bool found = false;
    for (const auto& f : rs.roots()) {
      if (std::abs(f.approx() - w) < 1e-12) found = true;
    }
    CHECK(found);
  }
}

TEST_CASE("invalid input") { CHECK_THROWS_AS(find_roots(Polynomial{3}), std::invalid_argument); }
