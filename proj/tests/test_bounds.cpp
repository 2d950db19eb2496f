#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "mahlerlab/bounds.hpp"

using namespace mahlerlab;

namespace {

const Polynomial kLehmer{1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1};
constexpr double kLehmerM = 1.17628081825991750654;

const BoundEntry& row(const BoundReport& r, const std::string& id) {
  for (const auto& e : r.entries) {
    if (e.theorem_id == id) return e;
  }
  FAIL("missing row " << id);
  throw std::logic_error("unreachable");
}

const BoundEntry& row(const std::vector<BoundEntry>& v, const std::string& id) {
  BoundReport r;
  r.entries = v;
  static BoundEntry keep;
  keep = row(r, id);
  return keep;
}

// Companion-matrix roots in double precision.
std::vector<std::complex<double>> eigen_roots(const Polynomial& p) {
  const int d = p.degree();
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
  const double lead = p.leading().get_d();
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -p.coeff(i).get_d() / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(c);
  std::vector<std::complex<double>> out;
  for (int i = 0; i < d; ++i) out.push_back(es.eigenvalues()[i]);
  return out;
}

Polynomial random_poly(std::mt19937_64& rng, int deg, long h) {
  std::uniform_int_distribution<long> dist(-h, h);
  std::vector<mpq_class> c(static_cast<std::size_t>(deg) + 1);
  for (auto& x : c) x = dist(rng);
  if (c.back() == 0) c.back() = 1;
  if (c.front() == 0) c.front() = -1;
  return Polynomial(std::move(c));
}

Polynomial random_palindromic(std::mt19937_64& rng, int half, long h, bool nonnegative) {
  std::uniform_int_distribution<long> dist(nonnegative ? 0 : -h, h);
  std::vector<mpq_class> c(static_cast<std::size_t>(2 * half) + 1);
  for (int j = 0; j <= half; ++j) c[j] = c[2 * half - j] = dist(rng);
  c.front() = c.back() = 1;
  return Polynomial(std::move(c));
}

// Root multiset inside {+-i, +-a, +-1/a} (or {a, 1/a} when positive) for
// one a > 1, read off the companion roots.
bool in_equality_family(const Polynomial& p, bool positive) {
  double a = 0;
  std::vector<double> reals;
  for (auto z : eigen_roots(p)) {
    if (!positive && std::abs(z.real()) < 1e-6 && std::abs(std::abs(z.imag()) - 1) < 1e-6) continue;
    if (std::abs(z.imag()) > 1e-6) return false;
    if (positive && z.real() <= 0) return false;
    reals.push_back(std::abs(z.real()));
    a = std::max(a, std::abs(z.real()));
  }
  if (reals.empty() || a < 1 + 1e-6) return false;
  for (double r : reals) {
    if (std::abs(r - a) > 1e-6 * a && std::abs(r - 1 / a) > 1e-6) return false;
  }
  return true;
}

Polynomial linear(const mpq_class& root) { return Polynomial(std::vector<mpq_class>{-root, 1}); }

}  // namespace

TEST_CASE("constants solve their defining equations") {
  const SolvedConstants& k = solve_constants();
  for (const auto& [name, r] : k.residuals) {
    INFO(name);
    CHECK(r < 1e-12);
  }
  CHECK(k.theta0 == doctest::Approx(1.324717957244746).epsilon(1e-15));
  CHECK(k.golden == doctest::Approx(1.618033988749895).epsilon(1e-15));
  CHECK(std::abs(k.c * std::log(k.c) - k.c - 1) < 1e-12);
  CHECK(std::abs(k.c - 3.5911) < 1e-4);
  CHECK(std::round(k.A * 1000) / 1000 == doctest::Approx(k.A_printed));
  CHECK(std::round(k.B * 1000) / 1000 == doctest::Approx(k.B_printed));
  CHECK(std::abs(k.a * std::pow(std::log(k.a), 3) - 4) < 1e-12);
  CHECK(std::abs(k.b * std::pow(std::log(k.b), 2) * (std::log(k.b) - 2) - 8) < 1e-12);
  // The defining functions increase across the brackets used by the solver.
  auto fa = [](double x) { return x * std::pow(std::log(x), 3) - 4; };
  auto fb = [](double x) { return x * std::pow(std::log(x), 2) * (std::log(x) - 2) - 8; };
  for (double x = 2.0; x < 10.0; x += 0.01) CHECK(fa(x + 0.01) > fa(x));
  for (double x = std::exp(2.0); x < 20.0; x += 0.01) CHECK(fb(x + 0.01) > fb(x));
}

TEST_CASE("omega construction") {
  CHECK(omega_turns(0, 5).real_sign == 1);
  CHECK(omega_turns(3, 6).real_sign == -1);
  CHECK(omega_turns(1, 4).label == "i");
  const auto w = omega_turns(1, 6).approx();
  CHECK(w.real() == doctest::Approx(0.5));
  CHECK(w.imag() == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(std::abs(omega_angle(1.0).approx() - std::polar(1.0, 1.0)) < 1e-15);
}

TEST_CASE("Liouville bounds for the Lehmer polynomial") {
  Analysis a(kLehmer);
  const auto rows = liouville_selfreciprocal(a, 1, 1);
  const BoundEntry& e = row(rows, "liouville_sr_real_or_unit[m=1,sign=+1]");
  CHECK(e.lhs == doctest::Approx(1.0 / 16 / std::sqrt(kLehmerM)).epsilon(1e-12));
  CHECK(e.lhs == doctest::Approx(0.0576).epsilon(1e-3));
  CHECK(e.verdict == Verdict::Holds);
  // Independent closest distance from the companion roots.
  double best = 1e9;
  for (auto z : eigen_roots(kLehmer)) {
    if (std::abs(z.imag()) < 1e-9 || std::abs(std::abs(z) - 1) < 1e-9) best = std::min(best, std::abs(z - 1.0));
  }
  CHECK(e.rhs == doctest::Approx(best).epsilon(1e-9));
  CHECK(e.rhs <= kLehmerM - 1);
  for (int m = 1; m <= 4; ++m) {
    for (int s : {1, -1}) {
      const auto rs = liouville_selfreciprocal(a, m, s);
      CHECK(rs[0].verdict == Verdict::Holds);
      // Every Lehmer root is real or unimodular.
      CHECK(rs[1].verdict == Verdict::NotApplicable);
    }
  }
  for (int n : {3, 5, 12}) {
    Analysis c(cyclotomic(n));
    for (const auto& r : liouville_selfreciprocal(c, 1, 1)) CHECK(r.verdict == Verdict::NotApplicable);
    for (const auto& r : lemmaK_check(c)) CHECK(r.verdict == Verdict::NotApplicable);
  }
}

TEST_CASE("Dubickas rows are report-only") {
  Analysis a(kLehmer);
  const auto rows = dubickas_selfreciprocal(a, 1, 0.01);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].verdict == Verdict::ReportOnly);
  CHECK(rows[1].verdict == Verdict::NotApplicable);
  CHECK(rows[2].verdict == Verdict::ReportOnly);
  CHECK(rows[3].verdict == Verdict::ReportOnly);
  const double scale = std::sqrt(10 * std::log(10.0) * std::log(kLehmerM));
  CHECK(rows[0].lhs == doctest::Approx(std::exp(-(M_PI / 8 + 0.01) * scale)));
  double best = 1e9;
  for (auto z : eigen_roots(kLehmer)) best = std::min({best, std::abs(z - 1.0), std::abs(z + 1.0)});
  CHECK(rows[0].rhs == doctest::Approx(best).epsilon(1e-9));
  CHECK(rows[2].lhs == doctest::Approx(std::exp(-1.01 * scale)));
  Analysis lin(Polynomial{-2, 1});
  for (const auto& r : dubickas_selfreciprocal(lin, 1, 0.01)) CHECK(r.verdict == Verdict::NotApplicable);
}

TEST_CASE("general separation examples") {
  const Omega one = omega_turns(0, 1);
  {
    Analysis a(Polynomial{1, 1, 1});
    const auto rows = general_separation(a, one);
    const BoundEntry& e = row(rows, "general_separation[omega=1]");
    CHECK(e.lhs == doctest::Approx(1 / (2 * M_E)).epsilon(1e-14));
    CHECK(e.rhs == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
    CHECK(e.verdict == Verdict::Holds);
    CHECK(row(rows, "general_separation_positive[omega=1]").verdict == Verdict::Holds);
  }
  {
    Analysis a(Polynomial{1, 2, 1});
    const auto rows = general_separation(a, one);
    const BoundEntry& e = row(rows, "general_separation[omega=1]");
    CHECK(e.lhs == doctest::Approx(0.5 * std::exp(-0.5)).epsilon(1e-14));
    CHECK(e.lhs == doctest::Approx(0.303).epsilon(1e-3));
    CHECK(e.rhs == doctest::Approx(2.0));
    // |P(1)| = L(P) = sup norm.
    CHECK(row(rows, "general_separation_supnorm[omega=1]").verdict == Verdict::Holds);
    // P(-1) = 0.
    CHECK(row(general_separation(a, omega_turns(1, 2)), "general_separation[omega=-1]").verdict == Verdict::NotApplicable);
  }
  {
    Analysis a(Polynomial{0, 0, 0, 1});
    const auto e = row(general_separation(a, omega_turns(1, 4)), "general_separation[omega=i]");
    CHECK(e.rhs == doctest::Approx(1.0));
    CHECK(e.verdict == Verdict::Holds);
  }
}

TEST_CASE("Jensen disk sums") {
  Analysis a(Polynomial{1, 1, 1});
  const JensenDisk j = jensen_disk_rhs(a, omega_turns(0, 1), 0.5);
  REQUIRE(j.applicable);
  CHECK(j.lhs == 0.0);
  CHECK(j.rhs_general == doctest::Approx(std::log(1.5)).epsilon(1e-15));
  REQUIRE(j.rhs_plus_minus_one);
  CHECK(*j.rhs_plus_minus_one == doctest::Approx(std::log1p(0.25 * 2 * 1.0 / 3)).epsilon(1e-15));

  Analysis l(kLehmer);
  for (double rho : {0.1, 0.3, 0.5}) {
    for (const auto& e : jensen_disk_entries(l, omega_turns(0, 1), rho)) CHECK(e.verdict == Verdict::Holds);
  }
  const JensenDisk jl = jensen_disk_rhs(l, omega_turns(0, 1), 0.3);
  double sum = 0;
  for (auto z : eigen_roots(kLehmer)) {
    if (std::abs(z - 1.0) <= 0.3) sum += std::log(0.3 / std::abs(z - 1.0));
  }
  CHECK(sum > std::log(0.3 / (kLehmerM - 1)));
  CHECK(jl.lhs == doctest::Approx(sum).epsilon(1e-9));
  // Shrinking the disk sends both sides to zero.
  const JensenDisk tiny = jensen_disk_rhs(l, omega_turns(0, 1), 1e-9);
  CHECK(tiny.lhs == 0.0);
  CHECK(tiny.rhs_general < 1e-7);
  CHECK_FALSE(jensen_disk_rhs(Analysis(Polynomial{-2, 1}), omega_turns(0, 1), 0.5).applicable);
}

TEST_CASE("lower1 inequalities against direct evaluation") {
  Analysis a(kLehmer);
  const auto roots = eigen_roots(kLehmer);
  for (int sign : {1, -1}) {
    const Omega w = omega_turns(sign > 0 ? 0 : 1, 2);
    const double pw = std::abs(kLehmer.evaluate(sign).get_d());
    double s1 = 0, s2 = 0;
    for (int j = 0; j < 5; ++j) {
      s1 += (5 - j) * std::abs(kLehmer.coeff(j).get_d());
      s2 += (5 - j) * (5 - j) * std::abs(kLehmer.coeff(j).get_d());
    }
    double alpha = 0, beta = 0, gamma = 0;
    for (auto z : roots) {
      const double dist = std::abs(z - static_cast<double>(sign));
      alpha = std::max(alpha, 1 / dist);
      if (std::abs(std::abs(z) - 1) > 1e-6) beta = std::max(beta, std::abs(z) / (dist * dist));
      if (std::abs(z.imag()) > 1e-6 && std::abs(std::abs(z) - 1) > 1e-6) {
        gamma = std::max(gamma, std::pow(std::abs(z) / (dist * dist), 2));
      }
    }
    for (double delta : {1.5, 2.0, std::exp(2.0)}) {
      const auto rows = lower1_bounds(a, w, delta);
      REQUIRE(rows.size() == 4);
      const double X = 5 / std::log(delta) + 1;
      CHECK(rows[0].lhs == doctest::Approx(alpha).epsilon(1e-8));
      CHECK(rows[0].rhs == doctest::Approx(X + (1 + delta) * s1 / pw).epsilon(1e-12));
      CHECK(rows[1].lhs == doctest::Approx(beta).epsilon(1e-8));
      CHECK(rows[1].rhs == doctest::Approx(X * X + X * (1 + delta) * s1 / pw).epsilon(1e-12));
      CHECK(rows[2].rhs == doctest::Approx(X * X + delta * s2 / pw).epsilon(1e-12));
      if (gamma > 0) {
        CHECK(rows[3].lhs == doctest::Approx(gamma).epsilon(1e-8));
        CHECK(rows[3].rhs == doctest::Approx(std::pow(X, 4) + X * X * delta * s2 / pw).epsilon(1e-12));
      } else {
        CHECK(rows[3].verdict == Verdict::NotApplicable);
      }
      for (const auto& r : rows) CHECK(r.verdict != Verdict::Violated);
    }
  }
  // Only two rows off the real axis.
  CHECK(lower1_bounds(a, omega_turns(1, 4), 2.0).size() == 2);
}

TEST_CASE("corollary bounds") {
  const SolvedConstants& k = solve_constants();
  {
    Analysis a(kLehmer);
    const auto rows = corollary_bounds(a, omega_turns(0, 1));
    const BoundEntry& e = row(rows, "height_separation_alpha[omega=1]");
    const double delta = 1 + 1 / std::sqrt(5.0);
    CHECK(e.rhs == doctest::Approx(5 / std::log(delta) + 1 + (1 + delta) * 15).epsilon(1e-12));
    CHECK(e.verdict == Verdict::Holds);
    CHECK(row(rows, "nonneg_separation_alphabeta[omega=1]").verdict == Verdict::NotApplicable);
    // L2(P) = 3 > |P(1)| = 1.
    CHECK(row(rows, "l2_separation_alpha[omega=1]").verdict == Verdict::NotApplicable);
  }
  {
    Analysis a(Polynomial{1, 2, 3, 2, 1});
    const auto rows = corollary_bounds(a, omega_turns(0, 1));
    for (const auto& r : rows) CHECK(r.verdict != Verdict::Violated);
    const BoundEntry& e = row(rows, "nonneg_separation_alphabeta[omega=1]");
    CHECK(e.verdict == Verdict::Holds);
    const double X = 2 / std::log(k.a) + 1;
    CHECK(e.rhs == doctest::Approx(X * X + k.a * 2).epsilon(1e-12));
    CHECK(e.note.find(std::to_string(k.A).substr(0, 5)) != std::string::npos);
    CHECK(row(rows, "l2_separation_alpha[omega=1]").verdict == Verdict::Holds);
  }
  // Height-one self-reciprocal family.
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    const Polynomial p = random_palindromic(rng, 2 + t % 8, 1, false);
    Analysis a(p);
    for (int kk = 0; kk < 6; ++kk) {
      for (const auto& r : corollary_bounds(a, omega_turns(kk, 6))) {
        INFO(p.to_string() << " " << r.theorem_id);
        CHECK(r.verdict != Verdict::Violated);
      }
    }
  }
}

TEST_CASE("Schinzel lower bound and equality certificates") {
  Analysis l(kLehmer);
  const SchinzelResult s = schinzel_lower(l);
  const BoundEntry& e = row(s.entries, "schinzel_m");
  CHECK(e.lhs == doctest::Approx((1 + std::sqrt(1025.0)) / 32).epsilon(1e-14));
  CHECK(e.verdict == Verdict::Holds);
  CHECK(row(s.entries, "schinzel_m_vs_garza").verdict == Verdict::Holds);
  CHECK_FALSE(s.equality_m);
  CHECK_FALSE(s.equality_n);

  const mpq_class two = 2, half = mpq_class(1, 2);
  const Polynomial base = linear(two) * linear(half) * linear(-two) * linear(-half);
  const Polynomial x2p1{1, 0, 1};
  for (int k = 0; k <= 1; ++k) {
    const Polynomial p = k ? base * x2p1 : base;
    Analysis a(p);
    const SchinzelResult r = schinzel_lower(a);
    const BoundEntry& m = row(r.entries, "schinzel_m");
    CHECK(m.lhs == doctest::Approx(4.0).epsilon(1e-9));
    CHECK(std::abs(m.lhs - a.measure().value) < 1e-9);
    CHECK(m.verdict == Verdict::Holds);
    CHECK(r.equality_m);
  }
  {
    Analysis a(linear(two) * linear(half));
    const SchinzelResult r = schinzel_lower(a);
    CHECK(row(r.entries, "schinzel_m").lhs == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.equality_m);
    CHECK(r.equality_n);
  }
  {
    Analysis a(linear(two) * linear(two));
    CHECK(schinzel_lower(a).equality_n);
  }
  // A real root off the pattern breaks equality.
  {
    Analysis a(linear(two) * linear(mpq_class(1, 3)));
    const SchinzelResult r = schinzel_lower(a);
    CHECK_FALSE(r.equality_m);
    CHECK(row(r.entries, "schinzel_m").verdict == Verdict::Holds);
  }
  std::mt19937_64 rng(5);
  int fired = 0;
  for (int t = 0; t < 150; ++t) {
    const Polynomial p = random_poly(rng, 2 + t % 14, 9);
    Analysis a(p);
    const SchinzelResult r = schinzel_lower(a);
    INFO(p.to_string());
    // Quadratics x^2 + bx - 1 have roots a, -1/a and are genuine equality cases.
    CHECK(r.equality_m == in_equality_family(p, false));
    CHECK(r.equality_n == in_equality_family(p, true));
    fired += r.equality_m + r.equality_n;
    for (const auto& x : r.entries) CHECK(x.verdict != Verdict::Violated);
  }
  CHECK(fired < 5);
}

TEST_CASE("real-zero upper bounds") {
  Analysis l(kLehmer);
  const auto b = realzero_branches(l);
  REQUIRE(b);
  CHECK(b->coefficient_branch == doctest::Approx(4.749).epsilon(2e-4));
  CHECK(b->measure_branch == doctest::Approx(10 * std::log(kLehmerM * kLehmerM) / std::log(10.0)).epsilon(1e-12));
  CHECK(row(realzero_upper_com(l), "realzero_complex").verdict == Verdict::Holds);
  const auto len = realzero_upper_length(l);
  CHECK(row(len, "realzero_length").verdict == Verdict::Holds);
  const BoundEntry& integer = row(len, "realzero_integer");
  const double c = solve_constants().c;
  const double lm = std::log(kLehmerM);
  CHECK(integer.rhs == doctest::Approx(2 * std::sqrt(2 * c * 10 * lm) + 2 * (c + 1) * lm + std::log(101.0) / std::log(c) +
                                       2 * std::log(9.0) / std::log(c))
                           .epsilon(1e-10));
  CHECK(integer.verdict == Verdict::Holds);
  const BoundEntry& r1 = row(realzero_upper_length(l, 0.5), "realzero_integer1");
  CHECK(r1.verdict == Verdict::ReportOnly);
  CHECK(r1.note.find("c1 = 0.5") != std::string::npos);

  // Equality family for d = 4: roots +-a, +-1/a with a = 4^(1/4).
  Analysis eq(Polynomial{-2, 0, 1} * Polynomial(std::vector<mpq_class>{mpq_class(-1, 2), 0, 1}));
  const auto be = realzero_branches(eq);
  REQUIRE(be);
  CHECK(be->coefficient_branch == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(be->measure_branch == doctest::Approx(4.0).epsilon(1e-12));
  const VerifyResult v = verify_all(eq.poly());
  CHECK(std::count(v.certificates.begin(), v.certificates.end(), "realzero_complex_equality") == 1);

  Analysis sq(Polynomial{1, 0, 1});
  CHECK(row(realzero_upper_com(sq), "realzero_complex").verdict == Verdict::Holds);
  CHECK(row(realzero_upper_com(Analysis(Polynomial{-1, 0, 1})), "realzero_complex").verdict == Verdict::NotApplicable);
}

TEST_CASE("Vandermonde quantity and its Hadamard bound") {
  CHECK(vandermonde_R(1.0, 7) == 0.0);
  CHECK(vandermonde_R(-1.0, 3) == 0.0);
  CHECK(vandermonde_R(2.0, 3) == doctest::Approx(3.0));
  CHECK(hadamard_R_bound(2.0, 3) == doctest::Approx(16 * std::pow(3.0, 1.5)));
  CHECK(hadamard_R_bound(2.0, 3) == doctest::Approx(83.1).epsilon(1e-3));
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> r(0.0, 3.0), t(0.0, 2 * M_PI);
  std::uniform_int_distribution<int> n(2, 12);
  for (int i = 0; i < 1000; ++i) {
    const std::complex<double> x = std::polar(r(rng), t(rng));
    const int N = n(rng);
    CHECK(vandermonde_R(x, N) <= hadamard_R_bound(x, N) * (1 + 1e-12));
  }
  CHECK_THROWS_AS(vandermonde_R(2.0, 1), std::invalid_argument);
}

TEST_CASE("lemma K and the Zhang-Zagier product") {
  Analysis l(kLehmer);
  const auto rows = lemmaK_check(l, 20);
  REQUIRE(rows.size() == 19);
  for (const auto& r : rows) CHECK(r.verdict == Verdict::Holds);
  // N = 2 is the classical |P(1)| <= 2^d M row of the norm chain.
  const auto chain = norm_chain_check(kLehmer, l.measure());
  CHECK(rows[0].rhs == row(chain, "norm_p1_le_2d_mahler").rhs);

  Analysis lin(Polynomial{-2, 1});
  const BoundEntry& k5 = row(lemmaK_check(lin, 5), "lemma_k[N=5]");
  CHECK(k5.lhs == 1.0);
  CHECK(k5.rhs == doctest::Approx(std::pow(5.0, 0.25) * 4).epsilon(1e-14));

  const auto zz = zhang_zagier_check(lin);
  REQUIRE(zz.size() == 1);
  CHECK(zz[0].lhs == doctest::Approx(std::sqrt(solve_constants().golden)));
  CHECK(zz[0].rhs == doctest::Approx(2.0));
  CHECK(zz[0].verdict == Verdict::Holds);
  Analysis g(Polynomial{-1, -1, 1});
  const auto zg = zhang_zagier_check(g);
  CHECK(zg[0].verdict == Verdict::Holds);
  CHECK(zg[0].rhs == doctest::Approx(std::pow(solve_constants().golden, 2)).epsilon(1e-12));
  CHECK(zhang_zagier_check(Analysis(cyclotomic(6)))[0].verdict == Verdict::NotApplicable);
  CHECK(zhang_zagier_check(Analysis(cyclotomic(3)))[0].verdict == Verdict::Holds);
}

TEST_CASE("around-one report") {
  Analysis l(kLehmer);
  const auto rows = around1_report(l);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) CHECK(r.verdict == Verdict::ReportOnly);
  CHECK(rows[0].rhs >= 2);
  const double C = 2 / M_PI * std::log(solve_constants().golden) - 0.01;
  CHECK(rows[0].lhs == doctest::Approx(C * std::sqrt(10 / (std::log(10.0) * std::log(kLehmerM)))));
  Analysis quad(Polynomial{-1, -3, 1});
  for (const auto& r : around1_report(quad)) CHECK(r.verdict == Verdict::ReportOnly);
}

TEST_CASE("Dobrowolski form") {
  CHECK(std::isnan(dobrowolski_lower(2, 1.0)));
  const double ld = std::log(100.0);
  CHECK(dobrowolski_lower(100, 0.25) == doctest::Approx(0.25 * std::pow(std::log(ld) / ld, 3)));
}

TEST_CASE("verify_all on Lehmer and random corpora") {
  const VerifyResult l = verify_all(kLehmer, {kDefaultBits, "P_L"});
  CHECK(l.report.polynomial_id == "P_L");
  CHECK(l.report.count(Verdict::Violated) == 0);
  CHECK(row(l.report, "schinzel_m").verdict == Verdict::Holds);
  CHECK(row(l.report, "lower1_alpha[omega=1,delta=2]").verdict == Verdict::Holds);
  CHECK(row(l.report, "jensen_disk[omega=1,rho=0.3]").verdict == Verdict::Holds);
  CHECK(l.certificates.empty());

  const VerifyResult c = verify_all(Polynomial{7});
  REQUIRE(c.report.entries.size() == 1);
  CHECK(c.report.entries[0].verdict == Verdict::NotApplicable);

  std::mt19937_64 rng(2024);
  int total = 0;
  for (int t = 0; t < 500; ++t) {
    const Polynomial p = t % 3 == 0 ? random_palindromic(rng, 1 + t % 12, 1 + t % 4, t % 2 == 0)
                                    : random_poly(rng, 1 + t % 30, 1 + t % 10);
    const VerifyResult v = verify_all(p);
    for (const auto& e : v.report.entries) {
      INFO(p.to_string() << " " << e.theorem_id << " lhs=" << e.lhs << " rhs=" << e.rhs);
      CHECK(e.verdict != Verdict::Violated);
    }
    const bool fam = in_equality_family(p, false) || in_equality_family(p, true);
    CHECK(v.certificates.empty() == !fam);
    total += static_cast<int>(v.report.entries.size());
  }
  CHECK(total > 500 * 50);
}
