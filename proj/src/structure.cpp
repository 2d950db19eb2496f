#include "mahlerlab/structure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

#include "mahlerlab/modular.hpp"

namespace mahlerlab {

namespace {

std::vector<int> prime_factors(int n) {
  std::vector<int> out;
  for (int q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      out.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

Polynomial build_cyclotomic(int n) {
  Polynomial phi{-1, 1};
  int rad = 1;
  for (int q : prime_factors(n)) {
    phi = divmod(phi.inflate(q), phi).quotient;
    rad *= q;
  }
  return rad == n ? phi : phi.inflate(n / rad);
}

}  // namespace

const Polynomial& cyclotomic(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic: n must be positive");
  static std::shared_mutex mutex;
  static std::map<int, Polynomial> cache;
  {
    std::shared_lock lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
  }
  Polynomial phi = build_cyclotomic(n);
  std::unique_lock lock(mutex);
  return cache.try_emplace(n, std::move(phi)).first->second;
}

int euler_phi(int n) {
  int r = n;
  for (int q : prime_factors(n)) r = r / q * (q - 1);
  return r;
}

namespace {

std::optional<std::pair<int, Polynomial>> scan_all_orders(const Polynomial& p) {
  const int d = p.degree();
  const long limit = 2L * d * d;
  for (int n = 1; n <= limit; ++n) {
    if (euler_phi(n) <= d && divides(cyclotomic(n), p)) return std::make_pair(n, cyclotomic(n));
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::pair<int, Polynomial>> cyclotomic_factor(const Polynomial& p, const RootSet& rs) {
  const int d = p.degree();
  if (d < 1) return std::nullopt;
  const int limit = std::max(2, 2 * d * d);
  std::vector<int> phi(static_cast<std::size_t>(limit) + 1);
  std::iota(phi.begin(), phi.end(), 0);
  for (int i = 2; i <= limit; ++i) {
    if (phi[i] == i) {
      for (int j = i; j <= limit; j += i) phi[j] -= phi[j] / i;
    }
  }

  std::vector<char> candidate(static_cast<std::size_t>(limit) + 1, 0);
  for (const RootEntry& e : rs.roots()) {
    if (e.on_unit_circle == Decision::No) continue;
    const std::complex<double> z = e.approx();
    const double mod = std::abs(z);
    double tol = 0.5;
    if (e.error_radius < 0.5 * mod) tol = std::asin(std::min(1.0, e.error_radius / (mod - e.error_radius))) / (2 * M_PI);
    tol += 1e-12;
    double t = std::arg(z) / (2 * M_PI);
    if (t < 0) t += 1.0;
    for (int n = 1; n <= limit; ++n) {
      if (phi[n] > d) continue;
      const double k = std::round(t * n);
      if (std::abs(t - k / n) > tol) continue;
      candidate[n] = 1;
    }
  }
  for (int n = 1; n <= limit; ++n) {
    if (candidate[n] && divides(cyclotomic(n), p)) return std::make_pair(n, cyclotomic(n));
  }
  return std::nullopt;
}

std::optional<std::pair<int, Polynomial>> cyclotomic_factor(const Polynomial& p) {
  if (p.degree() < 1) return std::nullopt;
  try {
    return cyclotomic_factor(p, find_roots_adaptive(p));
  } catch (const RootFindError&) {
    return scan_all_orders(p);
  }
}

std::string_view to_string(Irreducibility s) {
  switch (s) {
    case Irreducibility::Irreducible:
      return "Irreducible";
    case Irreducibility::Reducible:
      return "Reducible";
    case Irreducibility::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::string_view to_string(Audit a) {
  switch (a) {
    case Audit::Pass:
      return "pass";
    case Audit::Fail:
      return "fail";
    case Audit::NotApplicable:
      return "not-applicable";
  }
  return "not-applicable";
}

namespace {

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

// Representatives in [0, m).
void zmod(ZPoly& f, const mpz_class& m) {
  for (auto& c : f) {
    c %= m;
    if (c < 0) c += m;
  }
  ztrim(f);
}

// Representatives in (-m/2, m/2].
void zsymmetric(ZPoly& f, const mpz_class& m) {
  const mpz_class half = m / 2;
  for (auto& c : f) {
    c %= m;
    if (c < 0) c += m;
    if (c > half) c -= m;
  }
  ztrim(f);
}

ZPoly from_modp(const modp::Poly& f) {
  ZPoly r;
  r.reserve(f.size());
  for (auto c : f) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

modp::Poly to_modp(const ZPoly& f, const modp::Field& F) {
  modp::Poly r;
  r.reserve(f.size());
  for (const auto& c : f) r.push_back(F.reduce(c));
  modp::trim(r);
  return r;
}

// Lifts target = g h (mod p), g and h monic and coprime mod p, to a
// factorisation modulo p^a of target (monic, reduced mod p^a).
std::pair<ZPoly, ZPoly> hensel_pair(const ZPoly& target, const modp::Poly& g, const modp::Poly& h,
                                    const modp::Field& F, int a) {
  const modp::ExtGcd eg = modp::ext_gcd(g, h, F);
  const mpz_class p(static_cast<unsigned long>(F.modulus()));
  ZPoly G = from_modp(g);
  ZPoly H = from_modp(h);
  mpz_class m = p;
  for (int k = 1; k < a; ++k) {
    ZPoly diff = target;
    const ZPoly gh = zmul(G, H);
    diff.resize(std::max(diff.size(), gh.size()));
    for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    for (auto& c : diff) c /= m;
    const modp::Poly e = to_modp(diff, F);
    const auto [q, sigma] = modp::divmod(modp::mul(eg.s, e, F), h, F);
    const modp::Poly tau = modp::add(modp::mul(eg.t, e, F), modp::mul(q, g, F), F);
    const ZPoly tz = from_modp(tau);
    const ZPoly sz = from_modp(sigma);
    for (std::size_t i = 0; i < tz.size(); ++i) G[i] += m * tz[i];
    for (std::size_t i = 0; i < sz.size(); ++i) H[i] += m * sz[i];
    m *= p;
    zmod(G, m);
    zmod(H, m);
  }
  return {G, H};
}

void hensel_all(const ZPoly& target, const std::vector<modp::Poly>& factors, const modp::Field& F, int a,
                std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    out.push_back(target);
    return;
  }
  const std::size_t half = factors.size() / 2;
  modp::Poly left{1}, right{1};
  for (std::size_t i = 0; i < factors.size(); ++i) {
    (i < half ? left : right) = modp::mul(i < half ? left : right, factors[i], F);
  }
  auto [L, R] = hensel_pair(target, left, right, F, a);
  hensel_all(L, std::vector<modp::Poly>(factors.begin(), factors.begin() + static_cast<long>(half)), F, a, out);
  hensel_all(R, std::vector<modp::Poly>(factors.begin() + static_cast<long>(half), factors.end()), F, a, out);
}

Polynomial to_polynomial(const ZPoly& f) { return Polynomial::from_integers(f); }

struct Recombination {
  Irreducibility status = Irreducibility::Unknown;
  std::optional<Polynomial> factor;
  std::string witness;
};

constexpr long kSubsetBudget = 1L << 22;

// p primitive, squarefree, degree >= 2, p(0) != 0.
Recombination zassenhaus(const Polynomial& p) {
  const int d = p.degree();
  const std::vector<mpz_class> c = p.integer_coefficients();
  const mpz_class lead = c.back();

  // Monic transform F(x) = lead^{d-1} p(x / lead).
  ZPoly Fz(static_cast<std::size_t>(d) + 1);
  for (int j = 0; j < d; ++j) {
    mpz_class s;
    mpz_pow_ui(s.get_mpz_t(), lead.get_mpz_t(), static_cast<unsigned long>(d - 1 - j));
    Fz[j] = c[j] * s;
  }
  Fz[d] = 1;
  const Polynomial F = to_polynomial(Fz);

  std::mt19937_64 rng(0x5eed);
  std::optional<modp::Field> best_field;
  std::vector<modp::Poly> best;
  int tried = 0;
  for (std::uint64_t q = 3; tried < 6 && q < 100000; q += 2) {
    if (!modp::is_prime(q)) continue;
    const modp::Field Fq(q);
    auto red = modp::reduce(F, Fq);
    if (!red || modp::degree(*red) != d) continue;
    if (modp::degree(modp::gcd(*red, modp::derivative(*red, Fq), Fq)) != 0) continue;
    ++tried;
    auto facs = modp::factor_squarefree(*red, Fq, rng);
    if (facs.size() == 1) {
      return {Irreducibility::Irreducible, std::nullopt, "irreducible modulo " + std::to_string(q)};
    }
    if (!best_field || facs.size() < best.size()) {
      best_field = Fq;
      best = std::move(facs);
    }
  }
  if (!best_field) return {Irreducibility::Unknown, std::nullopt, "no suitable prime for lifting"};

  // Coefficients of a monic factor of F are at most C(d, d/2) L2(F) in size.
  mpz_class l2sq = 0;
  for (const auto& x : Fz) l2sq += x * x;
  mpz_class l2 = sqrt(l2sq) + 1;
  mpz_class bound;
  mpz_bin_uiui(bound.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(d / 2));
  bound *= 2 * l2;
  const mpz_class p0(static_cast<unsigned long>(best_field->modulus()));
  mpz_class modulus = p0;
  int a = 1;
  while (modulus <= bound) {
    modulus *= p0;
    ++a;
  }

  ZPoly target = Fz;
  zmod(target, modulus);
  std::vector<ZPoly> lifted;
  hensel_all(target, best, *best_field, a, lifted);
  const int r = static_cast<int>(lifted.size());

  long trials = 0;
  std::vector<int> idx;
  for (int s = 1; 2 * s <= r; ++s) {
    idx.resize(static_cast<std::size_t>(s));
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
      if (++trials > kSubsetBudget) {
        return {Irreducibility::Unknown, std::nullopt, "factor recombination budget exhausted"};
      }
      ZPoly g{1};
      for (int i : idx) {
        g = zmul(g, lifted[static_cast<std::size_t>(i)]);
        zmod(g, modulus);
      }
      zsymmetric(g, modulus);
      if (g[0] != 0 && Fz[0] % g[0] == 0) {
        const Polynomial G = to_polynomial(g);
        if (divides(G, F)) {
          // Undo the monic transform: G(lead x) has a primitive part dividing p.
          std::vector<mpq_class> back(G.coefficients().size());
          mpq_class pw = 1;
          for (std::size_t j = 0; j < back.size(); ++j) {
            back[j] = G.coefficients()[j] * pw;
            pw *= lead;
          }
          return {Irreducibility::Reducible, Polynomial(std::move(back)).primitive_part(), {}};
        }
      }
      int k = s - 1;
      while (k >= 0 && idx[static_cast<std::size_t>(k)] == r - s + k) --k;
      if (k < 0) break;
      ++idx[static_cast<std::size_t>(k)];
      for (int j = k + 1; j < s; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
  }
  std::ostringstream w;
  w << "no proper factor among subsets of " << r << " lifted factors modulo " << best_field->modulus() << "^" << a;
  return {Irreducibility::Irreducible, std::nullopt, w.str()};
}

IrreducibilityVerdict reducible(Polynomial factor) {
  IrreducibilityVerdict v;
  v.status = Irreducibility::Reducible;
  v.witness = "factor " + factor.to_string();
  v.factor = std::move(factor);
  return v;
}

std::vector<mpz_class> positive_divisors(const mpz_class& n) {
  std::vector<mpz_class> out;
  mpz_class m = abs(n);
  if (m > 1000000000) return {1, m};
  const unsigned long v = m.get_ui();
  for (unsigned long q = 1; q * q <= v; ++q) {
    if (v % q == 0) {
      out.emplace_back(q);
      if (q * q != v) out.emplace_back(v / q);
    }
  }
  return out;
}

}  // namespace

IrreducibilityVerdict irreducibility_probe(const Polynomial& input, int prime_budget, int degree_cap) {
  IrreducibilityVerdict v;
  const int d = input.degree();
  if (d < 1) {
    v.witness = "constant polynomial";
    return v;
  }
  const Polynomial p = input.primitive_part();
  if (d == 1) {
    v.status = Irreducibility::Irreducible;
    v.witness = "degree 1";
    return v;
  }
  if (p.coeff(0) == 0) return reducible(Polynomial{0, 1});
  if (!is_squarefree(p)) return reducible(gcd(p, p.derivative()).primitive_part());

  std::vector<std::string> log;
  // Stage 1: an irreducible reduction of full degree proves irreducibility.
  const mpz_class lead = p.leading().get_num();
  int used = 0;
  for (std::uint64_t q = 3; used < prime_budget; q += 2) {
    if (!modp::is_prime(q) || mpz_divisible_ui_p(lead.get_mpz_t(), q)) continue;
    ++used;
    const modp::Field F(q);
    auto red = modp::reduce(p, F);
    if (!red) continue;
    const modp::Poly f = modp::make_monic(*red, F);
    if (modp::degree(modp::gcd(f, modp::derivative(f, F), F)) != 0) continue;
    const auto dd = modp::distinct_degree(f, F);
    if (dd.size() == 1 && dd.front().second == d) {
      v.status = Irreducibility::Irreducible;
      v.prime = q;
      v.witness = "irreducible modulo " + std::to_string(q);
      return v;
    }
  }
  log.push_back("no irreducible reduction among " + std::to_string(used) + " primes");

  // Stage 2: rational roots and cyclotomic factors.
  std::optional<RootSet> rs;
  try {
    rs = find_roots_adaptive(p);
  } catch (const RootFindError&) {
    log.push_back("root finding failed");
  }
  if (rs) {
    const auto divisors = positive_divisors(lead);
    for (const RootEntry& e : rs->roots()) {
      if (e.real == Decision::No) continue;
      const double re = e.approx().real();
      for (const auto& b : divisors) {
        const double t = std::round(re * b.get_d());
        for (double shift : {0.0, -1.0, 1.0}) {
          const mpq_class root(mpz_class(t + shift), b);
          if (p.evaluate(mpq_class(root)) == 0) {
            mpq_class r = root;
            r.canonicalize();
            return reducible(Polynomial(std::vector<mpq_class>{-r, 1}).primitive_part());
          }
        }
      }
    }
    log.push_back("no rational root");
    if (auto cf = cyclotomic_factor(p, *rs)) {
      if (cf->second.degree() < d) return reducible(cf->second);
      v.status = Irreducibility::Irreducible;
      v.witness = "cyclotomic polynomial of order " + std::to_string(cf->first);
      return v;
    }
    log.push_back("no cyclotomic factor");
  }

  // Stage 3: lifting and recombination.
  if (d <= degree_cap) {
    Recombination rc = zassenhaus(p);
    if (rc.status == Irreducibility::Reducible) return reducible(*rc.factor);
    if (rc.status == Irreducibility::Irreducible) {
      v.status = Irreducibility::Irreducible;
      v.witness = rc.witness;
      return v;
    }
    log.push_back(rc.witness);
  } else {
    log.push_back("degree " + std::to_string(d) + " above factorisation cap " + std::to_string(degree_cap));
  }
  v.status = Irreducibility::Unknown;
  for (std::size_t i = 0; i < log.size(); ++i) v.witness += (i ? "; " : "") + log[i];
  return v;
}

namespace {

const char* const kAuditKeys[] = {"simple_zeros",  "symmetry",         "annulus_theta",    "nonreal_annulus",
                                  "annulus_count", "no_root_of_unity", "no_imaginary_root"};

MeasureResult measure_for_theta(const Polynomial& p, double theta, Bits bits) {
  MeasureResult m = mahler(p, bits);
  auto straddles = [&](const MeasureResult& r) {
    return (r.lower() <= 1.0 && r.upper() > 1.0 && r.value != 1.0) || (r.lower() <= theta && r.upper() > theta);
  };
  for (Bits b = bits * 2; straddles(m) && b <= 1024; b *= 2) m = mahler(p, b);
  return m;
}

Audit imaginary_axis_audit(const Polynomial& p) {
  // P(iy) = A(-y^2) + i y B(-y^2) with A, B the even and odd parts.
  std::vector<mpq_class> even, odd;
  for (int j = 0; j <= p.degree(); ++j) (j % 2 == 0 ? even : odd).push_back(p.coeff(j));
  const Polynomial A(std::move(even)), B(std::move(odd));
  if (B.is_zero()) return Audit::Fail;
  const Polynomial g = gcd(A, B);
  if (g.degree() < 1) return Audit::Pass;
  const RealCount rc = count_real(find_roots_adaptive(g));
  return rc.real - rc.positive > 0 ? Audit::Fail : Audit::Pass;
}

}  // namespace

EthetaVerdict classify_E_theta(const Polynomial& p, double theta, const EthetaOptions& opt) {
  if (!(theta > 1.0 && theta <= kTheta0 + 1e-15)) {
    throw std::invalid_argument("classify_E_theta: theta must lie in (1, theta_0]");
  }
  EthetaVerdict v;
  v.theta = theta;
  for (const char* k : kAuditKeys) v.property_audit[k] = Audit::NotApplicable;
  if (p.degree() < 1) {
    v.failures.push_back("measureOutOfRange");
    return v;
  }

  const bool integral = p.is_integer();
  if (!integral || !p.is_monic()) v.failures.push_back("nonMonic");
  if (integral) {
    v.irreducibility = irreducibility_probe(p, opt.prime_budget, opt.degree_cap);
    if (v.irreducibility.status == Irreducibility::Reducible) v.failures.push_back("reducible");
  }
  v.measure = measure_for_theta(p, theta, opt.bits);
  const bool above_one = v.measure.lower() > 1.0;
  const bool below_theta = v.measure.upper() <= theta;
  if (!above_one || !below_theta) v.failures.push_back("measureOutOfRange");
  const StructureFlags flags = structural_flags(p);
  if (flags.primitive_c1 && !*flags.primitive_c1) v.failures.push_back("notPrimitiveC1");
  if (flags.sign_c2 && !*flags.sign_c2) v.failures.push_back("signC2Fail");

  if (!v.failures.empty()) return v;
  v.member = v.irreducibility.status == Irreducibility::Irreducible;
  v.conditional = v.irreducibility.status == Irreducibility::Unknown;
  // Measures equal to theta_0 (x^3 + x^2 - 1) are admitted at theta = theta_0.
  if (!flags.self_reciprocal && v.measure.upper() < kTheta0 - 1e-9) {
    throw std::logic_error("classify_E_theta: non-self-reciprocal candidate with measure below theta_0");
  }

  const RootSet rs = find_roots_adaptive(p, opt.bits);
  auto& audit = v.property_audit;
  audit["simple_zeros"] = is_squarefree(p) ? Audit::Pass : Audit::Fail;
  audit["symmetry"] = flags.self_reciprocal ? Audit::Pass : Audit::Fail;

  const double slack = 1e-12;
  const double st = std::sqrt(theta);
  bool in_theta = true, in_sqrt = true;
  for (const RootEntry& e : rs.roots()) {
    const double mod = std::abs(e.approx());
    const double r = e.error_radius;
    if (mod + r > theta * (1 + slack) || mod - r < (1 - slack) / theta) in_theta = false;
    if (e.real != Decision::Yes && (mod + r > st * (1 + slack) || mod - r < (1 - slack) / st)) in_sqrt = false;
  }
  audit["annulus_theta"] = in_theta ? Audit::Pass : Audit::Fail;
  audit["nonreal_annulus"] = in_sqrt ? Audit::Pass : Audit::Fail;

  const int n = p.degree() / 2;
  Audit count_audit = opt.annulus_radii.empty() ? Audit::NotApplicable : Audit::Pass;
  for (double r : opt.annulus_radii) {
    if (!(r > 1.0)) throw std::invalid_argument("classify_E_theta: annulus radius must exceed 1");
    const DiskCount outer = count_modulus_greater(rs, r);
    // Inversion symmetry makes the inner count equal the outer one.
    const int inside = p.degree() - 2 * outer.count;
    if (!outer.certified) {
      if (count_audit == Audit::Pass) count_audit = Audit::NotApplicable;
    } else if (!(inside > 2.0 * (n - std::log(theta) / std::log(r)))) {
      count_audit = Audit::Fail;
    }
  }
  audit["annulus_count"] = count_audit;
  audit["no_root_of_unity"] = cyclotomic_factor(p, rs) ? Audit::Fail : Audit::Pass;
  audit["no_imaginary_root"] = imaginary_axis_audit(p);
  return v;
}

}  // namespace mahlerlab
