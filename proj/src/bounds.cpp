#include "mahlerlab/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace mahlerlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kE2 = 7.38905609893064952310;

std::string num(double x) {
  std::ostringstream s;
  s.precision(6);
  s << x;
  return s.str();
}

std::string delta_label(double delta) { return std::abs(delta - kE2) < 1e-12 ? "e^2" : num(delta); }

// Increasing f with f(lo) < 0 < f(hi); returns the root and |f(root)|.
std::pair<double, double> bisect(const std::function<BigFloat(const BigFloat&)>& f, double lo_d, double hi_d) {
  constexpr Bits bits = 192;
  BigFloat lo(lo_d, bits), hi(hi_d, bits);
  for (int i = 0; i < 180; ++i) {
    BigFloat mid = (lo + hi) * 0.5;
    if (f(mid).sign() < 0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  BigFloat root = (lo + hi) * 0.5;
  return {root.to_double(), std::abs(f(BigFloat(root.to_double(), bits)).to_double())};
}

}  // namespace

const SolvedConstants& solve_constants() {
  static const SolvedConstants k = [] {
    SolvedConstants c;
    auto [t0, rt] = bisect([](const BigFloat& x) { return x * x * x - x - 1.0; }, 1.0, 2.0);
    c.theta0 = t0;
    c.residuals["theta0"] = rt;
    c.golden = (1.0 + std::sqrt(5.0)) / 2.0;
    auto [cc, rc] = bisect([](const BigFloat& x) { return x * log(x) - x - 1.0; }, 3.0, 4.0);
    c.c = cc;
    c.residuals["c"] = rc;
    auto [aa, ra] = bisect(
        [](const BigFloat& x) {
          BigFloat l = log(x);
          return x * l * l * l - 4.0;
        },
        2.0, 10.0);
    c.a = aa;
    c.residuals["a"] = ra;
    c.A = std::sqrt(4.0 / (aa * (2.0 + std::log(aa))));
    auto [bb, rb] = bisect(
        [](const BigFloat& x) {
          BigFloat l = log(x);
          return x * l * l * (l - 2.0) - 8.0;
        },
        kE2 + 1e-9, 20.0);
    c.b = bb;
    c.residuals["b"] = rb;
    c.B = std::pow(8.0 * std::log(bb * bb) / (bb * (std::log(bb) + 2.0)), 0.25);
    return c;
  }();
  return k;
}

Omega omega_turns(long k, long n, Bits bits) {
  if (n <= 0) throw std::invalid_argument("omega_turns: n must be positive");
  k %= n;
  if (k < 0) k += n;
  Omega w;
  if (k == 0) {
    w.label = "1";
    w.z = BigComplex(1.0, 0.0, bits);
    w.real_sign = 1;
  } else if (2 * k == n) {
    w.label = "-1";
    w.z = BigComplex(-1.0, 0.0, bits);
    w.real_sign = -1;
  } else if (4 * k == n) {
    w.label = "i";
    w.z = BigComplex(0.0, 1.0, bits);
  } else if (4 * k == 3 * n) {
    w.label = "-i";
    w.z = BigComplex(0.0, -1.0, bits);
  } else {
    BigFloat t = pi(bits) * 2.0 * BigFloat(k, bits) / BigFloat(n, bits);
    w.z = BigComplex(cos(t), sin(t));
    w.label = "e^(2pi*i*" + std::to_string(k) + "/" + std::to_string(n) + ")";
  }
  return w;
}

Omega omega_angle(double radians, Bits bits) {
  Omega w;
  BigFloat t(radians, bits);
  w.z = BigComplex(cos(t), sin(t));
  w.label = "e^(i*" + num(radians) + ")";
  return w;
}

Analysis::Analysis(const Polynomial& p, Bits bits) : poly_(std::make_shared<const Polynomial>(p)), bits_(bits) {
  if (p.degree() < 1) throw std::invalid_argument("Analysis: polynomial must have degree >= 1");
  roots_ = find_roots_adaptive(p, bits);
  measure_ = mahler_from_roots(p, roots_);
  norms_ = full_norms(p, measure_);
  flags_ = structural_flags(p);
  sup_ = sup_norm_circle(p);
  real_ = count_real(roots_);
  cyclotomic_ = cyclotomic_factor(p, roots_);
}

bool Analysis::self_reciprocal_even() const { return flags_.self_reciprocal && degree() % 2 == 0 && degree() >= 2; }

const IrreducibilityVerdict& Analysis::irreducibility() const {
  if (!irreducibility_) {
    irreducibility_ = poly_->is_integer() ? irreducibility_probe(*poly_) : IrreducibilityVerdict{};
  }
  return *irreducibility_;
}

Analysis::PointValue Analysis::value_at(const Omega& w) const {
  PointValue v;
  if (w.real_sign != 0) {
    const mpq_class x = poly_->evaluate(mpq_class(w.real_sign));
    v.modulus = mpq_class(abs(x)).get_d();
    v.nonzero = x != 0;
    return v;
  }
  const ComplexEval ev = evaluate(*poly_, w.z);
  const double mod = ev.value.abs().to_double();
  const double floor = 2.0 * ev.error.to_double() + std::ldexp(norms_.length.get_d(), -static_cast<int>(bits_) / 2);
  v.modulus = mod;
  v.nonzero = mod > floor;
  return v;
}

namespace {

double distance(const RootEntry& e, const Omega& w) { return (e.value - w.z).abs().to_double(); }

double modulus(const RootEntry& e) { return e.value.abs().to_double(); }

// Largest lhs over the roots that qualify for one inequality.
struct Worst {
  double lhs = -kInf;
  double uncertainty = 0.0;
  int used = 0;
  int undecided = 0;

  void offer(double value, double unc) {
    ++used;
    if (value > lhs) {
      lhs = value;
      uncertainty = unc;
    }
  }
};

BoundEntry finish(const std::string& id, const Worst& w, double rhs, std::string note = {}) {
  if (w.used == 0) return not_applicable(id, w.undecided ? "unit-circle status undecided" : "no qualifying root");
  if (w.undecided) note += (note.empty() ? "" : "; ") + std::to_string(w.undecided) + " undecided roots skipped";
  return check_leq(id, w.lhs, rhs, w.uncertainty, std::move(note));
}

// Smallest rhs - lhs over roots for lower bounds of the form bound <= distance.
struct Closest {
  double bound = 0.0;
  double dist = kInf;
  double uncertainty = 0.0;
  bool any = false;

  void offer(double b, double d, double unc) {
    if (!any || d - b < dist - bound) {
      bound = b;
      dist = d;
      uncertainty = unc;
      any = true;
    }
  }
};

BoundEntry finish(const std::string& id, const Closest& c, std::string note = {}) {
  if (!c.any) return not_applicable(id, "no qualifying root");
  return check_leq(id, c.bound, c.dist, c.uncertainty, std::move(note));
}

struct CoefficientSums {
  double s1 = 0.0;  // sum_{j<n} (n-j) |a_j|
  double s2 = 0.0;  // sum_{j<n} (n-j)^2 |a_j|
};

CoefficientSums coefficient_sums(const Polynomial& p) {
  const int n = p.degree() / 2;
  mpq_class s1 = 0, s2 = 0;
  for (int j = 0; j < n; ++j) {
    const mpq_class a = abs(p.coeff(j));
    s1 += a * (n - j);
    s2 += a * (n - j) * (n - j);
  }
  return {s1.get_d(), s2.get_d()};
}

bool nonnegative_coefficients(const Polynomial& p) {
  for (const auto& c : p.coefficients()) {
    if (c < 0) return false;
  }
  return true;
}

std::string tag(const std::string& base, const std::string& params) { return base + "[" + params + "]"; }

}  // namespace

std::vector<BoundEntry> liouville_selfreciprocal(const Analysis& a, int m, int sign) {
  const std::string params = "m=" + std::to_string(m) + ",sign=" + (sign > 0 ? "+1" : "-1");
  const std::string id1 = tag("liouville_sr_real_or_unit", params);
  const std::string id2 = tag("liouville_sr_nonreal", params);
  std::string why;
  if (!a.monic_integer()) why = "requires a monic integer polynomial";
  else if (!a.self_reciprocal_even()) why = "requires a self-reciprocal polynomial of even degree";
  else if (!is_squarefree(a.poly())) why = "requires simple zeros";
  else if (a.cyclotomic()) why = "vanishes at a root of unity";
  if (!why.empty()) return {not_applicable(id1, why), not_applicable(id2, why)};

  const int n = a.degree() / 2;
  const double M = a.measure().value;
  const double dM = a.measure().error_bound;
  const double b1 = std::pow(2.0, 1 - n) / (m * std::pow(M, m / 2.0));
  const double b2 = std::pow(2.0, 1 - n / 2.0) / (m * std::pow(M, m / 4.0));
  std::vector<Omega> omegas;
  for (int k = 0; k < m; ++k) omegas.push_back(omega_turns(2 * k + (sign < 0 ? 1 : 0), 2 * m, a.bits()));

  Closest c1, c2;
  int undecided = 0;
  for (const RootEntry& e : a.roots().roots()) {
    const bool first = e.real == Decision::Yes || e.on_unit_circle == Decision::Yes;
    const bool second = e.real == Decision::No && e.on_unit_circle == Decision::No;
    if (!first && !second) ++undecided;
    for (const Omega& w : omegas) {
      const double d = distance(e, w);
      if (second) {
        c2.offer(b2, d, b2 * m / 4.0 * dM / M + e.error_radius);
      } else {
        // The weaker bound holds for every root.
        c1.offer(b1, d, b1 * m / 2.0 * dM / M + e.error_radius);
      }
    }
  }
  std::string note = undecided ? std::to_string(undecided) + " roots of undecided class checked against the weaker bound" : "";
  return {finish(id1, c1, note), finish(id2, c2)};
}

std::vector<BoundEntry> dubickas_selfreciprocal(const Analysis& a, int m, double epsilon) {
  const std::string params = "m=" + std::to_string(m) + ",eps=" + num(epsilon);
  std::vector<std::string> ids{tag("dubickas_sr", params), tag("dubickas_sr_nonreal", params)};
  if (m == 1) {
    ids.push_back(tag("mignotte_waldschmidt", "eps=" + num(epsilon)));
    ids.push_back(tag("dubickas_general", "eps=" + num(epsilon)));
  }
  std::string why;
  if (!a.monic_integer()) why = "requires a monic integer polynomial";
  else if (!a.self_reciprocal_even()) why = "requires a self-reciprocal polynomial of even degree";
  else if (!(a.measure().lower() > 1.0)) why = "requires M(P) > 1";
  else if (a.irreducibility().status != Irreducibility::Irreducible) why = "requires an irreducible polynomial";
  std::vector<BoundEntry> out;
  if (!why.empty()) {
    for (const auto& id : ids) out.push_back(not_applicable(id, why));
    return out;
  }
  const double d = a.degree();
  const double scale = std::sqrt(d * std::log(d) * std::log(a.measure().value));
  std::vector<Omega> omegas;
  for (int k = 0; k < 2 * m; ++k) omegas.push_back(omega_turns(k, 2 * m, a.bits()));
  const Omega one = omega_turns(0, 1, a.bits());

  double min_all = kInf, min_nonreal = kInf, min_one = kInf;
  for (const RootEntry& e : a.roots().roots()) {
    const bool nonreal_off_circle = e.real == Decision::No && e.on_unit_circle == Decision::No;
    for (const Omega& w : omegas) {
      const double dist = distance(e, w);
      min_all = std::min(min_all, dist);
      if (nonreal_off_circle) min_nonreal = std::min(min_nonreal, dist);
    }
    min_one = std::min(min_one, distance(e, one));
  }
  const double sm = std::sqrt(static_cast<double>(m));
  const std::string note = "asymptotic, threshold D0(eps) not effective";
  out.push_back(report_only(ids[0], std::exp(-(M_PI * sm / 8 + epsilon) * scale), min_all, note));
  if (min_nonreal < kInf) {
    out.push_back(report_only(ids[1], std::exp(-(M_PI * sm / 16 + epsilon) * scale), min_nonreal, note));
  } else {
    out.push_back(not_applicable(ids[1], "no non-real root off the unit circle"));
  }
  if (m == 1) {
    out.push_back(report_only(ids[2], std::exp(-(1 + epsilon) * scale), min_one, note));
    out.push_back(report_only(ids[3], std::exp(-(M_PI / 4 + epsilon) * scale), min_one, note));
  }
  return out;
}

std::vector<BoundEntry> general_separation(const Analysis& a, const Omega& w) {
  const std::string id = tag("general_separation", "omega=" + w.label);
  const std::string id_pos = tag("general_separation_positive", "omega=" + w.label);
  const std::string id_sup = tag("general_separation_supnorm", "omega=" + w.label);
  const auto pv = a.value_at(w);
  std::vector<BoundEntry> out;
  if (!pv.nonzero) {
    out.push_back(not_applicable(id, "P(omega) = 0"));
    if (w.real_sign == 1) out.push_back(not_applicable(id_pos, "P(omega) = 0"));
    out.push_back(not_applicable(id_sup, "P(omega) = 0"));
    return out;
  }
  const double d = a.degree();
  const double L = a.norms().length.get_d();
  Closest gen, pos, sup;
  for (const RootEntry& e : a.roots().roots()) {
    const double dist = distance(e, w);
    const double mu = e.multiplicity;
    gen.offer(std::pow(pv.modulus / (M_E * L), 1.0 / mu) / d, dist, e.error_radius);
    pos.offer(std::exp(-1.0 / mu) / d, dist, e.error_radius);
    sup.offer(std::pow(1.0 / (M_E * std::sqrt(d + 1)), 1.0 / mu) / d, dist, e.error_radius);
  }
  out.push_back(finish(id, gen));
  if (w.real_sign == 1) {
    out.push_back(nonnegative_coefficients(a.poly()) ? finish(id_pos, pos)
                                                     : not_applicable(id_pos, "requires nonnegative coefficients"));
  }
  // The supremum-norm case only uses L(P) <= sqrt(d+1) |P(omega)|.
  if (L <= std::sqrt(d + 1) * pv.modulus) {
    out.push_back(finish(id_sup, sup));
  } else {
    out.push_back(not_applicable(id_sup, "|P(omega)| below the supremum norm"));
  }
  return out;
}

JensenDisk jensen_disk_rhs(const Analysis& a, const Omega& w, double rho) {
  JensenDisk j;
  if (!a.self_reciprocal_even() || !(rho > 0 && rho < 1)) return j;
  const auto pv = a.value_at(w);
  if (!pv.nonzero) return j;
  j.applicable = true;
  const int n = a.degree() / 2;
  const CoefficientSums s = coefficient_sums(a.poly());
  for (const RootEntry& e : a.roots().roots()) {
    const double dist = distance(e, w);
    if (dist > rho) continue;
    j.lhs += e.multiplicity * std::log(rho / dist);
    j.uncertainty += dist > e.error_radius ? e.multiplicity * e.error_radius / (dist - e.error_radius) : kInf;
  }
  j.rhs_general = std::log1p(rho * (1 + std::pow(1 - rho, -n)) * s.s1 / pv.modulus);
  if (w.real_sign != 0) j.rhs_plus_minus_one = std::log1p(rho * rho * std::pow(1 - rho, -n) * s.s2 / pv.modulus);
  return j;
}

std::vector<BoundEntry> jensen_disk_entries(const Analysis& a, const Omega& w, double rho) {
  const std::string params = "omega=" + w.label + ",rho=" + num(rho);
  const std::string id = tag("jensen_disk", params);
  const std::string id_pm = tag("jensen_disk_pm1", params);
  const JensenDisk j = jensen_disk_rhs(a, w, rho);
  std::vector<BoundEntry> out;
  if (!j.applicable) {
    const std::string why = a.self_reciprocal_even() ? "P(omega) = 0" : "requires a self-reciprocal polynomial of even degree";
    out.push_back(not_applicable(id, why));
    if (w.real_sign != 0) out.push_back(not_applicable(id_pm, why));
    return out;
  }
  out.push_back(check_leq(id, j.lhs, j.rhs_general, j.uncertainty));
  if (j.rhs_plus_minus_one) out.push_back(check_leq(id_pm, j.lhs, *j.rhs_plus_minus_one, j.uncertainty));
  return out;
}

namespace {

struct SeparationSpec {
  std::string prefix;  // theorem id prefix
  std::string params;
  // delta for (alpha), (beta gamma), (alpha beta), (gamma); NaN disables a row.
  std::array<double, 4> delta;
  // Upper bounds for S1 / |P(omega)| and S2 / |P(omega)|.
  double t1 = 0.0;
  double t2 = 0.0;
  std::array<std::string, 4> notes;
};

std::vector<BoundEntry> separation_rows(const Analysis& a, const Omega& w, const SeparationSpec& s) {
  static const std::array<const char*, 4> names{"alpha", "betagamma", "alphabeta", "gamma"};
  const double n = a.degree() / 2;
  Worst worst[4];
  const bool pm = w.real_sign != 0;
  for (const RootEntry& e : a.roots().roots()) {
    const double dist = distance(e, w);
    const double mod = modulus(e);
    const double r = e.error_radius;
    const double rel = dist > r ? r / (dist - r) : kInf;
    const double inv = 1.0 / dist;
    worst[0].offer(inv, inv * rel);
    const double q = mod * inv * inv;
    const double q_unc = q * (r / std::max(mod - r, 1e-300) + 2 * rel);
    if (e.on_unit_circle == Decision::No) {
      worst[1].offer(q, q_unc);
    } else if (e.on_unit_circle == Decision::Unknown) {
      ++worst[1].undecided;
    }
    if (pm) {
      worst[2].offer(q, q_unc);
      if (e.real == Decision::No && e.on_unit_circle == Decision::No) {
        worst[3].offer(q * q, 2 * q * q_unc);
      } else if (e.real == Decision::Unknown || e.on_unit_circle == Decision::Unknown) {
        ++worst[3].undecided;
      }
    }
  }
  std::vector<BoundEntry> out;
  for (int k = 0; k < 4; ++k) {
    const double delta = s.delta[static_cast<std::size_t>(k)];
    if (std::isnan(delta) || (k >= 2 && !pm)) continue;
    const double X = n / std::log(delta) + 1;
    double rhs = 0;
    switch (k) {
      case 0:
        rhs = X + (1 + delta) * s.t1;
        break;
      case 1:
        rhs = X * X + X * (1 + delta) * s.t1;
        break;
      case 2:
        rhs = X * X + delta * s.t2;
        break;
      case 3:
        rhs = X * X * X * X + X * X * delta * s.t2;
        break;
    }
    const std::string id = tag(s.prefix + "_" + names[static_cast<std::size_t>(k)], s.params);
    out.push_back(finish(id, worst[k], rhs, s.notes[static_cast<std::size_t>(k)]));
  }
  return out;
}

}  // namespace

std::vector<BoundEntry> lower1_bounds(const Analysis& a, const Omega& w, double delta) {
  SeparationSpec s;
  s.prefix = "lower1";
  s.params = "omega=" + w.label + ",delta=" + delta_label(delta);
  s.delta = {delta, delta, delta, delta};
  const auto pv = a.value_at(w);
  std::string why;
  if (!a.self_reciprocal_even()) why = "requires a self-reciprocal polynomial of even degree";
  else if (!pv.nonzero) why = "P(omega) = 0";
  else if (!(delta > 1)) why = "requires delta > 1";
  if (!why.empty()) {
    std::vector<BoundEntry> out;
    for (const char* nm : {"alpha", "betagamma", "alphabeta", "gamma"}) {
      if (w.real_sign == 0 && (std::string(nm) == "alphabeta" || std::string(nm) == "gamma")) continue;
      out.push_back(not_applicable(tag(std::string("lower1_") + nm, s.params), why));
    }
    return out;
  }
  const CoefficientSums cs = coefficient_sums(a.poly());
  s.t1 = cs.s1 / pv.modulus;
  s.t2 = cs.s2 / pv.modulus;
  return separation_rows(a, w, s);
}

std::vector<BoundEntry> corollary_bounds(const Analysis& a, const Omega& w) {
  const SolvedConstants& k = solve_constants();
  const std::string params = "omega=" + w.label;
  const auto pv = a.value_at(w);
  const bool base = a.self_reciprocal_even() && pv.nonzero;
  const bool pm = w.real_sign != 0;
  const double n = a.degree() / 2;
  std::vector<BoundEntry> out;
  auto na_rows = [&](const std::string& prefix, std::vector<std::string> names, const std::string& why) {
    for (const auto& nm : names) out.push_back(not_applicable(tag(prefix + "_" + nm, params), why));
  };
  const std::string base_why = a.self_reciprocal_even() ? "P(omega) = 0" : "requires a self-reciprocal polynomial of even degree";
  std::vector<std::string> all{"alpha", "betagamma"};
  if (pm) {
    all.push_back("alphabeta");
    all.push_back("gamma");
  }

  // Height majorants with |P(omega)| >= 1.
  if (!base) {
    na_rows("height_separation", all, base_why);
  } else if (pv.modulus < 1.0) {
    na_rows("height_separation", all, "requires |P(omega)| >= 1");
  } else {
    const double H = a.norms().height.get_d();
    SeparationSpec s;
    s.prefix = "height_separation";
    s.params = params;
    s.delta = {1 + 1 / std::sqrt(n), k.c, 1 + std::pow(n, -0.25), kE2};
    s.t1 = n * (n + 1) * H / 2;
    s.t2 = n * (n + 1) * (2 * n + 1) * H / 6;
    s.notes = {"asymptotic |mu-omega| >~ H^-1 n^-2 = " + num(1 / (H * n * n)),
               "asymptotic (2/(cH))^(1/2) n^(-3/2) = " + num(std::sqrt(2 / (k.c * H)) * std::pow(n, -1.5)),
               "asymptotic (3/H)^(1/2) n^(-3/2) = " + num(std::sqrt(3 / H) * std::pow(n, -1.5)),
               "asymptotic (2/e)^(1/2) (3/H)^(1/4) n^(-5/4) = " +
                   num(std::sqrt(2 / M_E) * std::pow(3 / H, 0.25) * std::pow(n, -1.25))};
    auto rows = separation_rows(a, w, s);
    out.insert(out.end(), rows.begin(), rows.end());
  }

  // Nonnegative coefficients at omega = 1.
  if (w.real_sign == 1) {
    if (!base) {
      na_rows("nonneg_separation", {"alphabeta", "gamma"}, base_why);
    } else if (!nonnegative_coefficients(a.poly())) {
      na_rows("nonneg_separation", {"alphabeta", "gamma"}, "requires nonnegative coefficients");
    } else {
      SeparationSpec s;
      s.prefix = "nonneg_separation";
      s.params = params;
      s.delta = {NAN, NAN, k.a, k.b};
      s.t2 = n * n / 2;
      s.notes = {"", "", "asymptotic A/n with A = " + num(k.A) + " = " + num(k.A / n),
                 "asymptotic B/n with B = " + num(k.B) + " = " + num(k.B / n)};
      auto rows = separation_rows(a, w, s);
      out.insert(out.end(), rows.begin(), rows.end());
    }
  }

  // Euclidean-norm majorants with L2(P) <= |P(omega)|.
  if (!base) {
    na_rows("l2_separation", all, base_why);
  } else if (a.norms().l2() > pv.modulus) {
    na_rows("l2_separation", all, "requires |P(omega)| = sup norm");
  } else {
    SeparationSpec s;
    s.prefix = "l2_separation";
    s.params = params;
    s.delta = {1 + std::pow(n, -0.25), k.c, 1 + std::pow(n, -0.125), kE2};
    s.t1 = std::sqrt(n * (n + 1) * (2 * n + 1) / 12);
    s.t2 = std::sqrt(n * (n + 1) * (2 * n + 1) * (3 * n * n + 3 * n - 1) / 60);
    s.notes = {"asymptotic 3^(1/2) 2^(-1/2) n^(-3/2) = " + num(std::sqrt(1.5) * std::pow(n, -1.5)),
               "asymptotic 6^(1/4) c^(-1/2) n^(-5/4) = " + num(std::pow(6.0, 0.25) / std::sqrt(k.c) * std::pow(n, -1.25)),
               "asymptotic 10^(1/4) n^(-5/4) = " + num(std::pow(10.0, 0.25) * std::pow(n, -1.25)),
               "asymptotic (2/e)^(1/2) 10^(1/8) n^(-9/8) = " +
                   num(std::sqrt(2 / M_E) * std::pow(10.0, 0.125) * std::pow(n, -1.125))};
    auto rows = separation_rows(a, w, s);
    out.insert(out.end(), rows.begin(), rows.end());
  }
  return out;
}

namespace {

struct Normalised {
  bool ok = false;
  double p0 = 0, p1 = 0, pm1 = 0;  // |P(0)|, |P(1)|, |P(-1)| of P / a_d
  double M = 0, dM = 0;            // M(P / a_d)
};

Normalised normalised(const Analysis& a) {
  Normalised v;
  const Polynomial& p = a.poly();
  const mpq_class lead = abs(p.leading());
  const mpq_class p0 = abs(p.coeff(0)) / lead;
  const mpq_class p1 = abs(p.evaluate(1)) / lead;
  const mpq_class pm1 = abs(p.evaluate(-1)) / lead;
  v.ok = p0 != 0 && p1 != 0 && pm1 != 0;
  v.p0 = p0.get_d();
  v.p1 = p1.get_d();
  v.pm1 = pm1.get_d();
  v.M = a.measure().value / lead.get_d();
  v.dM = a.measure().error_bound / lead.get_d();
  return v;
}

double schinzel_rhs(double d, double k, double p0, double q) {
  const double qk = std::pow(q, 1 / k);
  const double inner = std::pow(4.0, d / k) * std::pow(p0, 2 / k) + qk * qk;
  return std::pow((qk + std::sqrt(inner)) / std::pow(2.0, d / k), k / 2);
}

bool close(double x, double y, double tol) { return std::abs(x - y) <= tol * std::max(1.0, std::abs(y)); }

// Roots all in {+-i, +-a, +-1/a} with one a > 1 (schinzel_m), or all in
// {a, 1/a} (schinzel_n).
bool equality_pattern(const Analysis& an, bool positive_only) {
  double a = 0;
  std::vector<double> real_moduli;
  for (const RootEntry& e : an.roots().roots()) {
    const auto z = e.approx();
    const double tol = 1e-9 + e.error_radius;
    if (!positive_only && std::abs(z.real()) <= tol && close(std::abs(z.imag()), 1.0, tol)) continue;
    if (e.real != Decision::Yes) return false;
    if (positive_only && !(z.real() > 0)) return false;
    real_moduli.push_back(std::abs(z.real()));
    a = std::max(a, std::abs(z.real()));
  }
  if (real_moduli.empty() || !(a > 1 + 1e-9)) return false;
  for (double r : real_moduli) {
    if (!close(r, a, 1e-9) && !close(r, 1 / a, 1e-9)) return false;
  }
  return true;
}

}  // namespace

SchinzelResult schinzel_lower(const Analysis& a) {
  SchinzelResult res;
  const Normalised v = normalised(a);
  const double d = a.degree();
  const int m = a.real_count();
  const int n = a.positive_count();
  if (a.degree() < 2) {
    res.entries = {not_applicable("schinzel_m", "requires degree >= 2"), not_applicable("schinzel_n", "requires degree >= 2")};
    if (a.monic_integer()) res.entries.push_back(not_applicable("schinzel_m_vs_garza", "requires degree >= 2"));
    return res;
  }
  const double note_tol = 1e-9;
  std::string why_m;
  if (!v.ok) why_m = "requires P(0)P(1)P(-1) != 0";
  else if (m < 1) why_m = "no real zero";
  if (why_m.empty()) {
    const double rhs = schinzel_rhs(d, m, v.p0, v.p1 * v.pm1);
    res.entries.push_back(check_leq("schinzel_m", rhs, v.M, v.dM, "m = " + std::to_string(m)));
    res.equality_m = std::abs(v.M - rhs) <= note_tol * rhs + v.dM && equality_pattern(a, false);
    if (a.monic_integer()) {
      const double garza = std::pow((1 + std::sqrt(std::pow(4.0, d / m) + 1)) / std::pow(2.0, d / m), m / 2.0);
      res.entries.push_back(check_leq("schinzel_m_vs_garza", garza, rhs));
    }
  } else {
    res.entries.push_back(not_applicable("schinzel_m", why_m));
    if (a.monic_integer()) res.entries.push_back(not_applicable("schinzel_m_vs_garza", why_m));
  }
  std::string why_n;
  if (v.p0 == 0 || v.p1 == 0) why_n = "requires P(0)P(1) != 0";
  else if (n < 1) why_n = "no positive zero";
  if (why_n.empty()) {
    const double q1 = std::pow(v.p1, 1.0 / n);
    const double rhs = std::pow((q1 + std::sqrt(std::pow(4.0, d / n) * std::pow(v.p0, 1.0 / n) + q1 * q1)) / std::pow(2.0, d / n), n);
    res.entries.push_back(check_leq("schinzel_n", rhs, v.M, v.dM, "n = " + std::to_string(n)));
    res.equality_n = std::abs(v.M - rhs) <= note_tol * rhs + v.dM && equality_pattern(a, true);
  } else {
    res.entries.push_back(not_applicable("schinzel_n", why_n));
  }
  return res;
}

std::optional<RealZeroBranches> realzero_branches(const Analysis& a) {
  const Normalised v = normalised(a);
  if (a.degree() < 2 || !v.ok) return std::nullopt;
  const double d = a.degree();
  RealZeroBranches b;
  b.coefficient_branch = (d * std::log(2.0) + std::log(v.p0) - std::log(v.p1 * v.pm1)) / -std::log(std::sinh(std::log(d) / d));
  b.measure_branch = d * std::log(v.M * v.M / v.p0) / std::log(d);
  return b;
}

std::vector<BoundEntry> realzero_upper_com(const Analysis& a) {
  const auto b = realzero_branches(a);
  if (!b) return {not_applicable("realzero_complex", "requires degree >= 2 and P(0)P(1)P(-1) != 0")};
  const Normalised v = normalised(a);
  const double d = a.degree();
  const double unc = 2 * d * v.dM / (v.M * std::log(d));
  return {check_leq("realzero_complex", a.real_count(), std::max(b->coefficient_branch, b->measure_branch), unc,
                    "branches " + num(b->coefficient_branch) + ", " + num(b->measure_branch))};
}

std::vector<BoundEntry> realzero_upper_length(const Analysis& a, std::optional<double> c1) {
  const SolvedConstants& k = solve_constants();
  const Normalised v = normalised(a);
  const double d = a.degree();
  const double m = a.real_count();
  std::vector<BoundEntry> out;
  const bool integral = a.poly().is_integer();
  if (!v.ok) {
    const std::string why = "requires P(0)P(1)P(-1) != 0";
    out.push_back(not_applicable("realzero_length", why));
    if (integral) {
      out.push_back(not_applicable("realzero_integer", why));
      out.push_back(not_applicable("realzero_integer1", why));
    }
    return out;
  }
  const double L = a.norms().length.get_d();
  const double lead = mpq_class(abs(a.poly().leading())).get_d();
  const double Lt = L / lead;
  const double logc = std::log(k.c);
  {
    const double lq = std::max(0.0, std::log(v.M * v.M / v.p0));
    const double rhs = 2 * std::sqrt(k.c) * std::sqrt(d * lq) + (k.c + 1) * lq + std::log1p(d * d) / logc +
                       std::log(Lt * Lt / (2 * v.p1 * v.p1) + Lt * Lt / (2 * v.pm1 * v.pm1)) / logc;
    const double dlq = 2 * v.dM / v.M;
    const double unc = (lq > 0 ? std::sqrt(k.c * d / lq) * dlq : kInf) + (k.c + 1) * dlq;
    out.push_back(check_leq("realzero_length", m, rhs, unc));
  }
  if (integral) {
    const double M = a.measure().value;
    const double lm = std::max(0.0, std::log(M));
    const double dlm = a.measure().error_bound / M;
    const double rhs = 2 * std::sqrt(2 * k.c * d * lm) + 2 * (k.c + 1) * lm + std::log1p(d * d) / logc + 2 * std::log(L) / logc;
    const double unc = (lm > 0 ? std::sqrt(2 * k.c * d / lm) * dlm : kInf) + 2 * (k.c + 1) * dlm;
    out.push_back(check_leq("realzero_integer", m, rhs, unc));
    if (a.measure().lower() > 1.0) {
      const double scale = std::sqrt(d * lm);
      const double c1v = c1.value_or(std::log(L) / scale);
      const double c2 = 2 * (std::sqrt(2 * k.c) + k.c + 1 + c1v / logc);
      out.push_back(report_only("realzero_integer1", m, c2 * scale,
                                "c1 = " + num(c1v) + ", c2 = " + num(c2) + "; asymptotic, threshold D0(eps) not effective"));
    } else {
      out.push_back(not_applicable("realzero_integer1", "requires M(P) > 1"));
    }
  }
  return out;
}

double vandermonde_R(std::complex<double> x, int n) {
  if (n < 2) throw std::invalid_argument("vandermonde_R: N must be at least 2");
  long double r = 1;
  const std::complex<long double> xl(x.real(), x.imag());
  std::complex<long double> pw = 1;
  for (int j = 1; j < n; ++j) {
    pw *= xl;
    r *= std::pow(std::abs(pw - 1.0L), static_cast<long double>(n - j));
  }
  return static_cast<double>(r);
}

double hadamard_R_bound(std::complex<double> x, int n) {
  const double e = static_cast<double>(n - 1) * n * (n + 1) / 6.0;
  return std::pow(std::max(1.0, std::abs(x)), e) * std::pow(static_cast<double>(n), n / 2.0);
}

std::vector<BoundEntry> lemmaK_check(const Analysis& a, int n_max) {
  std::vector<BoundEntry> out;
  std::string why;
  if (!a.monic_integer()) why = "requires a monic integer polynomial";
  else if (a.cyclotomic()) why = "vanishes at a root of unity";
  const double p1 = mpq_class(abs(a.poly().evaluate(1))).get_d();
  const double M = a.measure().value;
  for (int N = 2; N <= n_max; ++N) {
    const std::string id = tag("lemma_k", "N=" + std::to_string(N));
    if (!why.empty()) {
      out.push_back(not_applicable(id, why));
      continue;
    }
    const double rhs = lemma_k_rhs(a.degree(), M, N);
    out.push_back(check_leq(id, p1, rhs, rhs * (N + 1) / 3.0 * a.measure().error_bound / M));
  }
  return out;
}

std::vector<BoundEntry> zhang_zagier_check(const Analysis& a) {
  const Polynomial& p = a.poly();
  if (!p.is_integer()) return {not_applicable("zhang_zagier", "requires integer coefficients")};
  if (p.coeff(0) == 0 || p.evaluate(1) == 0 || divides(mahlerlab::cyclotomic(6), p)) {
    return {not_applicable("zhang_zagier", "requires P(0)P(1)P(omega6) != 0")};
  }
  const MeasureResult m2 = mahler(p.reflect_at_one(), a.bits());
  const double M = a.measure().value;
  const double lhs = std::pow(solve_constants().golden, a.degree() / 2.0);
  const double unc = a.measure().error_bound * m2.value + M * m2.error_bound;
  return {check_leq("zhang_zagier", lhs, M * m2.value, unc, "M(P(1-x)) = " + num(m2.value))};
}

std::vector<BoundEntry> around1_report(const Analysis& a, double epsilon) {
  const std::string id_k = tag("around1_count", "eps=" + num(epsilon));
  const std::string id_minor = tag("around1_minor", "eps=" + num(epsilon));
  std::string why;
  if (!a.monic_integer()) why = "requires a monic integer polynomial";
  else if (a.degree() < 2) why = "requires degree >= 2";
  else if (!(a.measure().lower() > 1.0)) why = "requires M(P) > 1";
  else if (a.irreducibility().status != Irreducibility::Irreducible) why = "requires an irreducible polynomial";
  if (!why.empty()) return {not_applicable(id_k, why), not_applicable(id_minor, why)};
  const DiskCount j1 = count_in_disk(a.roots(), {1.0, 0.0}, 1.0);
  const DiskCount j2 = count_in_disk(a.roots(), {-1.0, 0.0}, 1.0);
  const int K = std::min(j1.count, j2.count);
  const double d = a.degree();
  const double lm = std::log(a.measure().value);
  const double C = 2 / M_PI * std::log(solve_constants().golden) - epsilon;
  const std::string note = "J = " + std::to_string(j1.count) + ", J' = " + std::to_string(j2.count) +
                           ((j1.certified && j2.certified) ? "" : " (uncertified)") + "; asymptotic, threshold D0(eps) not effective";
  return {report_only(id_k, C * std::sqrt(d / (std::log(d) * lm)), K, note),
          report_only(id_minor, C * C * d / std::log(d), K * K * lm, note)};
}

std::vector<BoundEntry> outside_radius_entries(const Analysis& a, const std::vector<double>& radii) {
  std::vector<BoundEntry> out;
  for (double r : radii) {
    const std::string id = tag("outside_radius", "r=" + num(r));
    const OutsideRadius o = count_outside_radius(a.poly(), r, a.roots(), a.measure());
    if (!o.applicable) {
      out.push_back(not_applicable(id, "M(P / a_d) = 1"));
      continue;
    }
    BoundEntry e;
    e.theorem_id = id;
    e.lhs = o.count;
    e.rhs = o.bound;
    e.margin = o.bound - o.count;
    e.verdict = o.holds ? Verdict::Holds : Verdict::Violated;
    e.note = o.certified ? "strict inequality" : "strict inequality; count uncertified";
    out.push_back(std::move(e));
  }
  return out;
}

double dobrowolski_lower(int degree, double sigma) {
  if (degree < 3) return NAN;
  const double ld = std::log(static_cast<double>(degree));
  return sigma * std::pow(std::log(ld) / ld, 3);
}

VerifyResult verify_all(const Analysis& a, const VerifyOptions& opt) {
  VerifyResult res;
  res.report.polynomial_id = opt.id;
  auto add = [&](std::vector<BoundEntry> e) { res.report.append(std::move(e)); };
  add(norm_chain_check(a.poly(), a.measure()));
  add(outside_radius_entries(a));
  for (int m = 1; m <= 4; ++m) {
    add(liouville_selfreciprocal(a, m, 1));
    add(liouville_selfreciprocal(a, m, -1));
  }
  for (int m = 1; m <= 2; ++m) add(dubickas_selfreciprocal(a, m, 0.01));

  std::vector<Omega> omegas{omega_turns(0, 1, a.bits()), omega_turns(1, 2, a.bits()), omega_turns(1, 4, a.bits()),
                            omega_turns(1, 6, a.bits()), omega_turns(1, 3, a.bits())};
  Omega top = omega_angle(a.sup_norm().argmax_angle, a.bits());
  top.label = "argmax";
  omegas.push_back(top);
  for (const Omega& w : omegas) {
    add(general_separation(a, w));
    for (double rho : {0.1, 0.3, 0.5}) add(jensen_disk_entries(a, w, rho));
    for (double delta : {1.5, 2.0, kE2}) add(lower1_bounds(a, w, delta));
    add(corollary_bounds(a, w));
  }

  SchinzelResult s = schinzel_lower(a);
  add(std::move(s.entries));
  if (s.equality_m) res.certificates.push_back("schinzel_m_equality");
  if (s.equality_n) res.certificates.push_back("schinzel_n_equality");
  add(realzero_upper_com(a));
  if (auto b = realzero_branches(a); b && a.real_count() >= 1) {
    const double m = a.real_count();
    if (close(b->coefficient_branch, m, 1e-9) && close(b->measure_branch, m, 1e-9) && equality_pattern(a, false)) {
      res.certificates.push_back("realzero_complex_equality");
    }
  }
  add(realzero_upper_length(a));
  add(lemmaK_check(a));
  add(zhang_zagier_check(a));
  add(around1_report(a));
  return res;
}

VerifyResult verify_all(const Polynomial& p, const VerifyOptions& opt) {
  if (p.degree() < 1) {
    VerifyResult res;
    res.report.polynomial_id = opt.id;
    res.report.entries.push_back(not_applicable("verify_all", "constant polynomial"));
    return res;
  }
  return verify_all(Analysis(p, opt.bits), opt);
}

}  // namespace mahlerlab
