#include "mahlerlab/measure.hpp"

#include <algorithm>
#include <cmath>
#include <climits>
#include <complex>
#include <stdexcept>

namespace mahlerlab {

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::round(std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0)));
}

double lemma_k_rhs(int degree, double mahler, int n) {
  return std::pow(static_cast<double>(n), static_cast<double>(degree) / (n - 1)) * std::pow(mahler, (n + 1) / 3.0);
}

namespace {

struct ProductBounds {
  BigFloat value;
  BigFloat lo;
  BigFloat hi;
  bool unresolved = false;
};

ProductBounds root_product(const Polynomial& p, const RootSet& rs) {
  const Bits bits = rs.roots().empty() ? rs.precision_bits() + 32 : rs.roots().front().value.precision();
  const BigFloat one(1.0, bits);
  BigFloat lead = abs(BigFloat(p.leading(), bits));
  ProductBounds pb{lead, lead, lead};
  for (const auto& e : rs.roots()) {
    if (e.on_unit_circle == Decision::Yes) continue;
    const BigFloat mod = e.value.abs();
    const BigFloat r(e.error_radius, bits);
    BigFloat lo = mod - r, hi = mod + r;
    if (lo < one && hi > one && e.on_unit_circle == Decision::Unknown) pb.unresolved = true;
    const BigFloat mid = mod > one ? mod : one;
    if (lo < one) lo = one;
    if (hi < one) hi = one;
    for (int k = 0; k < e.multiplicity; ++k) {
      pb.value *= mid;
      pb.lo *= lo;
      pb.hi *= hi;
    }
  }
  return pb;
}

}  // namespace

MeasureResult mahler_from_roots(const Polynomial& p, const RootSet& input) {
  if (p.is_zero()) throw std::invalid_argument("mahler: zero polynomial");
  RootSet rs = input;
  ProductBounds pb = root_product(p, rs);
  Bits bits = rs.precision_bits();
  while (pb.unresolved && bits * 2 <= 1024 && rs.source_ptr()) {
    bits *= 2;
    rs = find_roots(rs.source(), bits);
    pb = root_product(p, rs);
  }
  MeasureResult m;
  m.method = MeasureMethod::RootProduct;
  m.iterations_or_precision = static_cast<int>(rs.precision_bits());
  m.value = pb.value.to_double();
  const double spread = std::max((pb.hi - pb.value).to_double_up(), (pb.value - pb.lo).to_double_up());
  // Rounding of the product itself and of the final conversion to double.
  const double rounding = std::abs(m.value) * (std::ldexp(static_cast<double>(p.degree() + 2), -static_cast<int>(bits)) + 1.2e-16);
  m.error_bound = spread + rounding;
  m.certified = !pb.unresolved;
  return m;
}

MeasureResult mahler(const Polynomial& p, Bits bits) {
  if (p.is_zero()) throw std::invalid_argument("mahler: zero polynomial");
  if (p.degree() == 0) {
    MeasureResult m;
    m.value = mpq_class(abs(p.leading())).get_d();
    m.iterations_or_precision = static_cast<int>(bits);
    return m;
  }
  return mahler_from_roots(p, find_roots_adaptive(p, bits));
}

namespace {

// One root-squaring step on ascending coefficients, in place:
// G(y) = E(y)^2 - y O(y)^2 where P(x) = E(x^2) + x O(x^2).
void graeffe_step(std::vector<BigFloat>& c, BigFloat& tmp) {
  const std::size_t n = c.size();
  std::vector<BigFloat> g(n, BigFloat(c[0].precision()));
  for (std::size_t i = 0; i < n; ++i) {
    if (c[i].is_zero()) continue;
    for (std::size_t j = i % 2; j < n; j += 2) {
      if (c[j].is_zero()) continue;
      // Same-parity products land on (i + j) / 2; odd ones carry the minus sign.
      const std::size_t target = (i + j) / 2;
      mpfr_mul(tmp.raw(), c[i].raw(), c[j].raw(), MPFR_RNDN);
      if (i % 2 == 0) {
        mpfr_add(g[target].raw(), g[target].raw(), tmp.raw(), MPFR_RNDN);
      } else {
        mpfr_sub(g[target].raw(), g[target].raw(), tmp.raw(), MPFR_RNDN);
      }
    }
  }
  c = std::move(g);
}

// Scales c so that its largest coefficient has exponent 0; returns the
// binary exponent removed.
long normalise(std::vector<BigFloat>& c) {
  long e = LONG_MIN;
  for (const auto& x : c) {
    if (!x.is_zero()) e = std::max(e, static_cast<long>(mpfr_get_exp(x.raw())));
  }
  if (e == LONG_MIN) return 0;
  for (auto& x : c) mpfr_mul_2si(x.raw(), x.raw(), -e, MPFR_RNDN);
  return e;
}

double log_sqrt_central_binomial(int d) {
  return 0.5 * (std::lgamma(2.0 * d + 1.0) - 2.0 * std::lgamma(d + 1.0));
}

}  // namespace

MeasureResult mahler_graeffe(const Polynomial& p, int k, Bits bits) {
  if (p.is_zero()) throw std::invalid_argument("mahler_graeffe: zero polynomial");
  if (k < 0) throw std::invalid_argument("mahler_graeffe: k must be non-negative");
  MeasureResult m;
  m.method = MeasureMethod::Graeffe;
  m.iterations_or_precision = k;
  const int d = p.degree();
  if (d == 0) {
    m.value = mpq_class(abs(p.leading())).get_d();
    return m;
  }
  std::vector<BigFloat> c;
  c.reserve(p.coefficients().size());
  for (const auto& a : p.coefficients()) c.emplace_back(a, bits);
  BigFloat tmp(bits);
  // log2 of the scale of iterate s, divided by 2^s.
  double scaled_log2 = static_cast<double>(normalise(c));
  double weight = 1.0;
  for (int s = 1; s <= k; ++s) {
    graeffe_step(c, tmp);
    weight /= 2.0;
    scaled_log2 += static_cast<double>(normalise(c)) * weight;
  }
  BigFloat l2sq(bits);
  for (const auto& x : c) l2sq += x * x;
  if (!l2sq.is_finite() || l2sq.is_zero()) throw NumericError("mahler_graeffe: coefficient overflow; use smaller k or more precision");
  const double log_upper = (scaled_log2 * std::log(2.0)) + 0.5 * log(l2sq).to_double() * weight;
  const double log_lower = log_upper - log_sqrt_central_binomial(d) * weight;
  const double hi = std::exp(log_upper), lo = std::exp(log_lower);
  m.value = 0.5 * (hi + lo);
  const double rounding = hi * (k + 1) * (4.0 * d + 4.0) * std::ldexp(1.0, -static_cast<int>(bits)) + hi * 1e-15;
  m.error_bound = 0.5 * (hi - lo) + rounding;
  return m;
}

GraeffeBracket graeffe_bracket_fast(const std::vector<long>& coeffs, int k) {
  std::vector<long double> c(coeffs.begin(), coeffs.end());
  while (!c.empty() && c.back() == 0.0L) c.pop_back();
  if (c.empty()) throw std::invalid_argument("graeffe_bracket_fast: zero polynomial");
  const int d = static_cast<int>(c.size()) - 1;
  auto rescale = [&c]() {
    long double big = 0.0L;
    for (long double x : c) big = std::max(big, std::fabs(x));
    int e = 0;
    std::frexp(big, &e);
    for (long double& x : c) x = std::ldexp(x, -e);
    return e;
  };
  long double scaled_log2 = rescale();
  long double weight = 1.0L;
  std::vector<long double> g(c.size());
  for (int s = 1; s <= k; ++s) {
    std::fill(g.begin(), g.end(), 0.0L);
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (c[i] == 0.0L) continue;
      for (std::size_t j = i % 2; j < n; j += 2) {
        const std::size_t t = (i + j) / 2;
        if (i % 2 == 0) {
          g[t] += c[i] * c[j];
        } else {
          g[t] -= c[i] * c[j];
        }
      }
    }
    c.swap(g);
    weight /= 2.0L;
    scaled_log2 += rescale() * weight;
  }
  long double l2sq = 0.0L;
  for (long double x : c) l2sq += x * x;
  const long double log_upper = scaled_log2 * std::log(2.0L) + 0.5L * std::log(l2sq) * weight;
  const long double log_lower = log_upper - static_cast<long double>(log_sqrt_central_binomial(d)) * weight;
  return {std::exp(log_lower) * (1.0L - 1e-9L), std::exp(log_upper) * (1.0L + 1e-9L)};
}

namespace {

long double circle_abs2(const std::vector<long double>& a, long double t) {
  const std::complex<long double> z = std::polar(1.0L, t);
  std::complex<long double> v = 0;
  for (std::size_t j = a.size(); j-- > 0;) v = v * z + a[j];
  return std::norm(v);
}

}  // namespace

SupNorm sup_norm_circle(const Polynomial& p, double tol) {
  if (p.is_zero()) throw std::invalid_argument("sup_norm_circle: zero polynomial");
  std::vector<long double> a;
  for (const auto& c : p.coefficients()) a.push_back(static_cast<long double>(c.get_d()));
  const int d = p.degree();
  const int samples = 8 * d + 16;
  const long double two_pi = 2.0L * M_PIl;
  const long double h = two_pi / samples;
  std::vector<std::pair<long double, int>> vals;
  vals.reserve(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i) vals.emplace_back(circle_abs2(a, i * h), i);
  const std::size_t top = std::min<std::size_t>(5, vals.size());
  std::partial_sort(vals.begin(), vals.begin() + static_cast<long>(top), vals.end(),
                    [](const auto& x, const auto& y) { return x.first > y.first || (x.first == y.first && x.second < y.second); });

  long double best = vals[0].first;
  long double best_t = vals[0].second * h;
  const long double gr = (std::sqrt(5.0L) - 1.0L) / 2.0L;
  const long double angle_tol = std::max(1e-16L, static_cast<long double>(std::sqrt(tol)) * 1e-3L);
  for (std::size_t s = 0; s < top; ++s) {
    long double lo = vals[s].second * h - h, hi = vals[s].second * h + h;
    long double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    long double f1 = circle_abs2(a, x1), f2 = circle_abs2(a, x2);
    for (int it = 0; it < 200 && hi - lo > angle_tol; ++it) {
      if (f1 < f2) {
        lo = x1;
        x1 = x2;
        f1 = f2;
        x2 = lo + gr * (hi - lo);
        f2 = circle_abs2(a, x2);
      } else {
        hi = x2;
        x2 = x1;
        f2 = f1;
        x1 = hi - gr * (hi - lo);
        f1 = circle_abs2(a, x1);
      }
    }
    const long double t = 0.5L * (lo + hi);
    const long double f = circle_abs2(a, t);
    if (f > best) {
      best = f;
      best_t = t;
    }
  }
  best_t = std::fmod(best_t, two_pi);
  if (best_t < 0) best_t += two_pi;
  return {static_cast<double>(std::sqrt(best)), static_cast<double>(best_t)};
}

NormBundle full_norms(const Polynomial& p, const MeasureResult& m) {
  NormBundle n = norms(p);
  const SupNorm s = sup_norm_circle(p);
  n.supnorm = ApproxReal{s.value, s.value * 1e-12};
  n.mahler = ApproxReal{m.value, m.error_bound};
  return n;
}

std::vector<BoundEntry> norm_chain_check(const Polynomial& p, const MeasureResult& m) {
  const NormBundle n = norms(p);
  const int d = p.degree();
  const double M = m.value, dm = m.error_bound;
  const double H = n.height.get_d(), L = n.length.get_d(), L2 = n.l2();
  const double sup = sup_norm_circle(p).value;
  const double p1 = mpq_class(abs(p.evaluate(1))).get_d();
  const double sup_err = sup * 1e-12;

  std::vector<BoundEntry> out;
  // |a_j| <= M C(d, j) for every j, reported through the tightest index.
  double worst_ratio = 0.0;
  int worst_j = 0;
  for (int j = 0; j <= d; ++j) {
    const double r = mpq_class(abs(p.coeff(j))).get_d() / binomial(d, j);
    if (r > worst_ratio) {
      worst_ratio = r;
      worst_j = j;
    }
  }
  out.push_back(check_leq("norm_coeff_binomial", worst_ratio, M, dm, "max_j |a_j|/C(d,j) at j=" + std::to_string(worst_j)));
  out.push_back(check_leq("norm_mahler_le_l2", M, L2, dm));
  out.push_back(check_leq("norm_l2_le_length", L2, L));
  out.push_back(check_leq("norm_length_le_2d_mahler", L, std::ldexp(M, d), std::ldexp(dm, d)));
  out.push_back(check_leq("norm_height_le_2dm1_mahler", H, std::ldexp(M, d - 1), std::ldexp(dm, d - 1)));
  out.push_back(check_leq("norm_mahler_le_sqrt_height", M, std::sqrt(d + 1.0) * H, dm));
  out.push_back(check_leq("norm_p1_le_supnorm", p1, sup, sup_err));
  out.push_back(check_leq("norm_supnorm_le_length", sup, L, sup_err));
  out.push_back(check_leq("norm_length_le_sqrt_l2", L, std::sqrt(d + 1.0) * L2));
  out.push_back(check_leq("norm_l2_le_supnorm", L2, sup, sup_err));
  out.push_back(check_leq("norm_p1_le_2d_mahler", p1, lemma_k_rhs(d, M, 2), lemma_k_rhs(d, dm, 2)));
  return out;
}

std::vector<BoundEntry> norm_chain_check(const Polynomial& p) { return norm_chain_check(p, mahler(p)); }

OutsideRadius count_outside_radius(const Polynomial& p, double r, const RootSet& rs, const MeasureResult& m) {
  if (!(r > 1.0)) throw std::invalid_argument("count_outside_radius: r must exceed 1");
  OutsideRadius o;
  const double lead = mpq_class(abs(p.leading())).get_d();
  const double M = m.value / lead, dm = m.error_bound / lead;
  const DiskCount dc = count_modulus_greater(rs, r);
  o.count = dc.count;
  o.certified = dc.certified;
  if (M <= 1.0 + dm) {
    o.applicable = false;
    o.bound = 0.0;
    return o;
  }
  o.bound = std::log(M) / std::log(r);
  const double slack = (dm / M) / std::log(r);
  o.holds = o.count < o.bound + slack + std::abs(o.bound) * kRelativeSlack;
  return o;
}

}  // namespace mahlerlab
