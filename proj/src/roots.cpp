#include "mahlerlab/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mahlerlab {

namespace {

using cd = std::complex<double>;

constexpr int kSweepCap = 200;
constexpr int kWarmSweepCap = 500;
constexpr Bits kGuardBits = 32;

double up(double x) { return std::nextafter(x * (1.0 + 1e-12), INFINITY); }

// P / P' at z in double precision; evaluates the reversed polynomial outside
// the unit disk so that large |z| does not overflow.
cd newton_ratio(const std::vector<double>& a, cd z) {
  const std::size_t n = a.size() - 1;
  if (std::abs(z) <= 1.0) {
    cd p = 0, dp = 0;
    for (std::size_t j = a.size(); j-- > 0;) {
      dp = dp * z + p;
      p = p * z + a[j];
    }
    return p / dp;
  }
  const cd w = 1.0 / z;
  cd r = 0, dr = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    dr = dr * w + r;
    r = r * w + a[j];
  }
  return z * r / (static_cast<double>(n) * r - w * dr);
}

std::vector<cd> warm_start(const Polynomial& s) {
  const int n = s.degree();
  mpq_class big = 0;
  for (const auto& c : s.coefficients()) big = std::max(big, mpq_class(abs(c)));
  std::vector<double> a;
  a.reserve(s.coefficients().size());
  for (const auto& c : s.coefficients()) a.push_back(mpq_class(c / big).get_d());

  double rho = 1.0;
  const double a0 = std::abs(a.front()), an = std::abs(a.back());
  if (a0 > 0 && an > 0) rho = std::pow(a0 / an, 1.0 / n);
  if (!std::isfinite(rho) || rho == 0.0) rho = 1.0;

  std::vector<cd> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) z[static_cast<std::size_t>(k)] = std::polar(rho, 2.0 * M_PI * k / n + 0.4);
  if (n == 1) {
    z[0] = -a[0] / a[1];
    return z;
  }
  for (int sweep = 0; sweep < kWarmSweepCap; ++sweep) {
    double worst = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i) {
      cd ratio = newton_ratio(a, z[i]);
      if (!std::isfinite(ratio.real()) || !std::isfinite(ratio.imag())) continue;
      cd sum = 0;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) sum += 1.0 / (z[i] - z[j]);
      }
      const cd w = ratio / (1.0 - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[i] -= w;
      worst = std::max(worst, std::abs(w) / std::max(1.0, std::abs(z[i])));
    }
    if (worst < 1e-14) break;
  }
  return z;
}

struct Horner {
  BigComplex p;
  BigComplex dp;
  BigFloat noise;  // rounding bound for p
};

Horner horner(const std::vector<BigFloat>& a, const BigComplex& z) {
  const Bits bits = z.precision();
  Horner h{BigComplex(bits), BigComplex(bits), BigFloat(bits)};
  const BigFloat az = z.abs();
  for (std::size_t j = a.size(); j-- > 0;) {
    h.dp = h.dp * z + h.p;
    h.p = h.p * z;
    h.p.real() += a[j];
    h.noise = h.noise * az + abs(a[j]);
  }
  h.noise *= ulp_scale(bits) * (2.0 * static_cast<double>(a.size()) + 2.0);
  return h;
}

struct PieceRoot {
  BigComplex z;
  double radius = 0.0;
  bool exact = false;
  Decision real = Decision::Unknown;
  Decision unit = Decision::Unknown;
};

double dist_d(const BigComplex& a, const BigComplex& b) { return (a - b).abs().to_double(); }

// Aberth refinement of a monic squarefree rational polynomial at working
// precision wp, starting from double approximations.
std::vector<BigComplex> polish(const Polynomial& s, Bits wp, Bits target_bits) {
  const int n = s.degree();
  std::vector<BigFloat> a;
  a.reserve(s.coefficients().size());
  for (const auto& c : s.coefficients()) a.emplace_back(c, wp);

  std::vector<BigComplex> z;
  z.reserve(static_cast<std::size_t>(n));
  for (const cd& w : warm_start(s)) z.emplace_back(w.real(), w.imag(), wp);
  if (n == 1) {
    z[0] = BigComplex(BigFloat(mpq_class(-s.coeff(0)), wp), BigFloat(wp));
    return z;
  }

  const BigFloat tight = ulp_scale(wp - 6);
  std::vector<bool> done(z.size(), false);
  std::vector<double> last_step(z.size(), INFINITY);
  for (int sweep = 0; sweep < kSweepCap; ++sweep) {
    bool active = false;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (done[i]) continue;
      Horner h = horner(a, z[i]);
      if (h.p.abs() <= h.noise * 2.0) {
        done[i] = true;
        last_step[i] = 0.0;
        continue;
      }
      active = true;
      if (h.dp.real().is_zero() && h.dp.imag().is_zero()) {
        z[i] = z[i] + BigComplex(1e-10, 1e-10, wp);
        continue;
      }
      const BigComplex ratio = h.p / h.dp;
      BigComplex sum(wp);
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != i) sum += inverse(z[i] - z[j]);
      }
      BigComplex denom = BigComplex(1.0, 0.0, wp) - ratio * sum;
      const BigComplex w = denom.real().is_zero() && denom.imag().is_zero() ? ratio : ratio / denom;
      z[i] -= w;
      const BigFloat step = w.abs();
      BigFloat scale = z[i].abs();
      if (scale < 1.0) scale = BigFloat(1.0, wp);
      last_step[i] = (step / scale).to_double();
      if (step <= tight * scale) done[i] = true;
    }
    if (!active) break;
  }
  const double accept = std::ldexp(1.0, -static_cast<int>(target_bits / 2));
  bool ok = true;
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (!done[i] && !(last_step[i] < accept)) ok = false;
  }
  if (!ok) {
    std::vector<double> re, im, res;
    for (const auto& v : z) {
      re.push_back(v.real().to_double());
      im.push_back(v.imag().to_double());
      res.push_back(horner(a, v).p.abs().to_double());
    }
    throw RootFindError("root refinement did not converge within the sweep cap", re, im, res);
  }
  return z;
}

// Weierstrass inclusion radii for monic squarefree s; overlapping disks are
// merged so that each radius covers its whole cluster.
std::vector<double> inclusion_radii(const Polynomial& s, const std::vector<BigComplex>& z, Bits wp) {
  const std::size_t n = z.size();
  std::vector<double> r(n);
  for (std::size_t i = 0; i < n; ++i) {
    ComplexEval e = evaluate(s, z[i]);
    BigFloat prod(1.0, wp);
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) prod *= (z[i] - z[j]).abs();
    }
    if (prod.is_zero()) {
      r[i] = INFINITY;
      continue;
    }
    BigFloat rad = (e.value.abs() + e.error) * static_cast<double>(n) / prod;
    r[i] = up(rad.to_double_up());
  }
  if (n == 1) return r;

  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<std::vector<double>> d(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      d[i][j] = d[j][i] = dist_d(z[i], z[j]);
      if (d[i][j] * (1.0 - 1e-12) <= r[i] + r[j]) parent[find(i)] = find(j);
    }
  }
  std::vector<double> merged = r;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i && find(i) == find(j)) merged[i] = std::max(merged[i], up(d[i][j] + r[j]));
    }
  }
  return merged;
}

mpq_class rational_of(const BigFloat& x) { return to_rational(x); }

int exact_sign(const Polynomial& s, const mpq_class& x) { return sgn(s.evaluate(x)); }

// Replaces numerically found roots that are exact rationals.
void detect_rationals(const Polynomial& s, std::vector<PieceRoot>& roots, Bits wp) {
  const mpz_class lead = s.primitive_part().leading().get_num();
  for (auto& pr : roots) {
    const double im = std::abs(pr.z.imag().to_double());
    const double re = std::abs(pr.z.real().to_double());
    if (!(im <= std::max(pr.radius, 1e-9 * std::max(1.0, re)))) continue;
    BigFloat scaled = pr.z.real() * BigFloat(lead, wp);
    mpz_class t;
    mpfr_get_z(t.get_mpz_t(), scaled.raw(), MPFR_RNDN);
    mpq_class q(t, lead);
    q.canonicalize();
    if (s.evaluate(q) != 0) continue;
    BigFloat v(q, wp);
    pr.exact = true;
    pr.radius = v.exact_conversion() ? 0.0 : up(std::abs(q.get_d()) * std::ldexp(1.0, 1 - static_cast<int>(wp)));
    pr.z = BigComplex(std::move(v), BigFloat(wp));
    pr.real = Decision::Yes;
    const mpq_class aq = abs(q);
    pr.unit = aq == 1 ? Decision::Yes : Decision::No;
  }
}

// Averages conjugate pairs and snaps real candidates to the axis.
void symmetrize(std::vector<PieceRoot>& roots) {
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || roots[i].exact) continue;
    if (roots[i].z.imag().sign() <= 0) continue;
    const BigComplex target = roots[i].z.conj();
    std::size_t best = roots.size();
    double best_d = INFINITY;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i || used[j] || roots[j].exact || roots[j].z.imag().sign() >= 0) continue;
      const double dj = dist_d(roots[j].z, target);
      if (dj < best_d) {
        best_d = dj;
        best = j;
      }
    }
    if (best == roots.size() || !(best_d <= roots[i].radius + roots[best].radius)) continue;
    BigComplex mean = roots[i].z + roots[best].z.conj();
    mean.real() /= 2.0;
    mean.imag() /= 2.0;
    const double rad = up(std::max(roots[i].radius, roots[best].radius) + best_d / 2.0);
    roots[i].z = mean;
    roots[best].z = mean.conj();
    roots[i].radius = roots[best].radius = rad;
    used[i] = used[best] = true;
  }
}

void classify(const Polynomial& s, std::vector<PieceRoot>& roots, bool unit_possible, Bits wp) {
  const std::size_t n = roots.size();
  for (std::size_t i = 0; i < n; ++i) {
    PieceRoot& pr = roots[i];
    if (pr.exact) continue;
    const BigFloat im = abs(pr.z.imag());
    const double r = pr.radius;

    // Real axis.
    if (!std::isfinite(r)) {
      pr.real = Decision::Unknown;
    } else if (im > BigFloat(r, wp)) {
      pr.real = Decision::No;
    } else {
      const double rp = up(r + im.to_double_up());
      const BigComplex snapped(pr.z.real(), BigFloat(wp));
      bool isolated = true;
      for (std::size_t j = 0; j < n && isolated; ++j) {
        if (j != i && !(dist_d(roots[j].z, snapped) * (1.0 - 1e-12) > rp + roots[j].radius)) isolated = false;
      }
      pr.real = Decision::Unknown;
      if (isolated) {
        const mpq_class lo = rational_of(pr.z.real() - BigFloat(rp, wp));
        const mpq_class hi = rational_of(pr.z.real() + BigFloat(rp, wp));
        if (exact_sign(s, lo) * exact_sign(s, hi) < 0) {
          pr.real = Decision::Yes;
          pr.z.imag() = BigFloat(wp);
          pr.radius = rp;
        }
      }
    }

    // Unit circle.
    if (!unit_possible) {
      pr.unit = Decision::No;
      continue;
    }
    if (!std::isfinite(pr.radius)) {
      pr.unit = Decision::Unknown;
      continue;
    }
    const BigFloat gap = abs(pr.z.abs() - BigFloat(1.0, wp));
    const double rr = pr.radius;
    if (gap > BigFloat(rr, wp)) {
      pr.unit = Decision::No;
      continue;
    }
    pr.unit = Decision::Unknown;
    if (rr >= 0.25) continue;
    // An off-circle root mu would be accompanied by 1/conj(mu) within this
    // distance of the centre.
    const double partner = up(rr + 4.0 * rr * (1.0 + rr) / (1.0 - 2.0 * rr));
    bool isolated = true;
    for (std::size_t j = 0; j < n && isolated; ++j) {
      if (j != i && !(dist_d(roots[j].z, pr.z) * (1.0 - 1e-12) > partner + roots[j].radius)) isolated = false;
    }
    if (isolated) pr.unit = Decision::Yes;
  }
}

std::vector<PieceRoot> solve_piece(const Polynomial& s, bool unit_possible, Bits wp, Bits target) {
  std::vector<BigComplex> z = polish(s, wp, target);
  std::vector<double> r = inclusion_radii(s, z, wp);
  std::vector<PieceRoot> out(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) {
    out[i].z = std::move(z[i]);
    out[i].radius = r[i];
  }
  detect_rationals(s, out, wp);
  symmetrize(out);
  classify(s, out, unit_possible, wp);
  return out;
}

// Splits squarefree monic s into (part whose roots are closed under
// z -> 1/conj z, remainder). Unit-circle roots can only lie in the first.
std::pair<Polynomial, Polynomial> split_reciprocal(const Polynomial& s) {
  const Polynomial one = Polynomial::constant(1);
  const Polynomial rev = reciprocal(s).monic();
  if (rev == s) return {s, one};
  if (coprime(s, rev)) return {one, s};
  Polynomial g = gcd(s, rev);
  return {g, divmod(s, g).quotient};
}

struct DistanceBound {
  BigFloat lo;
  BigFloat hi;
};

// Interval for |value - center| accounting for the root radius and for
// rounding in the distance itself.
DistanceBound distance_bounds(const RootEntry& e, std::complex<double> c) {
  const Bits bits = e.value.precision();
  BigFloat dx(bits), dy(bits), d(bits);
  const int t1 = mpfr_sub_d(dx.raw(), e.value.real().raw(), c.real(), MPFR_RNDN);
  const int t2 = mpfr_sub_d(dy.raw(), e.value.imag().raw(), c.imag(), MPFR_RNDN);
  const int t3 = mpfr_hypot(d.raw(), dx.raw(), dy.raw(), MPFR_RNDN);
  BigFloat slack(e.error_radius, bits);
  if (t1 != 0 || t2 != 0 || t3 != 0) slack += d * ulp_scale(bits - 3);
  return {d - slack, d + slack};
}

}  // namespace

int RootSet::total_multiplicity() const {
  int m = 0;
  for (const auto& r : roots_) m += r.multiplicity;
  return m;
}

bool RootSet::has_unknown() const {
  return std::any_of(roots_.begin(), roots_.end(), [](const RootEntry& r) {
    return r.real == Decision::Unknown || r.on_unit_circle == Decision::Unknown;
  });
}

RootSet find_roots(const Polynomial& p, Bits bits) {
  if (p.degree() < 1) throw std::invalid_argument("find_roots: polynomial must have degree >= 1");
  if (bits < 53) bits = 53;
  const Bits wp = bits + kGuardBits;
  auto source = std::make_shared<const Polynomial>(p);

  std::vector<RootEntry> entries;
  int zeros = 0;
  while (p.coeff(zeros) == 0) ++zeros;
  if (zeros > 0) {
    RootEntry e;
    e.value = BigComplex(wp);
    e.multiplicity = zeros;
    e.real = Decision::Yes;
    e.on_unit_circle = Decision::No;
    e.exact = true;
    entries.push_back(std::move(e));
  }

  std::vector<mpq_class> shifted(p.coefficients().begin() + zeros, p.coefficients().end());
  const Polynomial core(std::move(shifted));
  if (core.degree() >= 1) {
    for (const auto& [factor, mult] : squarefree_decomposition(core)) {
      const auto [g, h] = split_reciprocal(factor);
      for (const auto& [piece, unit_possible] : {std::pair{g, true}, std::pair{h, false}}) {
        if (piece.degree() < 1) continue;
        for (auto& pr : solve_piece(piece, unit_possible, wp, bits)) {
          RootEntry e;
          e.residual = evaluate(p, pr.z).value.abs().to_double();
          e.value = std::move(pr.z);
          e.error_radius = pr.radius;
          e.multiplicity = mult;
          e.real = pr.real;
          e.on_unit_circle = pr.unit;
          e.exact = pr.exact && pr.radius == 0.0;
          entries.push_back(std::move(e));
        }
      }
    }
  }

  std::stable_sort(entries.begin(), entries.end(), [](const RootEntry& a, const RootEntry& b) {
    const double ma = std::abs(a.approx()), mb = std::abs(b.approx());
    if (ma != mb) return ma > mb;
    return a.value.imag().to_double() > b.value.imag().to_double();
  });
  return RootSet(std::move(source), std::move(entries), bits);
}

RootSet find_roots_adaptive(const Polynomial& p, Bits bits, Bits max_bits) {
  RootSet rs = find_roots(p, bits);
  while (rs.has_unknown() && bits * 2 <= max_bits) {
    bits *= 2;
    rs = find_roots(p, bits);
  }
  return rs;
}

namespace {

DiskCount disk_count_once(const RootSet& rs, std::complex<double> center, double radius) {
  DiskCount dc;
  dc.separation_margin = INFINITY;
  for (const auto& e : rs.roots()) {
    const Bits bits = e.value.precision();
    const DistanceBound b = distance_bounds(e, center);
    const BigFloat rad(radius, bits);
    const double sep = abs((b.lo + b.hi) / 2.0 - rad).to_double();
    dc.separation_margin = std::min(dc.separation_margin, sep);
    if (b.hi < rad) {
      dc.count += e.multiplicity;
    } else if (!(b.lo >= rad)) {
      dc.certified = false;
      // Best guess from the centre.
      if ((b.lo + b.hi) / 2.0 < rad) dc.count += e.multiplicity;
    }
  }
  if (rs.roots().empty()) dc.separation_margin = 0.0;
  return dc;
}

DiskCount modulus_count_once(const RootSet& rs, double r) {
  DiskCount dc;
  dc.separation_margin = INFINITY;
  for (const auto& e : rs.roots()) {
    const Bits bits = e.value.precision();
    const DistanceBound b = distance_bounds(e, {0.0, 0.0});
    const BigFloat rad(r, bits);
    dc.separation_margin = std::min(dc.separation_margin, abs((b.lo + b.hi) / 2.0 - rad).to_double());
    if (b.lo > rad) {
      dc.count += e.multiplicity;
    } else if (!(b.hi <= rad)) {
      dc.certified = false;
      if ((b.lo + b.hi) / 2.0 > rad) dc.count += e.multiplicity;
    }
  }
  if (rs.roots().empty()) dc.separation_margin = 0.0;
  return dc;
}

}  // namespace

DiskCount count_in_disk(const RootSet& rs, std::complex<double> center, double radius) {
  DiskCount dc = disk_count_once(rs, center, radius);
  if (!dc.certified && rs.source_ptr()) {
    dc = disk_count_once(find_roots(rs.source(), rs.precision_bits() * 2), center, radius);
  }
  return dc;
}

DiskCount count_modulus_greater(const RootSet& rs, double r) {
  DiskCount dc = modulus_count_once(rs, r);
  if (!dc.certified && rs.source_ptr()) dc = modulus_count_once(find_roots(rs.source(), rs.precision_bits() * 2), r);
  return dc;
}

RealCount count_real(const RootSet& input) {
  RootSet rs = input;
  auto undecided = [](const RootSet& s) {
    for (const auto& e : s.roots()) {
      if (e.real == Decision::Unknown) return true;
      if (e.real == Decision::Yes && !e.exact) {
        const BigFloat rad(e.error_radius, e.value.precision());
        if (abs(e.value.real()) <= rad) return true;
      }
    }
    return false;
  };
  Bits bits = rs.precision_bits();
  while (undecided(rs) && rs.source_ptr() && bits * 2 <= 1024) {
    bits *= 2;
    rs = find_roots(rs.source(), bits);
  }
  if (undecided(rs)) throw NumericError("count_real: real-axis classification undecided; increase precision");
  RealCount rc;
  for (const auto& e : rs.roots()) {
    if (e.real != Decision::Yes) continue;
    rc.real += e.multiplicity;
    if (e.value.real().sign() > 0) rc.positive += e.multiplicity;
  }
  return rc;
}

}  // namespace mahlerlab
