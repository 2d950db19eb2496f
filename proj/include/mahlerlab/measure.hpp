#pragma once

#include <vector>

#include "mahlerlab/bound_report.hpp"
#include "mahlerlab/polynomial.hpp"
#include "mahlerlab/roots.hpp"

namespace mahlerlab {

enum class MeasureMethod { RootProduct, Graeffe };

struct MeasureResult {
  double value = 0.0;
  double error_bound = 0.0;
  MeasureMethod method = MeasureMethod::RootProduct;
  // Precision in bits for RootProduct, number of squaring steps for Graeffe.
  int iterations_or_precision = 0;
  // False when a root near |x| = 1 could not be placed even after escalation.
  bool certified = true;

  double lower() const { return value - error_bound; }
  double upper() const { return value + error_bound; }
};

/// |a_d| * prod max(1, |mu|) over the roots of rs. Roots certified on the
/// unit circle contribute exactly 1; undecided roots trigger recomputation at
/// doubled precision (up to 1024 bits) and otherwise widen the error bound.
MeasureResult mahler_from_roots(const Polynomial& p, const RootSet& rs);

/// Root-product measure with an adaptively computed root set.
MeasureResult mahler(const Polynomial& p, Bits bits = kDefaultBits);

/// Root-squaring estimate. After k steps the Euclidean norm of the iterate
/// brackets M(P)^(2^k) within a factor sqrt(C(2d, d)); the result is the
/// midpoint of the bracket after taking 2^k-th roots.
MeasureResult mahler_graeffe(const Polynomial& p, int k = 20, Bits bits = kDefaultBits);

struct GraeffeBracket {
  long double lower = 0.0L;
  long double upper = 0.0L;
};

/// Long double variant for pre-filtering integer polynomials (ascending
/// coefficients). Slightly widened against rounding.
GraeffeBracket graeffe_bracket_fast(const std::vector<long>& coeffs, int k = 6);

struct SupNorm {
  double value = 0.0;
  double argmax_angle = 0.0;
};

/// max |P(e^{it})| by dense sampling at 8d+16 angles and golden-section
/// refinement around the five best samples.
SupNorm sup_norm_circle(const Polynomial& p, double tol = 1e-12);

/// Norms plus sup-norm and Mahler measure filled in.
NormBundle full_norms(const Polynomial& p, const MeasureResult& m);

/// The classical chain relating coefficients, norms and the measure.
std::vector<BoundEntry> norm_chain_check(const Polynomial& p, const MeasureResult& m);
std::vector<BoundEntry> norm_chain_check(const Polynomial& p);

struct OutsideRadius {
  bool applicable = true;
  int count = 0;
  double bound = 0.0;  // log M / log r
  bool holds = false;
  bool certified = true;
};

/// Roots with |x| > r compared with log M(P) / log r. Non-monic inputs are
/// normalised to P / a_d. Not applicable when M(P / a_d) = 1 (the strict
/// inequality degenerates to 0 < 0). Throws std::invalid_argument for r <= 1.
OutsideRadius count_outside_radius(const Polynomial& p, double r, const RootSet& rs, const MeasureResult& m);

/// N^{d/(N-1)} M^{(N+1)/3}; at N = 2 this is the classical 2^d M.
double lemma_k_rhs(int degree, double mahler, int n);

double binomial(int n, int k);

}  // namespace mahlerlab
