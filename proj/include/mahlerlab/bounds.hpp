#pragma once

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mahlerlab/bound_report.hpp"
#include "mahlerlab/measure.hpp"
#include "mahlerlab/structure.hpp"

namespace mahlerlab {

struct SolvedConstants {
  double theta0 = 0.0;  // real root of x^3 - x - 1
  double golden = 0.0;
  double c = 0.0;  // c log c = 1 + c
  double a = 0.0;  // a (log a)^3 = 4
  double A = 0.0;  // A^2 = 4 / (a (2 + log a))
  double b = 0.0;  // b (log b)^2 (log b - 2) = 8
  double B = 0.0;  // B^4 = 8 log(b^2) / (b (log b + 2))
  // Values printed in the literature, kept for display next to the solved ones.
  double c_printed = 3.594;
  double A_printed = 0.655;
  double B_printed = 0.984;
  // |f(root)| of each defining equation, keyed theta0, c, a, b.
  std::map<std::string, double> residuals;
};

/// Solved once with MPFR bisection and cached.
const SolvedConstants& solve_constants();

/// A point on the unit circle, kept exactly as a rational number of turns
/// when it is a root of unity.
struct Omega {
  std::string label;
  BigComplex z;
  // +1 or -1 when omega is that real number, 0 otherwise.
  int real_sign = 0;

  std::complex<double> approx() const { return {z.real().to_double(), z.imag().to_double()}; }
};

Omega omega_turns(long k, long n, Bits bits = kDefaultBits);
Omega omega_angle(double radians, Bits bits = kDefaultBits);

/// Everything the checkers share about one polynomial.
class Analysis {
 public:
  Analysis(const Polynomial& p, Bits bits = kDefaultBits);

  const Polynomial& poly() const { return *poly_; }
  const RootSet& roots() const { return roots_; }
  const MeasureResult& measure() const { return measure_; }
  const NormBundle& norms() const { return norms_; }
  const StructureFlags& flags() const { return flags_; }
  const SupNorm& sup_norm() const { return sup_; }
  int degree() const { return poly_->degree(); }
  int real_count() const { return real_.real; }
  int positive_count() const { return real_.positive; }
  const std::optional<std::pair<int, Polynomial>>& cyclotomic() const { return cyclotomic_; }
  bool monic_integer() const { return poly_->is_integer() && poly_->is_monic(); }
  // Palindromic with even degree >= 2.
  bool self_reciprocal_even() const;
  Bits bits() const { return bits_; }
  // Computed on first use.
  const IrreducibilityVerdict& irreducibility() const;

  struct PointValue {
    double modulus = 0.0;
    bool nonzero = false;
  };
  PointValue value_at(const Omega& w) const;

 private:
  std::shared_ptr<const Polynomial> poly_;
  Bits bits_;
  RootSet roots_;
  MeasureResult measure_;
  NormBundle norms_;
  StructureFlags flags_;
  SupNorm sup_;
  RealCount real_;
  std::optional<std::pair<int, Polynomial>> cyclotomic_;
  mutable std::optional<IrreducibilityVerdict> irreducibility_;
};

// Liouville-type lower bounds on |mu - omega| for omega^m = sign.
std::vector<BoundEntry> liouville_selfreciprocal(const Analysis& a, int m, int sign);

// Asymptotic bounds with unspecified thresholds; ReportOnly rows.
std::vector<BoundEntry> dubickas_selfreciprocal(const Analysis& a, int m, double epsilon);

std::vector<BoundEntry> general_separation(const Analysis& a, const Omega& w);

struct JensenDisk {
  bool applicable = false;
  double lhs = 0.0;
  double uncertainty = 0.0;
  double rhs_general = 0.0;
  std::optional<double> rhs_plus_minus_one;
};

JensenDisk jensen_disk_rhs(const Analysis& a, const Omega& w, double rho);
std::vector<BoundEntry> jensen_disk_entries(const Analysis& a, const Omega& w, double rho);

std::vector<BoundEntry> lower1_bounds(const Analysis& a, const Omega& w, double delta);
std::vector<BoundEntry> corollary_bounds(const Analysis& a, const Omega& w);

struct SchinzelResult {
  std::vector<BoundEntry> entries;
  bool equality_m = false;
  bool equality_n = false;
};

SchinzelResult schinzel_lower(const Analysis& a);

struct RealZeroBranches {
  double coefficient_branch = 0.0;
  double measure_branch = 0.0;
};

std::optional<RealZeroBranches> realzero_branches(const Analysis& a);
std::vector<BoundEntry> realzero_upper_com(const Analysis& a);
// c1 defaults to log L / sqrt(d log M), the least value meeting the premise.
std::vector<BoundEntry> realzero_upper_length(const Analysis& a, std::optional<double> c1 = std::nullopt);

double vandermonde_R(std::complex<double> x, int n);
double hadamard_R_bound(std::complex<double> x, int n);

std::vector<BoundEntry> lemmaK_check(const Analysis& a, int n_max = 20);
std::vector<BoundEntry> zhang_zagier_check(const Analysis& a);
std::vector<BoundEntry> around1_report(const Analysis& a, double epsilon = 0.01);
std::vector<BoundEntry> outside_radius_entries(const Analysis& a, const std::vector<double>& radii = {1.1, 1.5, 2.0});

/// sigma (log log d / log d)^3 for a caller-supplied constant sigma.
double dobrowolski_lower(int degree, double sigma);

struct VerifyOptions {
  Bits bits = kDefaultBits;
  std::string id;
};

struct VerifyResult {
  BoundReport report;
  // Names of equality characterisations certified for this polynomial.
  std::vector<std::string> certificates;
};

/// Every applicable checker, in a fixed order.
VerifyResult verify_all(const Polynomial& p, const VerifyOptions& opt = {});
VerifyResult verify_all(const Analysis& a, const VerifyOptions& opt = {});

}  // namespace mahlerlab
