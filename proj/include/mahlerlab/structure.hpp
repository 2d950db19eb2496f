#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mahlerlab/measure.hpp"
#include "mahlerlab/polynomial.hpp"

namespace mahlerlab {

/// Exact Phi_n, memoized. Throws std::invalid_argument for n < 1.
const Polynomial& cyclotomic(int n);

int euler_phi(int n);

/// Least n with Phi_n | P, scanning every n with phi(n) <= deg P. Candidate
/// orders are read off root arguments and then confirmed by exact division.
std::optional<std::pair<int, Polynomial>> cyclotomic_factor(const Polynomial& p);
// Same, reusing roots already computed for p.
std::optional<std::pair<int, Polynomial>> cyclotomic_factor(const Polynomial& p, const RootSet& rs);

enum class Irreducibility { Irreducible, Reducible, Unknown };

std::string_view to_string(Irreducibility s);

struct IrreducibilityVerdict {
  Irreducibility status = Irreducibility::Unknown;
  std::string witness;
  // Exact primitive factor for Reducible verdicts.
  std::optional<Polynomial> factor;
  // Prime whose reduction is irreducible, when that was the witness.
  std::optional<unsigned long> prime;
};

inline constexpr int kDefaultPrimeBudget = 10;
inline constexpr int kDefaultFactorDegreeCap = 64;

/// Probe in three stages: irreducible reduction modulo small primes,
/// rational roots and cyclotomic factors, then Hensel lifting with factor
/// recombination for degree <= degree_cap. Requires an integer polynomial.
IrreducibilityVerdict irreducibility_probe(const Polynomial& p, int prime_budget = kDefaultPrimeBudget,
                                           int degree_cap = kDefaultFactorDegreeCap);

enum class Audit { Pass, Fail, NotApplicable };

std::string_view to_string(Audit a);

struct EthetaOptions {
  // Radii r > 1 for the annulus count property.
  std::vector<double> annulus_radii{1.1, 1.5, 2.0};
  Bits bits = kDefaultBits;
  int prime_budget = kDefaultPrimeBudget;
  int degree_cap = kDefaultFactorDegreeCap;
};

struct EthetaVerdict {
  bool member = false;
  // Membership that rests on an undecided irreducibility probe.
  bool conditional = false;
  std::vector<std::string> failures;
  double theta = 0.0;
  MeasureResult measure;
  IrreducibilityVerdict irreducibility;
  // Keys: simple_zeros, symmetry, annulus_theta, nonreal_annulus,
  // annulus_count, no_root_of_unity, no_imaginary_root.
  std::map<std::string, Audit> property_audit;
};

inline constexpr double kTheta0 = 1.32471795724474602596;

/// Membership test for E_theta with the zero-set property audit for members
/// (and conditional members). Throws std::invalid_argument unless
/// 1 < theta <= theta_0.
EthetaVerdict classify_E_theta(const Polynomial& p, double theta, const EthetaOptions& opt = {});

}  // namespace mahlerlab
