#pragma once

#include <complex>
#include <memory>
#include <utility>
#include <vector>

#include "mahlerlab/bigfloat.hpp"
#include "mahlerlab/errors.hpp"
#include "mahlerlab/polynomial.hpp"

namespace mahlerlab {

enum class Decision { No, Yes, Unknown };

struct RootEntry {
  BigComplex value;
  // Radius of a disk around value guaranteed (up to the residual model) to
  // contain the true root; rounded upward when converted to double.
  double error_radius = 0.0;
  int multiplicity = 1;
  // |P(value)| for the input polynomial.
  double residual = 0.0;
  Decision real = Decision::Unknown;
  Decision on_unit_circle = Decision::Unknown;
  // Set when the root was recognised as an exact rational.
  bool exact = false;

  std::complex<double> approx() const { return {value.real().to_double(), value.imag().to_double()}; }
};

class RootSet {
 public:
  RootSet() = default;
  RootSet(std::shared_ptr<const Polynomial> source, std::vector<RootEntry> roots, Bits bits)
      : source_(std::move(source)), roots_(std::move(roots)), bits_(bits) {}

  const std::vector<RootEntry>& roots() const { return roots_; }
  const Polynomial& source() const { return *source_; }
  const std::shared_ptr<const Polynomial>& source_ptr() const { return source_; }
  int source_degree() const { return source_ ? source_->degree() : 0; }
  Bits precision_bits() const { return bits_; }
  // Sum of multiplicities; equals source_degree() for every valid set.
  int total_multiplicity() const;
  // True when some root has an undecided real or unit-circle classification.
  bool has_unknown() const;

 private:
  std::shared_ptr<const Polynomial> source_;
  std::vector<RootEntry> roots_;
  Bits bits_ = kDefaultBits;
};

/// All complex roots of p (degree >= 1) refined to roughly `bits` bits.
/// Multiplicities come from an exact squarefree decomposition; each
/// squarefree part is solved by Aberth iteration (double warm start, MPFR
/// polish) and given Weierstrass inclusion radii. Throws RootFindError when
/// the iteration does not converge and std::invalid_argument for constants.
RootSet find_roots(const Polynomial& p, Bits bits = kDefaultBits);

/// find_roots with precision doubling while some classification is Unknown.
RootSet find_roots_adaptive(const Polynomial& p, Bits bits = kDefaultBits, Bits max_bits = 1024);

struct DiskCount {
  int count = 0;
  bool certified = true;
  // min over roots of | |value - center| - radius |.
  double separation_margin = 0.0;
};

/// Roots (with multiplicity) in the open disk |z - center| < radius.
/// Retries once at doubled precision when an error disk straddles the
/// boundary.
DiskCount count_in_disk(const RootSet& rs, std::complex<double> center, double radius);

struct RealCount {
  int real = 0;      // m
  int positive = 0;  // n
};

/// Real and positive real zeros with multiplicity. Escalates precision up to
/// 1024 bits and throws NumericError when still undecided.
RealCount count_real(const RootSet& rs);

/// Roots with |z| > r (strict), with certification as in count_in_disk.
DiskCount count_modulus_greater(const RootSet& rs, double r);

}  // namespace mahlerlab
