#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mahlerlab/measure.hpp"
#include "mahlerlab/polynomial.hpp"

namespace mahlerlab {

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000'000ULL;

class SearchSizeError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Monic palindromic integer polynomials of degree 2n with a_0 = 1 and free
/// coefficients a_1..a_n in [-H, H], in lexicographic order of (a_1, ..., a_n).
class SelfReciprocalStream {
 public:
  // Throws SearchSizeError when (2H+1)^n exceeds cap.
  SelfReciprocalStream(int degree, long height, std::uint64_t cap = kDefaultEnumerationCap);

  std::uint64_t size() const { return size_; }
  bool next(Polynomial& out);
  // Free coefficients of the polynomial at a given position.
  std::vector<long> free_coefficients(std::uint64_t index) const;
  Polynomial at(std::uint64_t index) const;

 private:
  int n_;
  long height_;
  std::uint64_t size_;
  std::uint64_t pos_ = 0;
};

SelfReciprocalStream enumerate_selfreciprocal(int degree, long height, std::uint64_t cap = kDefaultEnumerationCap);

/// Palindromic polynomial from a_0..a_n.
Polynomial palindrome(const std::vector<long>& half);

struct SearchRecord {
  Polynomial polynomial;
  MeasureResult measure;
  StructureFlags flags;
  // 1-based position in the sorted list.
  int rank = 0;
};

struct SearchOptions {
  int min_degree = 2;
  int max_degree = 10;  // even degrees in [min_degree, max_degree] are scanned
  long height = 1;
  double theta = 1.3;
  unsigned jobs = 1;
  Bits bits = kDefaultBits;
  std::uint64_t cap = kDefaultEnumerationCap;
  // Called with (blocks completed, total blocks) from worker threads, serialised.
  std::function<void(std::size_t, std::size_t)> progress;
};

/// Records with 1 < M(P) < theta, no cyclotomic factor, normalised so that the
/// first non-zero a_j (j >= 1) is positive whenever P(-x) achieves that, and
/// with exact duplicates removed. Sorted by measure, then coefficients.
std::vector<SearchRecord> search_min_mahler(const SearchOptions& opt);

/// P or P(-x), whichever meets the sign condition (P when neither does).
Polynomial sign_normalise(const Polynomial& p);

}  // namespace mahlerlab
