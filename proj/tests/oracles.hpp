#pragma once

// Independent numerical oracles used only by the tests.

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "mahlerlab/polynomial.hpp"

namespace oracle {

using cld = std::complex<long double>;

inline std::vector<long double> coeffs_ld(const mahlerlab::Polynomial& p) {
  std::vector<long double> a;
  for (const auto& c : p.coefficients()) a.push_back(static_cast<long double>(c.get_d()));
  return a;
}

/// Eigenvalues of the companion matrix in long double.
inline std::vector<cld> companion_roots(const mahlerlab::Polynomial& p) {
  const auto a = coeffs_ld(p);
  const int n = p.degree();
  using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
  Mat c = Mat::Zero(n, n);
  for (int i = 1; i < n; ++i) c(i, i - 1) = 1;
  for (int i = 0; i < n; ++i) c(i, n - 1) = -a[static_cast<std::size_t>(i)] / a.back();
  Eigen::EigenSolver<Mat> es(c, false);
  std::vector<cld> out;
  for (int i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

/// Number of zeros inside |z - c| < r by the argument principle: trapezoid
/// rule for P'/P on the circle, snapped to the nearest integer. Empty when the
/// integral is not within 0.05 of an integer (a zero near the contour).
inline std::optional<int> contour_count(const mahlerlab::Polynomial& p, cld c, long double r, int nodes = 4096) {
  const auto a = coeffs_ld(p);
  cld acc = 0;
  for (int k = 0; k < nodes; ++k) {
    const cld u = std::polar<long double>(1.0L, 2.0L * M_PIl * k / nodes);
    const cld z = c + r * u;
    cld v = 0, dv = 0;
    for (std::size_t j = a.size(); j-- > 0;) {
      dv = dv * z + v;
      v = v * z + a[j];
    }
    acc += dv * (r * u) / v;
  }
  acc /= static_cast<long double>(nodes);
  const long double snapped = std::round(acc.real());
  if (std::abs(acc.real() - snapped) > 0.05L || std::abs(acc.imag()) > 0.05L) return std::nullopt;
  return static_cast<int>(snapped);
}

}  // namespace oracle
