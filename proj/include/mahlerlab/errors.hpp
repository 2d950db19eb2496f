#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace mahlerlab {

// Raised when a numerical procedure cannot deliver a result at the requested
// precision (non-convergence, undecidable classification, overflow).
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RootFindError : public NumericError {
 public:
  RootFindError(const std::string& what, std::vector<double> best_re, std::vector<double> best_im,
                std::vector<double> residuals)
      : NumericError(what),
        best_re(std::move(best_re)),
        best_im(std::move(best_im)),
        residuals(std::move(residuals)) {}

  std::vector<double> best_re;
  std::vector<double> best_im;
  std::vector<double> residuals;
};

}  // namespace mahlerlab
