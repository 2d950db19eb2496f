#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mahlerlab {

enum class Verdict { Holds, Violated, NotApplicable, ReportOnly };

std::string_view to_string(Verdict v);

/// One checked inequality, always normalised to the form lhs <= rhs with
/// margin = rhs - lhs.
struct BoundEntry {
  std::string theorem_id;
  bool applicable = true;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::NotApplicable;
  std::string note;
};

struct BoundReport {
  std::string polynomial_id;
  std::vector<BoundEntry> entries;

  int count(Verdict v) const;
  void append(std::vector<BoundEntry> more);
};

// Relative and absolute slack used by every verdict; the quantities compared
// are floating-point evaluations of exact expressions.
inline constexpr double kRelativeSlack = 1e-9;
inline constexpr double kAbsoluteSlack = 1e-12;

/// Verdict for lhs <= rhs; `uncertainty` is an additional absolute error
/// budget (for instance the Mahler measure error bound) granted to the check.
BoundEntry check_leq(std::string id, double lhs, double rhs, double uncertainty = 0.0, std::string note = {});
BoundEntry not_applicable(std::string id, std::string note);
BoundEntry report_only(std::string id, double lhs, double rhs, std::string note = {});

}  // namespace mahlerlab
