#include "mahlerlab/bound_report.hpp"

#include <algorithm>
#include <cmath>

namespace mahlerlab {

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "Holds";
    case Verdict::Violated:
      return "Violated";
    case Verdict::NotApplicable:
      return "NotApplicable";
    case Verdict::ReportOnly:
      return "ReportOnly";
  }
  return "NotApplicable";
}

int BoundReport::count(Verdict v) const {
  return static_cast<int>(std::count_if(entries.begin(), entries.end(), [v](const BoundEntry& e) { return e.verdict == v; }));
}

void BoundReport::append(std::vector<BoundEntry> more) {
  entries.insert(entries.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

BoundEntry check_leq(std::string id, double lhs, double rhs, double uncertainty, std::string note) {
  BoundEntry e;
  e.theorem_id = std::move(id);
  e.applicable = true;
  e.lhs = lhs;
  e.rhs = rhs;
  e.margin = rhs - lhs;
  e.note = std::move(note);
  if (std::isnan(lhs) || std::isnan(rhs)) {
    e.verdict = Verdict::NotApplicable;
    e.applicable = false;
    if (e.note.empty()) e.note = "not computable";
    return e;
  }
  if (rhs == INFINITY || lhs == -INFINITY) {
    e.verdict = Verdict::Holds;
    return e;
  }
  const double allowed = rhs + std::abs(rhs) * kRelativeSlack + kAbsoluteSlack + std::abs(uncertainty);
  e.verdict = lhs <= allowed ? Verdict::Holds : Verdict::Violated;
  return e;
}

BoundEntry not_applicable(std::string id, std::string note) {
  BoundEntry e;
  e.theorem_id = std::move(id);
  e.applicable = false;
  e.lhs = e.rhs = e.margin = NAN;
  e.verdict = Verdict::NotApplicable;
  e.note = std::move(note);
  return e;
}

BoundEntry report_only(std::string id, double lhs, double rhs, std::string note) {
  BoundEntry e;
  e.theorem_id = std::move(id);
  e.applicable = true;
  e.lhs = lhs;
  e.rhs = rhs;
  e.margin = rhs - lhs;
  e.verdict = Verdict::ReportOnly;
  e.note = std::move(note);
  return e;
}

}  // namespace mahlerlab
