#pragma once

#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mahlerlab/bounds.hpp"
#include "mahlerlab/search.hpp"
#include "mahlerlab/structure.hpp"

namespace mahlerlab {

struct CorpusEntry {
  std::string id;
  Polynomial polynomial;
  int source_line = 0;

  friend bool operator==(const CorpusEntry& a, const CorpusEntry& b) {
    return a.id == b.id && a.polynomial == b.polynomial;
  }
};

class CorpusParseError : public std::runtime_error {
 public:
  CorpusParseError(int line, int column, const std::string& message);
  int line;
  int column;
};

struct ParseOptions {
  // Coefficients listed from the leading one down to a_0.
  bool descending = false;
};

/// One polynomial per line: optional `id:` token, then integer coefficients
/// a_0 a_1 ... a_d. `#` starts a comment; blank lines are skipped. Entries
/// without a tag get their 1-based position as id.
std::vector<CorpusEntry> parse_corpus(std::istream& in, const ParseOptions& opt = {});
std::vector<CorpusEntry> parse_corpus(const std::string& text, const ParseOptions& opt = {});

/// Canonical form, `id: a_0 ... a_d` per line; parse_corpus inverts it.
std::string serialize_corpus(const std::vector<CorpusEntry>& corpus);

struct PolynomialReport {
  std::string id;
  Polynomial polynomial;
  NormBundle norms;
  MeasureResult measure;
  std::optional<MeasureResult> measure_graeffe;
  std::optional<SupNorm> sup_norm;
  StructureFlags flags;
  std::optional<RootSet> roots;
  std::optional<EthetaVerdict> etheta;
  BoundReport bounds;
  std::vector<std::string> certificates;
};

struct ReportOptions {
  Bits bits = kDefaultBits;
  double theta = 1.3;
  bool run_bounds = false;
  bool graeffe = true;
  bool keep_roots = true;
  bool classify = true;
};

/// Norms, measure, structure, roots, E_theta verdict and (optionally) the
/// verify_all rows for one entry. Numeric failures propagate.
PolynomialReport make_report(const CorpusEntry& e, const ReportOptions& opt = {});

enum class ReportFormat { Json, Csv };

std::string emit_report(const std::vector<PolynomialReport>& reports, ReportFormat format);
// One row per polynomial: id,degree,measure,error,measure_graeffe,height,
// length,l2,self_reciprocal,etheta_member,etheta_failures.
std::string emit_summary_csv(const std::vector<PolynomialReport>& reports);
std::string emit_search(const std::vector<SearchRecord>& records, ReportFormat format);

/// Decimal text with 15 significant digits; "nan", "inf", "-inf" otherwise.
std::string format_number(double x);

struct PlotSeries {
  std::string id;
  RootSet roots;
};

struct PlotOptions {
  bool show_unit_circle = true;
  int width = 640;
  int height = 640;
};

/// Scatter plot of the roots of every series over the complex plane.
std::string emit_zero_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt = {});

}  // namespace mahlerlab
