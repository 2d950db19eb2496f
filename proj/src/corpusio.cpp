#include "mahlerlab/corpusio.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

namespace mahlerlab {

using nlohmann::ordered_json;

CorpusParseError::CorpusParseError(int line, int column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line(line),
      column(column) {}

namespace {

bool is_integer_token(const std::string& t) {
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  return std::all_of(t.begin() + static_cast<long>(i), t.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

std::vector<CorpusEntry> parse_corpus(std::istream& in, const ParseOptions& opt) {
  std::vector<CorpusEntry> out;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = raw.substr(0, raw.find('#'));
    std::vector<std::pair<std::string, int>> tokens;
    for (std::size_t i = 0; i < line.size();) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      const std::size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      tokens.emplace_back(line.substr(start, i - start), static_cast<int>(start) + 1);
    }
    if (tokens.empty()) continue;

    CorpusEntry e;
    e.source_line = lineno;
    std::size_t first = 0;
    if (tokens[0].first.back() == ':') {
      e.id = tokens[0].first.substr(0, tokens[0].first.size() - 1);
      if (e.id.empty() || e.id.find(':') != std::string::npos) {
        throw CorpusParseError(lineno, tokens[0].second, "malformed id tag '" + tokens[0].first + "'");
      }
      first = 1;
    } else {
      e.id = std::to_string(out.size() + 1);
    }
    if (first == tokens.size()) throw CorpusParseError(lineno, tokens[0].second, "no coefficients after id");
    std::vector<mpq_class> coeffs;
    for (std::size_t k = first; k < tokens.size(); ++k) {
      const auto& [tok, col] = tokens[k];
      if (!is_integer_token(tok)) throw CorpusParseError(lineno, col, "expected an integer coefficient, got '" + tok + "'");
      mpz_class z;
      z.set_str(tok[0] == '+' ? tok.substr(1) : tok, 10);
      coeffs.emplace_back(z);
    }
    if (opt.descending) std::reverse(coeffs.begin(), coeffs.end());
    e.polynomial = Polynomial(std::move(coeffs));
    if (e.polynomial.is_zero()) throw CorpusParseError(lineno, tokens[first].second, "zero polynomial");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<CorpusEntry> parse_corpus(const std::string& text, const ParseOptions& opt) {
  std::istringstream in(text);
  return parse_corpus(in, opt);
}

std::string serialize_corpus(const std::vector<CorpusEntry>& corpus) {
  std::string out;
  for (const auto& e : corpus) {
    out += e.id + ":";
    for (const auto& c : e.polynomial.coefficients()) out += " " + c.get_str();
    out += "\n";
  }
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

namespace {

// Non-finite values become null.
ordered_json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x;
}

// Pretty printer that writes floats with format_number; the library printer
// may emit 17 digits.
void dump(const ordered_json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  if (j.is_number_float()) {
    out += format_number(j.get<double>());
  } else if (j.is_object()) {
    if (j.empty()) {
      out += "{}";
      return;
    }
    out += "{\n";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      out += (first ? "" : ",\n") + pad + ordered_json(it.key()).dump() + ": ";
      dump(it.value(), indent + 2, out);
      first = false;
    }
    out += "\n" + close + "}";
  } else if (j.is_array()) {
    if (j.empty()) {
      out += "[]";
      return;
    }
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      out += (i ? ",\n" : "") + pad;
      dump(j[i], indent + 2, out);
    }
    out += "\n" + close + "]";
  } else {
    out += j.dump();
  }
}

std::string dump(const ordered_json& j) {
  std::string out;
  dump(j, 0, out);
  return out + "\n";
}

ordered_json coefficient_json(const mpq_class& c) {
  if (c.get_den() == 1 && c.get_num().fits_slong_p()) return c.get_num().get_si();
  return c.get_str();
}

ordered_json coefficients_json(const Polynomial& p) {
  ordered_json a = ordered_json::array();
  for (const auto& c : p.coefficients()) a.push_back(coefficient_json(c));
  return a;
}

const char* method_name(MeasureMethod m) { return m == MeasureMethod::Graeffe ? "graeffe" : "root-product"; }

ordered_json measure_json(const MeasureResult& m) {
  ordered_json j;
  j["value"] = num(m.value);
  j["error"] = num(m.error_bound);
  j["method"] = method_name(m.method);
  j[m.method == MeasureMethod::Graeffe ? "iterations" : "precision_bits"] = m.iterations_or_precision;
  j["certified"] = m.certified;
  return j;
}

ordered_json flags_json(const StructureFlags& f) {
  ordered_json j;
  j["self_reciprocal"] = f.self_reciprocal;
  j["primitive_c1"] = f.primitive_c1 ? ordered_json(*f.primitive_c1) : ordered_json(nullptr);
  j["sign_c2"] = f.sign_c2 ? ordered_json(*f.sign_c2) : ordered_json(nullptr);
  j["inflation"] = f.inflation;
  j["content"] = f.content ? ordered_json(f.content->get_str()) : ordered_json(nullptr);
  j["vanishes_at_0"] = f.vanishes_at_0;
  j["vanishes_at_1"] = f.vanishes_at_1;
  j["vanishes_at_minus_1"] = f.vanishes_at_minus_1;
  return j;
}

ordered_json roots_json(const RootSet& rs) {
  ordered_json j;
  int on = 0, inside = 0, outside = 0, undecided = 0;
  double max_mod = 0;
  ordered_json list = ordered_json::array();
  for (const auto& e : rs.roots()) {
    const auto z = e.approx();
    max_mod = std::max(max_mod, std::abs(z));
    if (e.on_unit_circle == Decision::Yes) {
      on += e.multiplicity;
    } else if (e.on_unit_circle == Decision::Unknown) {
      undecided += e.multiplicity;
    } else if (std::abs(z) < 1) {
      inside += e.multiplicity;
    } else {
      outside += e.multiplicity;
    }
    list.push_back({{"re", num(z.real())}, {"im", num(z.imag())}, {"radius", num(e.error_radius)}, {"multiplicity", e.multiplicity}});
  }
  const RealCount rc = count_real(rs);
  j["count"] = rs.total_multiplicity();
  j["distinct"] = rs.roots().size();
  j["real"] = rc.real;
  j["positive"] = rc.positive;
  j["on_unit_circle"] = on;
  j["inside"] = inside;
  j["outside"] = outside;
  j["undecided"] = undecided;
  j["max_modulus"] = num(max_mod);
  j["precision_bits"] = rs.precision_bits();
  j["list"] = std::move(list);
  return j;
}

ordered_json etheta_json(const EthetaVerdict& v) {
  ordered_json j;
  j["theta"] = num(v.theta);
  j["member"] = v.member;
  j["conditional"] = v.conditional;
  j["failures"] = v.failures;
  ordered_json irr;
  irr["status"] = std::string(to_string(v.irreducibility.status));
  irr["witness"] = v.irreducibility.witness;
  irr["prime"] = v.irreducibility.prime ? ordered_json(*v.irreducibility.prime) : ordered_json(nullptr);
  irr["factor"] = v.irreducibility.factor ? coefficients_json(*v.irreducibility.factor) : ordered_json(nullptr);
  j["irreducibility"] = std::move(irr);
  ordered_json audit = ordered_json::object();
  for (const auto& [k, a] : v.property_audit) audit[k] = std::string(to_string(a));
  j["property_audit"] = std::move(audit);
  return j;
}

ordered_json entry_json(const BoundEntry& e) {
  return {{"theoremId", e.theorem_id}, {"applicable", e.applicable}, {"lhs", num(e.lhs)},  {"rhs", num(e.rhs)},
          {"margin", num(e.margin)},   {"verdict", std::string(to_string(e.verdict))},   {"note", e.note}};
}

ordered_json report_json(const PolynomialReport& r) {
  ordered_json j;
  j["id"] = r.id;
  j["degree"] = r.polynomial.degree();
  j["coefficients"] = coefficients_json(r.polynomial);
  ordered_json norms;
  norms["height"] = num(r.norms.height.get_d());
  norms["length"] = num(r.norms.length.get_d());
  norms["l2"] = num(r.norms.l2());
  if (r.sup_norm) {
    norms["supnorm"] = num(r.sup_norm->value);
    norms["supnorm_argmax"] = num(r.sup_norm->argmax_angle);
  }
  j["norms"] = std::move(norms);
  j["measure"] = measure_json(r.measure);
  if (r.measure_graeffe) j["measure_graeffe"] = measure_json(*r.measure_graeffe);
  j["flags"] = flags_json(r.flags);
  if (r.roots) j["roots"] = roots_json(*r.roots);
  j["etheta"] = r.etheta ? etheta_json(*r.etheta) : ordered_json(nullptr);
  ordered_json bounds = ordered_json::array();
  for (const auto& e : r.bounds.entries) bounds.push_back(entry_json(e));
  j["bounds"] = std::move(bounds);
  j["certificates"] = r.certificates;
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

std::string csv_number(double x) { return std::isfinite(x) ? format_number(x) : ""; }

std::string coefficient_list(const Polynomial& p) {
  std::string s;
  for (const auto& c : p.coefficients()) s += (s.empty() ? "" : " ") + c.get_str();
  return s;
}

}  // namespace

PolynomialReport make_report(const CorpusEntry& e, const ReportOptions& opt) {
  PolynomialReport r;
  r.id = e.id;
  r.polynomial = e.polynomial;
  r.flags = structural_flags(e.polynomial);
  if (e.polynomial.degree() < 1) {
    r.norms = norms(e.polynomial);
    r.measure.value = mpq_class(abs(e.polynomial.leading())).get_d();
    r.bounds = verify_all(e.polynomial, {opt.bits, e.id}).report;
    return r;
  }
  const Analysis a(e.polynomial, opt.bits);
  r.norms = a.norms();
  r.measure = a.measure();
  r.sup_norm = a.sup_norm();
  if (opt.graeffe) r.measure_graeffe = mahler_graeffe(e.polynomial, 20, opt.bits);
  if (opt.keep_roots) r.roots = a.roots();
  if (opt.classify && e.polynomial.is_integer()) {
    EthetaOptions eo;
    eo.bits = opt.bits;
    r.etheta = classify_E_theta(e.polynomial, opt.theta, eo);
  }
  if (opt.run_bounds) {
    VerifyResult v = verify_all(a, {opt.bits, e.id});
    r.bounds = std::move(v.report);
    r.certificates = std::move(v.certificates);
  }
  r.bounds.polynomial_id = e.id;
  return r;
}

std::string emit_report(const std::vector<PolynomialReport>& reports, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json j;
    j["polynomials"] = ordered_json::array();
    for (const auto& r : reports) j["polynomials"].push_back(report_json(r));
    return dump(j);
  }
  std::string out = "id,degree,theoremId,applicable,lhs,rhs,margin,verdict\n";
  for (const auto& r : reports) {
    for (const auto& e : r.bounds.entries) {
      out += csv_field(r.id) + "," + std::to_string(r.polynomial.degree()) + "," + csv_field(e.theorem_id) + "," +
             (e.applicable ? "true" : "false") + "," + csv_number(e.lhs) + "," + csv_number(e.rhs) + "," +
             csv_number(e.margin) + "," + std::string(to_string(e.verdict)) + "\n";
    }
  }
  return out;
}

std::string emit_summary_csv(const std::vector<PolynomialReport>& reports) {
  std::string out = "id,degree,measure,error,measure_graeffe,height,length,l2,self_reciprocal,etheta_member,etheta_failures\n";
  for (const auto& r : reports) {
    std::string failures;
    if (r.etheta) {
      for (const auto& f : r.etheta->failures) failures += (failures.empty() ? "" : ";") + f;
    }
    out += csv_field(r.id) + "," + std::to_string(r.polynomial.degree()) + "," + csv_number(r.measure.value) + "," +
           csv_number(r.measure.error_bound) + "," + (r.measure_graeffe ? csv_number(r.measure_graeffe->value) : "") + "," +
           csv_number(r.norms.height.get_d()) + "," + csv_number(r.norms.length.get_d()) + "," + csv_number(r.norms.l2()) + "," +
           (r.flags.self_reciprocal ? "true" : "false") + "," +
           (r.etheta ? (r.etheta->member ? "true" : (r.etheta->conditional ? "conditional" : "false")) : "") + "," +
           failures + "\n";
  }
  return out;
}

std::string emit_search(const std::vector<SearchRecord>& records, ReportFormat format) {
  if (format == ReportFormat::Json) {
    ordered_json j;
    j["records"] = ordered_json::array();
    for (const auto& r : records) {
      j["records"].push_back({{"rank", r.rank},
                              {"degree", r.polynomial.degree()},
                              {"coefficients", coefficients_json(r.polynomial)},
                              {"measure", measure_json(r.measure)},
                              {"flags", flags_json(r.flags)}});
    }
    return dump(j);
  }
  std::string out = "rank,degree,measure,error,inflation,coefficients\n";
  for (const auto& r : records) {
    out += std::to_string(r.rank) + "," + std::to_string(r.polynomial.degree()) + "," + csv_number(r.measure.value) + "," +
           csv_number(r.measure.error_bound) + "," + std::to_string(r.flags.inflation) + "," +
           coefficient_list(r.polynomial) + "\n";
  }
  return out;
}

namespace {

std::string fixed(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return std::string(buf) == "-0.000" ? "0.000" : buf;
}

std::string xml_escape(const std::string& s) {
  std::string o;
  for (char c : s) {
    switch (c) {
      case '&':
        o += "&amp;";
        break;
      case '<':
        o += "&lt;";
        break;
      case '>':
        o += "&gt;";
        break;
      case '"':
        o += "&quot;";
        break;
      default:
        o += c;
    }
  }
  return o;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string emit_zero_plot(const std::vector<PlotSeries>& series, const PlotOptions& opt) {
  double extent = 0;
  for (const auto& s : series) {
    for (const auto& e : s.roots.roots()) extent = std::max(extent, std::abs(e.approx()));
  }
  // The unit circle stays in view even when every root is small.
  const double half = std::max(extent, opt.show_unit_circle ? 1.0 : 1e-9) * 1.1;
  const double w = opt.width, h = opt.height;
  const double scale = std::min(w, h) / (2 * half);
  const double cx = w / 2, cy = h / 2;
  auto px = [&](double x) { return fixed(cx + x * scale); };
  auto py = [&](double y) { return fixed(cy - y * scale); };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(opt.width) + "\" height=\"" +
       std::to_string(opt.height) + "\" viewBox=\"0 0 " + std::to_string(opt.width) + " " + std::to_string(opt.height) + "\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + std::to_string(opt.width) + "\" height=\"" + std::to_string(opt.height) +
       "\" fill=\"white\"/>\n";
  s += "<g id=\"axes\" stroke=\"#bbbbbb\" stroke-width=\"0.5\">\n";
  s += "<line x1=\"0.000\" y1=\"" + fixed(cy) + "\" x2=\"" + fixed(w) + "\" y2=\"" + fixed(cy) + "\"/>\n";
  s += "<line x1=\"" + fixed(cx) + "\" y1=\"0.000\" x2=\"" + fixed(cx) + "\" y2=\"" + fixed(h) + "\"/>\n";
  s += "</g>\n";
  if (opt.show_unit_circle) {
    s += "<circle id=\"unit-circle\" cx=\"" + fixed(cx) + "\" cy=\"" + fixed(cy) + "\" r=\"" + fixed(scale) +
         "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
  }
  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& sr = series[k];
    s += "<g class=\"roots\" data-id=\"" + xml_escape(sr.id) + "\" fill=\"" + kPalette[k % std::size(kPalette)] + "\">\n";
    for (const auto& e : sr.roots.roots()) {
      const auto z = e.approx();
      s += "<circle cx=\"" + px(z.real()) + "\" cy=\"" + py(z.imag()) + "\" r=\"1.5\"><title>" + xml_escape(sr.id) +
           ": " + format_number(z.real()) + (z.imag() < 0 ? " - " : " + ") + format_number(std::abs(z.imag())) + "i" +
           (e.multiplicity > 1 ? " (multiplicity " + std::to_string(e.multiplicity) + ")" : "") + "</title></circle>\n";
    }
    s += "</g>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace mahlerlab
