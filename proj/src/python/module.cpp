#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "mahlerlab/corpusio.hpp"

namespace py = pybind11;
using namespace mahlerlab;

namespace {

// Python ints (any size) and Fractions, a_0 first.
Polynomial to_polynomial(const py::sequence& seq) {
  std::vector<mpq_class> c;
  c.reserve(py::len(seq));
  for (const auto& item : seq) {
    if (py::isinstance<py::bool_>(item) || py::isinstance<py::float_>(item)) {
      throw py::type_error("coefficients must be integers or fractions.Fraction");
    }
    mpq_class q;
    if (q.set_str(py::str(item).cast<std::string>(), 10) != 0) {
      throw py::type_error("cannot read coefficient '" + py::str(item).cast<std::string>() + "'");
    }
    q.canonicalize();
    c.push_back(q);
  }
  return Polynomial(std::move(c));
}

py::object to_python(const mpq_class& q) {
  py::object as_int = py::module_::import("builtins").attr("int");
  if (q.get_den() == 1) return as_int(py::str(q.get_num().get_str()));
  return py::module_::import("fractions").attr("Fraction")(py::str(q.get_str()));
}

py::list coefficients(const Polynomial& p) {
  py::list out;
  for (const auto& c : p.coefficients()) out.append(to_python(c));
  return out;
}

Bits bits_of(int precision) {
  if (precision < 64 || precision > 4096) throw py::value_error("precision must lie in [64, 4096]");
  return static_cast<Bits>(precision);
}

py::dict bound_row(const BoundEntry& b) {
  py::dict d;
  d["theoremId"] = b.theorem_id;
  d["applicable"] = b.applicable;
  d["lhs"] = b.lhs;
  d["rhs"] = b.rhs;
  d["margin"] = b.margin;
  d["verdict"] = std::string(to_string(b.verdict));
  d["note"] = b.note;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mahler measures, root finding, inequality checks and small-measure search";
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);
  py::register_exception<SearchSizeError>(m, "SearchSizeError", PyExc_ValueError);
  py::register_exception<CorpusParseError>(m, "CorpusParseError", PyExc_ValueError);

  py::enum_<MeasureMethod>(m, "MeasureMethod")
      .value("RootProduct", MeasureMethod::RootProduct)
      .value("Graeffe", MeasureMethod::Graeffe);

  py::class_<MeasureResult>(m, "MeasureResult")
      .def_readonly("value", &MeasureResult::value)
      .def_readonly("error_bound", &MeasureResult::error_bound)
      .def_readonly("method", &MeasureResult::method)
      .def_readonly("iterations_or_precision", &MeasureResult::iterations_or_precision)
      .def_readonly("certified", &MeasureResult::certified)
      .def_property_readonly("lower", &MeasureResult::lower)
      .def_property_readonly("upper", &MeasureResult::upper)
      .def("__repr__", [](const MeasureResult& r) {
        return "MeasureResult(value=" + format_number(r.value) + ", error_bound=" + format_number(r.error_bound) + ")";
      });

  m.def(
      "mahler_measure",
      [](const py::sequence& c, int precision) {
        const Polynomial p = to_polynomial(c);
        py::gil_scoped_release release;
        return mahler(p, bits_of(precision));
      },
      py::arg("coefficients"), py::arg("precision") = 128, "Mahler measure from certified roots.");

  m.def(
      "mahler_graeffe",
      [](const py::sequence& c, int k, int precision) {
        const Polynomial p = to_polynomial(c);
        py::gil_scoped_release release;
        return mahler_graeffe(p, k, bits_of(precision));
      },
      py::arg("coefficients"), py::arg("k") = 20, py::arg("precision") = 128,
      "Mahler measure by k root-squaring steps.");

  m.def(
      "roots",
      [](const py::sequence& c, int precision) {
        const Polynomial p = to_polynomial(c);
        RootSet rs;
        {
          py::gil_scoped_release release;
          rs = find_roots_adaptive(p, bits_of(precision));
        }
        std::vector<std::complex<double>> out;
        for (const auto& r : rs.roots()) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.approx());
        return out;
      },
      py::arg("coefficients"), py::arg("precision") = 128, "Complex roots repeated by multiplicity.");

  m.def(
      "norms",
      [](const py::sequence& c) {
        const NormBundle n = mahlerlab::norms(to_polynomial(c));
        py::dict d;
        d["height"] = to_python(n.height);
        d["length"] = to_python(n.length);
        d["l2"] = n.l2();
        return d;
      },
      py::arg("coefficients"));

  m.def("cyclotomic", [](int n) { return coefficients(mahlerlab::cyclotomic(n)); }, py::arg("n"),
        "Coefficients of the n-th cyclotomic polynomial.");

  m.def(
      "cyclotomic_factor",
      [](const py::sequence& c) -> std::optional<int> {
        auto f = mahlerlab::cyclotomic_factor(to_polynomial(c));
        if (!f) return std::nullopt;
        return f->first;
      },
      py::arg("coefficients"), "Smallest n with Phi_n dividing the polynomial, or None.");

  m.def(
      "classify_etheta",
      [](const py::sequence& c, double theta) {
        const Polynomial p = to_polynomial(c);
        EthetaVerdict v;
        {
          py::gil_scoped_release release;
          v = classify_E_theta(p, theta);
        }
        py::dict d;
        d["member"] = v.member;
        d["conditional"] = v.conditional;
        d["failures"] = v.failures;
        d["measure"] = v.measure.value;
        d["irreducibility"] = std::string(to_string(v.irreducibility.status));
        return d;
      },
      py::arg("coefficients"), py::arg("theta") = 1.3);

  m.def(
      "verify",
      [](const py::sequence& c, int precision) {
        const Polynomial p = to_polynomial(c);
        VerifyOptions opt;
        opt.bits = bits_of(precision);
        VerifyResult r;
        {
          py::gil_scoped_release release;
          r = verify_all(p, opt);
        }
        py::list rows;
        for (const auto& b : r.report.entries) rows.append(bound_row(b));
        py::dict d;
        d["bounds"] = rows;
        d["certificates"] = r.certificates;
        return d;
      },
      py::arg("coefficients"), py::arg("precision") = 128, "Every inequality row for one polynomial.");

  m.def(
      "search",
      [](int max_degree, long height, double theta, int min_degree, unsigned jobs, int precision,
         unsigned long long cap) {
        SearchOptions opt;
        opt.max_degree = max_degree;
        opt.min_degree = min_degree;
        opt.height = height;
        opt.theta = theta;
        opt.jobs = jobs;
        opt.bits = bits_of(precision);
        opt.cap = cap;
        std::vector<SearchRecord> recs;
        {
          py::gil_scoped_release release;
          recs = search_min_mahler(opt);
        }
        py::list out;
        for (const auto& r : recs) {
          py::dict d;
          d["rank"] = r.rank;
          d["degree"] = r.polynomial.degree();
          d["measure"] = r.measure.value;
          d["error"] = r.measure.error_bound;
          d["coefficients"] = coefficients(r.polynomial);
          out.append(d);
        }
        return out;
      },
      py::arg("max_degree") = 10, py::arg("height") = 1, py::arg("theta") = 1.3, py::arg("min_degree") = 2,
      py::arg("jobs") = 1, py::arg("precision") = 128, py::arg("cap") = kDefaultEnumerationCap,
      "Monic self-reciprocal polynomials with 1 < M < theta, sorted by measure.");

  m.def("constants", [] {
    const SolvedConstants& k = solve_constants();
    py::dict d;
    d["theta0"] = k.theta0;
    d["golden"] = k.golden;
    d["c"] = k.c;
    d["a"] = k.a;
    d["A"] = k.A;
    d["b"] = k.b;
    d["B"] = k.B;
    d["residuals"] = k.residuals;
    return d;
  });

  m.def(
      "parse_corpus",
      [](const std::string& text, bool descending) {
        py::list out;
        for (const auto& e : mahlerlab::parse_corpus(text, {descending})) {
          out.append(py::make_tuple(e.id, coefficients(e.polynomial)));
        }
        return out;
      },
      py::arg("text"), py::arg("descending") = false);

  m.def(
      "report_json",
      [](const std::string& text, int precision, double theta, bool bounds, bool descending) {
        const auto corpus = mahlerlab::parse_corpus(text, {descending});
        ReportOptions opt;
        opt.bits = bits_of(precision);
        opt.theta = theta;
        opt.run_bounds = bounds;
        py::gil_scoped_release release;
        std::vector<PolynomialReport> reports;
        for (const auto& e : corpus) reports.push_back(make_report(e, opt));
        return emit_report(reports, ReportFormat::Json);
      },
      py::arg("text"), py::arg("precision") = 128, py::arg("theta") = 1.3, py::arg("bounds") = false,
      py::arg("descending") = false, "Corpus text in, JSON report out.");
}
