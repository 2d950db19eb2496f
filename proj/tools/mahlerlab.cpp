// mahlerlab command-line front end.
#include <CLI11.hpp>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "mahlerlab/corpusio.hpp"
#include "mahlerlab/errors.hpp"

using namespace mahlerlab;

namespace {

enum Exit { kOk = 0, kInputError = 1, kNumericError = 2, kViolations = 3 };

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  int precision = 128;
  double theta = 1.3;
  std::string format = "json";
  std::string out;
  std::string input;
  bool descending = false;
  unsigned jobs = 1;
};

int default_precision() {
  const char* env = std::getenv("MAHLERLAB_PRECISION");
  if (!env || !*env) return 128;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 64 || v > 4096) throw InputError(std::string("MAHLERLAB_PRECISION must be an integer in [64, 4096], got '") + env + "'");
  return static_cast<int>(v);
}

void add_common(CLI::App* cmd, Config& cfg, bool corpus) {
  cmd->add_option("--precision", cfg.precision, "working precision in bits")->check(CLI::Range(64, 4096));
  cmd->add_option("--theta", cfg.theta, "measure cutoff theta, 1 < theta <= theta_0")
      ->check(CLI::Range(1.0, kTheta0))
      ->check(CLI::Validator([](std::string& s) { return std::stod(s) > 1.0 ? std::string() : "theta must exceed 1"; }, "", ""));
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", cfg.out, "output file (default: stdout)");
  cmd->add_option("--jobs", cfg.jobs, "worker threads")->check(CLI::Range(1u, 1024u));
  if (corpus) {
    cmd->add_option("file", cfg.input, "corpus file, one polynomial per line (a_0 first)")->required();
    cmd->add_flag("--descending", cfg.descending, "coefficients are listed leading term first");
  }
}

std::vector<CorpusEntry> read_corpus(const Config& cfg) {
  std::ifstream in(cfg.input);
  if (!in) throw InputError("cannot open '" + cfg.input + "'");
  try {
    return parse_corpus(in, {cfg.descending});
  } catch (const CorpusParseError& e) {
    throw InputError(cfg.input + ": " + e.what());
  }
}

void write_output(const Config& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(cfg.out, std::ios::binary);
  if (!out || !(out << text)) throw InputError("cannot write '" + cfg.out + "'");
}

// Reports in corpus order, computed by cfg.jobs workers.
std::vector<PolynomialReport> build_reports(const std::vector<CorpusEntry>& corpus, const Config& cfg, bool bounds) {
  ReportOptions opt;
  opt.bits = static_cast<Bits>(cfg.precision);
  opt.theta = cfg.theta;
  opt.run_bounds = bounds;
  opt.graeffe = !bounds;
  opt.keep_roots = !bounds;
  std::vector<PolynomialReport> out(corpus.size());
  std::atomic<std::size_t> next{0};
  std::mutex m;
  std::exception_ptr failure;
  std::size_t failed_at = corpus.size();
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < corpus.size();) {
      try {
        out[i] = make_report(corpus[i], opt);
      } catch (...) {
        std::lock_guard<std::mutex> lock(m);
        if (i < failed_at) {
          failed_at = i;
          failure = std::current_exception();
        }
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(std::max<std::size_t>(1, corpus.size()))));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < jobs; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) {
    try {
      std::rethrow_exception(failure);
    } catch (const std::exception& e) {
      throw NumericError("entry '" + corpus[failed_at].id + "' (line " + std::to_string(corpus[failed_at].source_line) +
                         "): " + e.what());
    }
  }
  return out;
}

ReportFormat format_of(const Config& cfg) { return cfg.format == "csv" ? ReportFormat::Csv : ReportFormat::Json; }

int cmd_analyze(const Config& cfg) {
  const auto reports = build_reports(read_corpus(cfg), cfg, false);
  write_output(cfg, cfg.format == "csv" ? emit_summary_csv(reports) : emit_report(reports, ReportFormat::Json));
  return kOk;
}

int cmd_verify(const Config& cfg) {
  const auto reports = build_reports(read_corpus(cfg), cfg, true);
  write_output(cfg, emit_report(reports, format_of(cfg)));
  int violated = 0, rows = 0;
  for (const auto& r : reports) {
    violated += r.bounds.count(Verdict::Violated);
    rows += static_cast<int>(r.bounds.entries.size());
  }
  std::cerr << reports.size() << " polynomials, " << rows << " rows, " << violated << " violated\n";
  return violated ? kViolations : kOk;
}

struct SearchConfig {
  int degree = 10;
  int min_degree = 2;
  long height = 1;
  unsigned long long cap = kDefaultEnumerationCap;
  bool progress = false;
  bool format_given = false;
};

int cmd_search(const Config& cfg, const SearchConfig& sc) {
  SearchOptions opt;
  opt.min_degree = sc.min_degree;
  opt.max_degree = sc.degree;
  opt.height = sc.height;
  opt.theta = cfg.theta;
  opt.jobs = cfg.jobs;
  opt.bits = static_cast<Bits>(cfg.precision);
  opt.cap = sc.cap;
  if (sc.progress) {
    opt.progress = [](std::size_t done, std::size_t total) { std::cerr << "\rblocks " << done << "/" << total << std::flush; };
  }
  std::vector<SearchRecord> recs;
  try {
    recs = search_min_mahler(opt);
  } catch (const SearchSizeError& e) {
    throw InputError(e.what());
  }
  if (sc.progress) std::cerr << "\n";
  if (!cfg.out.empty()) {
    write_output(cfg, emit_search(recs, format_of(cfg)));
  } else if (sc.format_given) {
    std::cout << emit_search(recs, format_of(cfg));
    return kOk;
  }
  std::ostringstream table;
  char line[96];
  std::snprintf(line, sizeof line, "%5s %6s %18s  %s\n", "rank", "degree", "measure", "coefficients (a_0 first)");
  table << line;
  for (const auto& r : recs) {
    std::string coeffs;
    for (const auto& c : r.polynomial.coefficients()) coeffs += (coeffs.empty() ? "" : " ") + c.get_str();
    std::snprintf(line, sizeof line, "%5d %6d %18.15f  ", r.rank, r.polynomial.degree(), r.measure.value);
    table << line << coeffs << "\n";
  }
  table << recs.size() << " records with 1 < M < " << format_number(cfg.theta) << "\n";
  std::cout << table.str();
  return kOk;
}

struct PlotConfig {
  int width = 640;
  int height = 640;
  bool no_circle = false;
};

int cmd_plot(const Config& cfg, const PlotConfig& pc) {
  const auto corpus = read_corpus(cfg);
  std::vector<PlotSeries> series;
  for (const auto& e : corpus) {
    if (e.polynomial.degree() < 1) continue;
    try {
      series.push_back({e.id, find_roots_adaptive(e.polynomial, static_cast<Bits>(cfg.precision))});
    } catch (const std::exception& ex) {
      throw NumericError("entry '" + e.id + "': " + ex.what());
    }
  }
  PlotOptions opt;
  opt.width = pc.width;
  opt.height = pc.height;
  opt.show_unit_circle = !pc.no_circle;
  write_output(cfg, emit_zero_plot(series, opt));
  return kOk;
}

int cmd_constants(const Config& cfg) {
  const SolvedConstants& k = solve_constants();
  auto res = [&](const char* key) {
    auto it = k.residuals.find(key);
    return it == k.residuals.end() ? std::string("-") : format_number(it->second);
  };
  std::ostringstream s;
  if (cfg.format == "csv") {
    s << "name,value,printed,residual\n";
    s << "theta0," << format_number(k.theta0) << ",1.324717," << res("theta0") << "\n";
    s << "golden," << format_number(k.golden) << ",,-\n";
    s << "c," << format_number(k.c) << "," << format_number(k.c_printed) << "," << res("c") << "\n";
    s << "a," << format_number(k.a) << ",," << res("a") << "\n";
    s << "A," << format_number(k.A) << "," << format_number(k.A_printed) << ",-\n";
    s << "b," << format_number(k.b) << ",," << res("b") << "\n";
    s << "B," << format_number(k.B) << "," << format_number(k.B_printed) << ",-\n";
  } else {
    char line[128];
    auto row = [&](const char* name, double v, const std::string& printed, const std::string& r) {
      std::snprintf(line, sizeof line, "%-7s %-18s %-9s %s\n", name, format_number(v).c_str(), printed.c_str(), r.c_str());
      s << line;
    };
    std::snprintf(line, sizeof line, "%-7s %-18s %-9s %s\n", "name", "value", "printed", "residual");
    s << line;
    row("theta0", k.theta0, "1.324717", res("theta0"));
    row("golden", k.golden, "", "-");
    row("c", k.c, format_number(k.c_printed), res("c"));
    row("a", k.a, "", res("a"));
    row("A", k.A, format_number(k.A_printed), "-");
    row("b", k.b, "", res("b"));
    row("B", k.B, format_number(k.B_printed), "-");
  }
  write_output(cfg, s.str());
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mahler measure analysis, inequality verification and small-measure search"};
  app.require_subcommand(1);
  Config cfg;
  try {
    cfg.precision = default_precision();
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  SearchConfig sc;
  PlotConfig pc;

  auto* analyze = app.add_subcommand("analyze", "norms, measures, roots, structure and E_theta verdicts");
  add_common(analyze, cfg, true);
  auto* verify = app.add_subcommand("verify", "evaluate every inequality; exit 3 when any row is violated");
  add_common(verify, cfg, true);
  auto* search = app.add_subcommand("search", "self-reciprocal polynomials with small Mahler measure");
  add_common(search, cfg, false);
  search->add_option("--degree", sc.degree, "largest even degree scanned")->check(CLI::Range(2, 200));
  search->add_option("--min-degree", sc.min_degree, "smallest degree scanned")->check(CLI::Range(2, 200));
  search->add_option("--height", sc.height, "coefficient bound H")->check(CLI::Range(1L, 1000L));
  search->add_option("--cap", sc.cap, "largest enumeration size accepted per degree");
  search->add_flag("--progress", sc.progress, "report finished blocks on stderr");
  auto* plot = app.add_subcommand("plot", "SVG scatter plot of the roots");
  add_common(plot, cfg, true);
  plot->add_option("--width", pc.width)->check(CLI::Range(16, 10000));
  plot->add_option("--height", pc.height)->check(CLI::Range(16, 10000));
  plot->add_flag("--no-unit-circle", pc.no_circle);
  auto* constants = app.add_subcommand("constants", "solved constants with residuals");
  add_common(constants, cfg, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }

  try {
      sc.format_given = search->count("--format") > 0;
    if (*analyze) return cmd_analyze(cfg);
    if (*verify) return cmd_verify(cfg);
    if (*search) return cmd_search(cfg, sc);
    if (*plot) return cmd_plot(cfg, pc);
    if (*constants) return cmd_constants(cfg);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumericError;
  }
  return kOk;
}
