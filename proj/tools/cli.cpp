#include "cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <json.hpp>

#include "hhbounds/convexity.hpp"
#include "hhbounds/expr.hpp"
#include "hhbounds/oracle.hpp"
#include "hhbounds/rect_bounds.hpp"
#include "verify_suite.hpp"

namespace hhb::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

struct UsageError : Error {
  using Error::Error;
};

struct RunConfig {
  std::string function;
  std::vector<double> rect = {0, 1, 0, 1};
  std::string n_text = "4";
  int m = 16;
  std::string scheme = "nested";
  double quad_tol = 1e-10;
  std::uint64_t seed = 0;
  std::string output = "human";
  bool skip_convexity_check = false;
  int convexity_samples = kDefaultConvexitySamples;
  double convexity_tol = kDefaultConvexityTol;
  int oracle_grid = kDefaultOracleGrid;
  double tolerance = 0;
  int cases = 200;
  bool inject_concave = false;
};

// Shortest round-trip form, for human output.
std::string num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

// 17 significant digits, '.' separator regardless of locale, for CSV.
std::string csv_num(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

Rect make_rect(const RunConfig& cfg) {
  const auto& v = cfg.rect;
  if (v.size() != 4) throw UsageError("--rect needs four values a b c d");
  try {
    return Rect(v[0], v[1], v[2], v[3]);
  } catch (const DomainError& e) {
    throw UsageError(std::string("--rect: ") + e.what());
  }
}

int parse_positive(const std::string& text, const char* what) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || v < 1) {
    throw UsageError(std::string(what) + " must be a positive integer, got '" + text + "'");
  }
  return v;
}

int single_n(const RunConfig& cfg) {
  if (cfg.n_text.find(':') != std::string::npos) {
    throw UsageError("--n ranges are only accepted by 'converge'");
  }
  return parse_positive(cfg.n_text, "--n");
}

std::pair<int, int> n_range(const RunConfig& cfg) {
  const auto colon = cfg.n_text.find(':');
  if (colon == std::string::npos) {
    const int n = parse_positive(cfg.n_text, "--n");
    return {n, n};
  }
  const int lo = parse_positive(cfg.n_text.substr(0, colon), "--n lower end");
  const int hi = parse_positive(cfg.n_text.substr(colon + 1), "--n upper end");
  if (lo > hi) throw UsageError("--n range must satisfy lo <= hi");
  return {lo, hi};
}

InnerScheme make_scheme(const RunConfig& cfg) {
  if (cfg.m < 1) throw UsageError("--m must be >= 1");
  if (cfg.scheme == "nested") return InnerScheme::nested(cfg.m);
  if (!(cfg.quad_tol > 0)) throw UsageError("--quad-tol must be > 0");
  return InnerScheme::quadrature(cfg.quad_tol);
}

const std::map<std::string, Fn2D>& corpus() {
  static const std::map<std::string, Fn2D> entries = {
      {"xy", Fn2D{[](double x, double y) { return x * y; }, false, "xy"}},
      {"sumsq", Fn2D{[](double x, double y) { return x * x + y * y; }, false, "sumsq"}},
      {"expsum", Fn2D{[](double x, double y) { return std::exp(x + y); }, true, "expsum"}},
      {"absdist",
       Fn2D{[](double x, double y) { return std::abs(x - 0.5) + std::abs(y - 0.5); }, false,
            "absdist"}},
      {"const1", Fn2D{[](double, double) { return 1.0; }, true, "const1"}},
  };
  return entries;
}

Fn2D resolve_function(const std::string& text) {
  if (text.empty()) throw UsageError("--f is required");
  if (auto it = corpus().find(text); it != corpus().end()) return it->second;
  return expr::parse(text).as_function();
}

class ConvexityRejected : public Error {
 public:
  explicit ConvexityRejected(ConvexityReport report)
      : Error("convexity gate rejected the function"), report_(std::move(report)) {}
  const ConvexityReport& report() const { return report_; }

 private:
  ConvexityReport report_;
};

void print_rejection(std::ostream& err, const ConvexityReport& rep) {
  err << "convexity gate: function is not convex on the coordinates (max violation "
      << num(rep.max_violation) << " over " << rep.samples << " samples per axis)\n";
  if (rep.witness) {
    const auto& w = *rep.witness;
    err << "  witness: axis=" << axis_name(w.axis) << " fixed=" << num(w.fixed)
        << " u1=" << num(w.u1) << " u2=" << num(w.u2) << " lambda=" << num(w.lambda)
        << " at (" << num(w.x) << ", " << num(w.y) << ")\n";
  }
  err << "  rerun with --skip-convexity-check to bypass the gate\n";
}

void gate(const RunConfig& cfg, const Fn2D& f, const Rect& r) {
  if (cfg.skip_convexity_check) return;
  ConvexityReport rep = check_coordinate_convexity(f, r, cfg.convexity_samples, cfg.convexity_tol,
                                                   cfg.seed);
  if (!rep.passed) throw ConvexityRejected(std::move(rep));
}

ordered_json rect_json(const Rect& r) { return ordered_json::array({r.a(), r.b(), r.c(), r.d()}); }

std::string rect_human(const Rect& r) {
  return "[" + num(r.a()) + ", " + num(r.b()) + "] x [" + num(r.c()) + ", " + num(r.d()) + "]";
}

int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  const Rect r = make_rect(cfg);
  const int n = single_n(cfg);
  if (cfg.m < 1) throw UsageError("--m must be >= 1");
  const Fn2D f = resolve_function(cfg.function);
  gate(cfg, f, r);

  const BoundPair bp = theorem3_discrete_bounds(f, r, n, cfg.m);
  const OracleResult oracle = reference_integral_2d(f, r, cfg.oracle_grid);

  if (cfg.output == "json") {
    ordered_json j;
    j["function"] = cfg.function;
    j["rect"] = rect_json(r);
    j["n"] = n;
    j["m"] = cfg.m;
    j["lower"] = bp.lower;
    j["upper"] = bp.upper;
    j["gap"] = bp.gap();
    j["oracle"] = oracle.value;
    j["oracle_error"] = oracle.error_estimate;
    out << j.dump(2) << "\n";
  } else if (cfg.output == "csv") {
    out << "function,a,b,c,d,n,m,lower,upper,gap,oracle,oracle_error\n";
    out << csv_field(cfg.function) << "," << csv_num(r.a()) << "," << csv_num(r.b()) << ","
        << csv_num(r.c()) << "," << csv_num(r.d()) << "," << n << "," << cfg.m << ","
        << csv_num(bp.lower) << "," << csv_num(bp.upper) << "," << csv_num(bp.gap()) << ","
        << csv_num(oracle.value) << "," << csv_num(oracle.error_estimate) << "\n";
  } else {
    out << "function: " << cfg.function << "\n"
        << "rect:     " << rect_human(r) << "\n"
        << "n: " << n << "  m: " << cfg.m << "  evaluations: " << bp.evals << "\n"
        << "lower=" << num(bp.lower) << " upper=" << num(bp.upper) << " gap=" << num(bp.gap())
        << "\n"
        << "oracle=" << num(oracle.value) << " (error estimate " << num(oracle.error_estimate)
        << ", grid " << oracle.grid << ", not certified)\n";
  }
  return kOk;
}

ordered_json chain_json(const std::string& name, const ChainReport& rep) {
  ordered_json j;
  j["name"] = name;
  j["tolerance"] = rep.tolerance;
  j["terms"] = ordered_json::array();
  for (const auto& t : rep.terms) j["terms"].push_back({{"name", t.name}, {"value", t.value}});
  j["orderings"] = ordered_json::array();
  for (const auto& o : rep.orderings) {
    j["orderings"].push_back(
        {{"i", o.i}, {"j", o.j}, {"satisfied", o.satisfied}, {"slack", o.slack}});
  }
  return j;
}

int cmd_chain(const RunConfig& cfg, std::ostream& out) {
  const Rect r = make_rect(cfg);
  const InnerScheme scheme = make_scheme(cfg);
  const Fn2D f = resolve_function(cfg.function);
  gate(cfg, f, r);

  ChainOptions opts;
  opts.tolerance = cfg.tolerance;
  opts.known_integral = reference_integral_2d(f, r, cfg.oracle_grid).value;
  const std::vector<std::pair<std::string, ChainReport>> chains = {
      {"dragomir", dragomir_chain(f, r, scheme, opts)},
      {"bakula", bakula_chain(f, r, scheme, opts)}};

  if (cfg.output == "json") {
    ordered_json j;
    j["function"] = cfg.function;
    j["rect"] = rect_json(r);
    j["scheme"] = scheme.describe();
    j["certified"] = scheme.certified();
    j["chains"] = ordered_json::array();
    for (const auto& [name, rep] : chains) j["chains"].push_back(chain_json(name, rep));
    out << j.dump(2) << "\n";
  } else if (cfg.output == "csv") {
    out << "chain,index,term,value,satisfied_next,slack_next\n";
    for (const auto& [name, rep] : chains) {
      for (std::size_t i = 0; i < rep.terms.size(); ++i) {
        out << name << "," << i << "," << rep.terms[i].name << "," << csv_num(rep.terms[i].value)
            << ",";
        if (i < rep.orderings.size()) {
          out << (rep.orderings[i].satisfied ? "true" : "false") << ","
              << csv_num(rep.orderings[i].slack);
        } else {
          out << ",";
        }
        out << "\n";
      }
    }
  } else {
    out << "function: " << cfg.function << "\n"
        << "rect:     " << rect_human(r) << "\n"
        << "scheme:   " << scheme.describe() << "\n";
    for (const auto& [name, rep] : chains) {
      out << "\n" << name << " chain (tolerance " << num(rep.tolerance) << ")\n";
      for (std::size_t i = 0; i < rep.terms.size(); ++i) {
        out << "  " << std::left << std::setw(24) << rep.terms[i].name << num(rep.terms[i].value)
            << "\n";
        if (i < rep.orderings.size()) {
          const auto& o = rep.orderings[i];
          out << "    <= " << (o.satisfied ? "ok" : "VIOLATED") << " (slack " << num(o.slack)
              << ")\n";
        }
      }
    }
  }
  return kOk;
}

int cmd_converge(const RunConfig& cfg, std::ostream& out) {
  const Rect r = make_rect(cfg);
  const auto [lo, hi] = n_range(cfg);
  if (cfg.m < 1) throw UsageError("--m must be >= 1");
  const Fn2D f = resolve_function(cfg.function);
  gate(cfg, f, r);

  struct Row {
    int n;
    BoundPair bp;
    std::optional<double> ratio;
  };
  std::vector<Row> rows;
  for (long long n = lo; n <= hi; n *= 2) {
    Row row{static_cast<int>(n), theorem3_discrete_bounds(f, r, static_cast<int>(n), cfg.m), {}};
    if (!rows.empty() && rows.back().bp.gap() > 0) {
      row.ratio = row.bp.gap() / rows.back().bp.gap();
    }
    rows.push_back(row);
  }

  if (cfg.output == "json") {
    ordered_json j;
    j["function"] = cfg.function;
    j["rect"] = rect_json(r);
    j["m"] = cfg.m;
    j["rows"] = ordered_json::array();
    for (const auto& row : rows) {
      ordered_json jr;
      jr["n"] = row.n;
      jr["lower"] = row.bp.lower;
      jr["upper"] = row.bp.upper;
      jr["gap"] = row.bp.gap();
      jr["gap_ratio"] = row.ratio ? ordered_json(*row.ratio) : ordered_json(nullptr);
      j["rows"].push_back(jr);
    }
    out << j.dump(2) << "\n";
  } else if (cfg.output == "csv") {
    out << "n,lower,upper,gap,gap_ratio\n";
    for (const auto& row : rows) {
      out << row.n << "," << csv_num(row.bp.lower) << "," << csv_num(row.bp.upper) << ","
          << csv_num(row.bp.gap()) << "," << (row.ratio ? csv_num(*row.ratio) : "") << "\n";
    }
  } else {
    out << "function: " << cfg.function << "  rect: " << rect_human(r) << "  m: " << cfg.m
        << "\n";
    out << std::left << std::setw(8) << "n" << std::setw(26) << "lower" << std::setw(26)
        << "upper" << std::setw(26) << "gap"
        << "gap ratio\n";
    for (const auto& row : rows) {
      out << std::left << std::setw(8) << row.n << std::setw(26) << num(row.bp.lower)
          << std::setw(26) << num(row.bp.upper) << std::setw(26) << num(row.bp.gap())
          << (row.ratio ? num(*row.ratio) : "-") << "\n";
    }
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.cases < 1) throw UsageError("--cases must be >= 1");
  if (cfg.m < 1) throw UsageError("--m must be >= 1");

  VerifyConfig vc;
  vc.cases = cfg.cases;
  vc.seed = cfg.seed;
  vc.m = cfg.m;
  vc.oracle_grid = cfg.oracle_grid;
  vc.convexity_samples = cfg.convexity_samples;
  vc.convexity_tol = cfg.convexity_tol;
  vc.inject_concave = cfg.inject_concave;
  const VerifyOutcome outcome = run_verify(vc);

  if (outcome.rejected) {
    const auto& rej = *outcome.rejected;
    err << "case " << rej.case_index << " (case seed " << rej.case_seed << "): " << rej.label
        << "\n";
    print_rejection(err, rej.report);
    return kConvexityRejected;
  }

  if (cfg.output == "json") {
    ordered_json j;
    j["seed"] = cfg.seed;
    j["cases"] = cfg.cases;
    j["m"] = cfg.m;
    j["oracle_grid"] = cfg.oracle_grid;
    j["properties"] = ordered_json::array();
    for (const auto& p : outcome.properties) {
      ordered_json jp;
      jp["name"] = p.name;
      jp["checked"] = p.checked;
      jp["failed"] = p.failed;
      jp["skipped"] = p.skipped;
      jp["worst_slack"] = p.worst_slack ? ordered_json(*p.worst_slack) : ordered_json(nullptr);
      j["properties"].push_back(jp);
    }
    j["failures"] = ordered_json::array();
    for (const auto& fl : outcome.failures) {
      j["failures"].push_back({{"property", fl.property},
                               {"case", fl.case_index},
                               {"case_seed", fl.case_seed},
                               {"parameters", fl.parameters},
                               {"slack", fl.slack}});
    }
    j["passed"] = outcome.passed();
    out << j.dump(2) << "\n";
  } else if (cfg.output == "csv") {
    out << "property,checked,failed,skipped,worst_slack\n";
    for (const auto& p : outcome.properties) {
      out << p.name << "," << p.checked << "," << p.failed << "," << p.skipped << ","
          << (p.worst_slack ? csv_num(*p.worst_slack) : "") << "\n";
    }
  } else {
    out << "verify: " << cfg.cases << " cases, seed " << cfg.seed << ", m " << cfg.m << "\n";
    for (const auto& p : outcome.properties) {
      out << "  " << std::left << std::setw(14) << p.name << " checked " << std::setw(6)
          << p.checked << " failed " << std::setw(4) << p.failed << " skipped " << std::setw(4)
          << p.skipped << " worst slack " << (p.worst_slack ? num(*p.worst_slack) : "-") << "\n";
    }
    out << (outcome.passed() ? "all properties hold\n" : "PROPERTY VIOLATIONS\n");
  }
  for (const auto& fl : outcome.failures) {
    err << "violation: " << fl.property << " case " << fl.case_index << " (replay: case seed "
        << fl.case_seed << ") " << fl.parameters << " slack " << num(fl.slack) << "\n";
  }
  return outcome.passed() ? kOk : kPropertyViolation;
}

void add_common(CLI::App& sub, RunConfig& cfg, bool needs_function) {
  auto* f = sub.add_option("--f,--function", cfg.function,
                           "expression in x and y, or corpus name (xy, sumsq, expsum, absdist, "
                           "const1). Unary minus binds looser than '^': -x^2 = -(x^2)");
  if (needs_function) f->required();
  sub.add_option("--rect", cfg.rect, "rectangle a b c d")->expected(4);
  sub.add_option("--seed", cfg.seed, "seed for sampling");
  sub.add_option("--output", cfg.output, "human, json or csv")
      ->check(CLI::IsMember({"human", "json", "csv"}));
  sub.add_option("--oracle-grid", cfg.oracle_grid, "reference integrator cells per axis");
  sub.add_flag("--skip-convexity-check", cfg.skip_convexity_check,
               "do not run the sampling convexity gate");
  sub.add_option("--convexity-samples", cfg.convexity_samples, "gate samples per axis");
  sub.add_option("--convexity-tol", cfg.convexity_tol, "gate tolerance");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Certified Hermite-Hadamard enclosures of double integrals over rectangles"};
  app.name("hh_bounds");
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "point-evaluation enclosure of the double integral");
  add_common(*bounds, cfg, true);
  bounds->add_option("--n", cfg.n_text, "outer cell count");
  bounds->add_option("--m", cfg.m, "inner cell count");

  auto* chain = app.add_subcommand("chain", "five-term inequality chains with verdicts");
  add_common(*chain, cfg, true);
  chain->add_option("--m", cfg.m, "inner cell count (nested scheme)");
  chain->add_option("--scheme", cfg.scheme, "nested or quadrature")
      ->check(CLI::IsMember({"nested", "quadrature"}));
  chain->add_option("--quad-tol", cfg.quad_tol, "absolute tolerance of quadrature mode");
  chain->add_option("--tolerance", cfg.tolerance, "ordering tolerance (default relative 1e-9)");

  auto* converge = app.add_subcommand("converge", "gap versus n for n = lo, 2lo, 4lo, ... <= hi");
  add_common(*converge, cfg, true);
  converge->add_option("--n", cfg.n_text, "range lo:hi")->required();
  converge->add_option("--m", cfg.m, "inner cell count");

  auto* verify = app.add_subcommand("verify", "property suite on random convex instances");
  add_common(*verify, cfg, false);
  verify->add_option("--cases", cfg.cases, "number of random instances");
  verify->add_option("--m", cfg.m, "inner cell count");
  verify->add_flag("--inject-concave", cfg.inject_concave,
                   "test hook: make every instance concave in x");

  std::vector<const char*> argv = {"hh_bounds"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << "run with --help for usage\n";
    return kUsageError;
  }

  try {
    if (bounds->parsed()) return cmd_bounds(cfg, out);
    if (chain->parsed()) return cmd_chain(cfg, out);
    if (converge->parsed()) return cmd_converge(cfg, out);
    return cmd_verify(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const expr::ParseError& e) {
    err << e.render(cfg.function);
    return kUsageError;
  } catch (const ConvexityRejected& e) {
    print_rejection(err, e.report());
    return kConvexityRejected;
  } catch (const EvaluationError& e) {
    err << "evaluation error: " << e.what() << "\n";
    return kEvaluationError;
  } catch (const PreconditionError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsageError;
  }
}

}  // namespace hhb::cli
