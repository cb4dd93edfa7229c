#include "verify_suite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "hhbounds/oracle.hpp"
#include "hhbounds/parallel.hpp"
#include "hhbounds/rect_bounds.hpp"

namespace hhb::cli {
namespace {

constexpr double kRelTol = 1e-9;
constexpr double kIdentityTol = 1e-12;
constexpr int kMaxN = 8;
constexpr std::array<int, 3> kInnerCells = {1, 2, 4};

enum PropertyIndex {
  kEnclosure,
  kTheorem4,
  kTheorem5,
  kTheorem6,
  kRecapture,
  kTightening,
  kPropertyCount
};

const std::array<const char*, kPropertyCount> kPropertyNames = {
    "enclosure", "theorem4", "theorem5", "theorem6", "n1_recapture", "tightening"};

struct CaseResult {
  std::array<PropertyTally, kPropertyCount> tallies;
  std::vector<PropertyFailure> failures;
  std::optional<GateRejection> rejected;
};

std::string rect_text(const Rect& r) {
  std::ostringstream out;
  out.precision(17);
  out << "[" << r.a() << ", " << r.b() << "] x [" << r.c() << ", " << r.d() << "]";
  return out.str();
}

class CaseChecker {
 public:
  CaseChecker(CaseResult& result, int index, std::uint64_t seed, const Rect& rect)
      : result_(result), index_(index), seed_(seed), rect_(rect) {}

  // slack is already normalised; failure when slack < -tol
  void record(PropertyIndex p, double slack, double tol, const std::string& params) {
    PropertyTally& t = result_.tallies[p];
    ++t.checked;
    if (!t.worst_slack || slack < *t.worst_slack) t.worst_slack = slack;
    if (slack < -tol) {
      ++t.failed;
      result_.failures.push_back(
          {kPropertyNames[p], index_, seed_, "rect=" + rect_text(rect_) + " " + params, slack});
    }
  }

  void skip(PropertyIndex p) { ++result_.tallies[p].skipped; }

 private:
  CaseResult& result_;
  int index_;
  std::uint64_t seed_;
  Rect rect_;
};

double scale(double v) { return std::max(1.0, std::abs(v)); }

std::string params(int n, int m) {
  return "n=" + std::to_string(n) + " m=" + std::to_string(m);
}

CaseResult run_case(const VerifyConfig& cfg, int index) {
  CaseResult result;
  for (int p = 0; p < kPropertyCount; ++p) result.tallies[p].name = kPropertyNames[p];

  const std::uint64_t case_seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(index));
  ConvexInstance inst = random_instance(case_seed);
  Fn2D f = inst.f;
  const Rect& r = inst.rect;
  if (cfg.inject_concave) {
    const double xm = r.x_side().center();
    f.eval = [g = inst.f.eval, xm](double x, double y) {
      return g(x, y) - 1e6 * (x - xm) * (x - xm);
    };
    f.label = "concave-injected " + inst.f.label;
    f.positive = false;
  }

  const ConvexityReport gate =
      check_coordinate_convexity(f, r, cfg.convexity_samples, cfg.convexity_tol, case_seed);
  if (!gate.passed) {
    result.rejected = GateRejection{index, case_seed, f.label, gate};
    return result;
  }

  CaseChecker check(result, index, case_seed, r);
  const OracleResult oracle = reference_integral_2d(f, r, cfg.oracle_grid);
  const double integral = oracle.value;
  const InnerScheme scheme = InnerScheme::nested(cfg.m);

  for (int n = 1; n <= kMaxN; ++n) {
    for (int m : kInnerCells) {
      const BoundPair bp = theorem3_discrete_bounds(f, r, n, m);
      // an oracle that cannot resolve the enclosure gap cannot judge it
      if (oracle.error_estimate > 1e-3 * bp.gap() &&
          oracle.error_estimate > 1e-12 * scale(integral)) {
        check.skip(kEnclosure);
        continue;
      }
      const double slack = std::min(integral - bp.lower, bp.upper - integral) / scale(integral);
      check.record(kEnclosure, slack, kRelTol, params(n, m));
    }

    const InequalitySides t4 = theorem4_terms(f, r, n, scheme);
    check.record(kTheorem4, (t4.rhs - t4.lhs) / scale(t4.rhs), kRelTol, params(n, cfg.m));

    const InequalitySides t5 = theorem5_terms(f, r, n, scheme);
    check.record(kTheorem5, (t5.rhs - t5.lhs) / scale(t5.rhs), kRelTol, params(n, cfg.m));

    if (f.positive) {
      const double bound = theorem6_upper(f, r, n, scheme);
      check.record(kTheorem6, (bound - integral) / scale(bound), kRelTol, params(n, cfg.m));
    }
  }

  ChainOptions opts;
  opts.known_integral = integral;
  const ChainReport dragomir = dragomir_chain(f, r, scheme, opts);
  const ChainReport bakula = bakula_chain(f, r, scheme, opts);

  // n = 1 versions of the three generalised results against the five-term chain
  const ChainReport t3 = theorem3_terms(f, r, 1, scheme, opts);
  const InequalitySides t4 = theorem4_terms(f, r, 1, scheme);
  const InequalitySides t5 = theorem5_terms(f, r, 1, scheme);
  const std::array<std::pair<double, double>, 5> identities = {{
      {r.area() * t4.lhs / 2, dragomir.terms[0].value},
      {t3.terms[0].value, dragomir.terms[1].value},
      {t3.terms[1].value, dragomir.terms[2].value},
      {t3.terms[2].value, dragomir.terms[3].value},
      {r.area() * t5.rhs / 4, dragomir.terms[4].value},
  }};
  for (std::size_t i = 0; i < identities.size(); ++i) {
    const auto [assembled, direct] = identities[i];
    const double rel = std::abs(assembled - direct) / std::max(scale(assembled), std::abs(direct));
    check.record(kRecapture, -rel, kIdentityTol, "term=" + dragomir.terms[i].name);
  }

  for (std::size_t i : {std::size_t{3}, std::size_t{4}}) {
    const double d = dragomir.terms[i].value;
    const double b = bakula.terms[i].value;
    check.record(kTightening, (d - b) / scale(d), 1e-12, "term=" + dragomir.terms[i].name);
  }
  return result;
}

}  // namespace

VerifyOutcome run_verify(const VerifyConfig& cfg) {
  std::vector<CaseResult> results(static_cast<std::size_t>(std::max(cfg.cases, 0)));
  parallel_for(results.size(),
               [&](std::size_t i) { results[i] = run_case(cfg, static_cast<int>(i)); });

  VerifyOutcome outcome;
  outcome.properties.resize(kPropertyCount);
  for (int p = 0; p < kPropertyCount; ++p) outcome.properties[p].name = kPropertyNames[p];
  for (auto& res : results) {
    if (res.rejected) {
      outcome.rejected = res.rejected;
      break;
    }
    for (int p = 0; p < kPropertyCount; ++p) {
      PropertyTally& total = outcome.properties[p];
      const PropertyTally& part = res.tallies[p];
      total.checked += part.checked;
      total.failed += part.failed;
      total.skipped += part.skipped;
      if (part.worst_slack && (!total.worst_slack || *part.worst_slack < *total.worst_slack)) {
        total.worst_slack = part.worst_slack;
      }
    }
    for (auto& fail : res.failures) outcome.failures.push_back(std::move(fail));
  }
  return outcome;
}

}  // namespace hhb::cli
