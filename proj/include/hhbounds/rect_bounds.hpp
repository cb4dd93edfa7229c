#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hhbounds/domain.hpp"
#include "hhbounds/oracle.hpp"

namespace hhb {

/// How the one-dimensional integrals inside the bound expressions are resolved.
///
/// NestedDiscrete replaces each inner integral by a composite midpoint (where
/// the integral sits on the small side of an inequality) or trapezoid sum
/// (large side) with `m` cells, so every inequality is preserved and the
/// result is certified. Quadrature uses adaptive Simpson to absolute
/// tolerance `tol`; it is diagnostic only since its error is two-sided.
class InnerScheme {
 public:
  struct NestedDiscrete {
    int m = 16;
  };
  struct Quadrature {
    double tol = 1e-10;
  };

  InnerScheme() : mode_(NestedDiscrete{}) {}

  static InnerScheme nested(int m);
  static InnerScheme quadrature(double tol);

  bool certified() const noexcept { return std::holds_alternative<NestedDiscrete>(mode_); }
  const std::variant<NestedDiscrete, Quadrature>& mode() const noexcept { return mode_; }
  std::string describe() const;

 private:
  explicit InnerScheme(std::variant<NestedDiscrete, Quadrature> mode) : mode_(mode) {}
  std::variant<NestedDiscrete, Quadrature> mode_;
};

/// Which side of an inequality an inner integral sits on.
enum class Side { Lower, Upper };

/// Integral of `g` over `iv` resolved per `scheme`; for NestedDiscrete the
/// result is <= the integral (Side::Lower) or >= it (Side::Upper) whenever g
/// is convex.
double inner_integral(const Fn1D& g, const Interval& iv, const InnerScheme& scheme, Side side);

/// Adaptive Simpson with Richardson correction to absolute tolerance `tol`.
double adaptive_simpson(const Fn1D& g, const Interval& iv, double tol);

struct ChainTerm {
  std::string name;
  double value = 0;
};

struct ChainOrdering {
  std::size_t i = 0;
  std::size_t j = 0;
  bool satisfied = false;
  /// value_j - value_i
  double slack = 0;
};

/// Ordered chain of terms with a verdict for every adjacent pair.
struct ChainReport {
  std::vector<ChainTerm> terms;
  std::vector<ChainOrdering> orderings;
  double tolerance = 0;
  bool certified = true;

  bool all_satisfied() const;
  double value(const std::string& name) const;
};

/// Builds a ChainReport from terms; tolerance <= 0 selects the default
/// 1e-9 * max(1, max |term|).
ChainReport make_chain(std::vector<ChainTerm> terms, double tolerance, bool certified);

struct ChainOptions {
  /// Grid for the double-integral term (see reference_integral_2d).
  int oracle_grid = kDefaultOracleGrid;
  /// Use this value for the double-integral term instead of running the oracle.
  std::optional<double> known_integral;
  /// <= 0 selects the default tolerance.
  double tolerance = 0;
};

/// Three-term chain lower_sum <= double_integral <= upper_sum for cell count n.
///
/// All chain terms here and in the five-term chains are reported on the
/// scale of the double integral (the averaged forms multiplied by the area).
ChainReport theorem3_terms(const Fn2D& f, const Rect& r, int n, const InnerScheme& scheme,
                           const ChainOptions& opts = {});

/// Enclosure of the double integral from point evaluations only: inner
/// integrals of the lower sum use the midpoint rule and those of the upper
/// sum the trapezoid rule, both with m cells.
BoundPair theorem3_discrete_bounds(const Fn2D& f, const Rect& r, int n, int m);

struct InequalitySides {
  double lhs = 0;
  double rhs = 0;
};

/// Midline midpoint sums against the scaled midline integrals; lhs <= rhs.
InequalitySides theorem4_terms(const Fn2D& f, const Rect& r, int n, const InnerScheme& scheme);

/// Scaled boundary integrals against the boundary trapezoid sums; lhs <= rhs.
InequalitySides theorem5_terms(const Fn2D& f, const Rect& r, int n, const InnerScheme& scheme);

/// Upper bound on the double integral for positive coordinate-convex f.
///
/// Throws PreconditionError if `f.positive` is unset or if a 33x33 spot check
/// of the rectangle finds a negative value.
double theorem6_upper(const Fn2D& f, const Rect& r, int n, const InnerScheme& scheme);

/// Five-term chain: center, midline mean, double integral, boundary mean,
/// corner mean.
ChainReport dragomir_chain(const Fn2D& f, const Rect& r, const InnerScheme& scheme,
                           const ChainOptions& opts = {});

/// Refined five-term chain: the last two terms mix in midline and center
/// values.
ChainReport bakula_chain(const Fn2D& f, const Rect& r, const InnerScheme& scheme,
                         const ChainOptions& opts = {});

}  // namespace hhb
