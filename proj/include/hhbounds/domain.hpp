#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>

#include "hhbounds/errors.hpp"

namespace hhb {

/// Roundoff allowance used when comparing two computed bounds.
inline double tol_machine(double lhs, double rhs) {
  return 1e-12 * std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

/// Closed interval [lo, hi] with finite endpoints and lo < hi.
class Interval {
 public:
  Interval(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
      throw DomainError("interval endpoints must be finite");
    }
    if (!(lo < hi)) {
      throw DomainError("degenerate interval: lo must be strictly less than hi");
    }
  }

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double center() const noexcept { return (lo_ + hi_) / 2; }
  bool contains(double t) const noexcept { return lo_ <= t && t <= hi_; }

 private:
  double lo_;
  double hi_;
};

/// Uniform partition of an interval into n cells.
///
/// Nodes are generated independently as lo + k*(hi-lo)/n, with the last node
/// pinned to hi, so no accumulation drift can push a node outside the
/// interval.
class Partition1D {
 public:
  Partition1D(const Interval& iv, int n) : iv_(iv), n_(n) {
    if (n < 1) throw PreconditionError("partition size n must be >= 1");
  }

  int n() const noexcept { return n_; }
  double step() const noexcept { return iv_.length() / n_; }
  const Interval& interval() const noexcept { return iv_; }

  /// x_k for k = 0..n.
  double node(int k) const noexcept {
    if (k == n_) return iv_.hi();
    if (k == 0) return iv_.lo();
    return iv_.lo() + (k * iv_.length()) / n_;
  }

  /// Midpoint of cell k (k = 1..n), taken from the two bounding nodes.
  double midpoint(int k) const noexcept { return (node(k - 1) + node(k)) / 2; }

 private:
  Interval iv_;
  int n_;
};

/// Univariate black-box function.
///
/// `positive` asserts that the range lies in the positive reals; it is the
/// caller's claim and is consumed by bounds that need it.
struct Fn1D {
  std::function<double(double)> eval;
  bool positive = false;

  /// Evaluates and rejects non-finite results.
  double operator()(double t) const {
    const double v = eval(t);
    if (!std::isfinite(v)) {
      throw EvaluationError("non-finite function value at t=" + std::to_string(t), t);
    }
    return v;
  }
};

/// Integration rectangle [a, b] x [c, d].
class Rect {
 public:
  Rect(double a, double b, double c, double d) : x_(make(a, b)), y_(make(c, d)) {}

  double a() const noexcept { return x_.lo(); }
  double b() const noexcept { return x_.hi(); }
  double c() const noexcept { return y_.lo(); }
  double d() const noexcept { return y_.hi(); }
  const Interval& x_side() const noexcept { return x_; }
  const Interval& y_side() const noexcept { return y_; }
  double area() const noexcept { return x_.length() * y_.length(); }

 private:
  static Interval make(double lo, double hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
      throw DomainError("degenerate rectangle: need finite a < b and c < d");
    }
    return Interval(lo, hi);
  }

  Interval x_;
  Interval y_;
};

/// Bivariate black-box function with its partial mappings.
struct Fn2D {
  std::function<double(double, double)> eval;
  bool positive = false;
  /// Free-form description, used in reports and replay messages.
  std::string label;

  double operator()(double x, double y) const {
    const double v = eval(x, y);
    if (!std::isfinite(v)) {
      throw EvaluationError("non-finite function value at (" + std::to_string(x) + ", " +
                                std::to_string(y) + ")",
                            x, y);
    }
    return v;
  }

  /// y -> f(x, y)
  Fn1D at_x(double x) const {
    return Fn1D{[f = *this, x](double y) { return f(x, y); }, positive};
  }

  /// x -> f(x, y)
  Fn1D at_y(double y) const {
    return Fn1D{[f = *this, y](double x) { return f(x, y); }, positive};
  }
};

/// Certified enclosure lower <= integral <= upper.
struct BoundPair {
  double lower = 0;
  double upper = 0;
  int n = 1;
  std::int64_t evals = 0;

  double gap() const noexcept { return upper - lower; }
  bool consistent() const noexcept { return lower <= upper + tol_machine(lower, upper); }
};

}  // namespace hhb
