#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hhbounds/domain.hpp"

namespace hhb {

enum class Axis { X, Y };

const char* axis_name(Axis axis);

/// Worst convexity sample: along `axis`, with the other coordinate held at
/// `fixed`, the chord between u1 and u2 at weight `lambda` fell below the
/// function at (x, y).
struct ConvexityWitness {
  Axis axis = Axis::X;
  double fixed = 0;
  double u1 = 0;
  double u2 = 0;
  double lambda = 0;
  double x = 0;
  double y = 0;
};

struct ConvexityReport {
  /// Samples drawn per axis.
  int samples = 0;
  /// Smallest chord-minus-function slack observed; negative means violation.
  double max_violation = 0;
  std::optional<ConvexityWitness> witness;
  bool passed = true;
};

inline constexpr int kDefaultConvexitySamples = 10000;
inline constexpr double kDefaultConvexityTol = 1e-10;

/// Randomised test of convexity of both partial mappings.
///
/// For each axis draws `samples` tuples (fixed coordinate, u1, u2, lambda)
/// and records the slack lambda f(u1) + (1-lambda) f(u2) - f(lambda u1 +
/// (1-lambda) u2). Slacks within a few ulps of the operands are taken as 0.
/// The worst sample wins; ties keep the earlier sample (x axis first).
ConvexityReport check_coordinate_convexity(const Fn2D& f, const Rect& r,
                                           int samples = kDefaultConvexitySamples,
                                           double tol = kDefaultConvexityTol,
                                           std::uint64_t seed = 0);

/// Minimum of f over a points x points uniform grid of the rectangle.
double grid_minimum(const Fn2D& f, const Rect& r, int points = 33);

/// One-dimensional convex building block. Square is t^2, AbsShift is
/// |t - center|, Exp is exp(rate t), Affine is slope t + intercept.
struct ConvexAtomSpec {
  enum class Kind { Square, AbsShift, Exp, Affine };
  Kind kind = Kind::Square;
  double center = 0;
  double rate = 0;
  double slope = 0;
  double intercept = 0;

  double operator()(double t) const noexcept;
  std::string describe() const;
};

/// Random coordinate-convex function
///   beta + ax x + ay y + sum_i c_i g_i(x) h_i(y)
/// with c_i in [0, 2] and g_i, h_i nonnegative convex atoms on the sides of
/// `r`. `positive` is set when the affine part is positive at all four
/// corners, which makes f positive on the whole rectangle. atom_count may be
/// zero (affine only).
Fn2D random_coordinate_convex(std::uint64_t seed, const Rect& r, int atom_count);

/// Random convex univariate function beta + alpha t + sum_i c_i atom_i(t).
/// With `force_positive` the affine part is shifted to be positive on `iv`
/// and the positive flag is set.
Fn1D random_convex_1d(std::uint64_t seed, const Interval& iv, int atom_count,
                      bool force_positive);

/// A generated test instance: rectangle, atom count and function all derive
/// from `seed`.
struct ConvexInstance {
  std::uint64_t seed = 0;
  Rect rect{0, 1, 0, 1};
  int atom_count = 0;
  Fn2D f;
};

ConvexInstance random_instance(std::uint64_t seed);

/// Seed of case `index` in a suite started from `base_seed` (splitmix64).
std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index);

}  // namespace hhb
