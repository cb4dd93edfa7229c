#pragma once

#include "hhbounds/domain.hpp"

namespace hhb {

/// Reference integral with a Richardson-style error estimate.
struct OracleResult {
  double value = 0;
  /// |S(grid) - S(grid/2)| / 15
  double error_estimate = 0;
  int grid = 0;
};

inline constexpr int kDefaultOracleGrid = 1024;

/// Composite Simpson on `grid` subintervals, compared against `grid/2`.
/// `grid` must be a power of two >= 64.
OracleResult reference_integral_1d(const Fn1D& f, const Interval& iv,
                                   int grid = kDefaultOracleGrid);

/// Tensor-product composite Simpson over the rectangle with `grid` cells per
/// axis. Row sums may run in parallel; they are reduced in row order.
OracleResult reference_integral_2d(const Fn2D& f, const Rect& r, int grid = kDefaultOracleGrid);

}  // namespace hhb
