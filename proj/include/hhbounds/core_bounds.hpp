#pragma once

#include "hhbounds/domain.hpp"

namespace hhb {

/// Composite midpoint rule h * sum_k F((x_{k-1}+x_k)/2).
///
/// For F convex on `iv` the result never exceeds the integral of F. Convexity
/// is not checked here; see check_coordinate_convexity().
double midpoint_lower(const Fn1D& f, const Interval& iv, int n);

/// Composite trapezoid rule (h/2) * [F(lo) + 2 sum_{k=1}^{n-1} F(x_k) + F(hi)].
/// An upper bound on the integral of a convex F.
double trapezoid_upper(const Fn1D& f, const Interval& iv, int n);

/// Both composite rules as an enclosure. `evals` counts the n midpoint and
/// n+1 node evaluations.
BoundPair lemma1_bounds(const Fn1D& f, const Interval& iv, int n);

/// Upper bound on integral(F) - (hi-lo)*F(t) for positive convex F.
///
/// The value is the composite trapezoid sum and does not depend on t; t is
/// validated against the interval because the bound is stated at that point.
/// Throws PreconditionError unless `f.positive` is set.
double lemma2_upper(const Fn1D& f, const Interval& iv, double t, int n);

}  // namespace hhb
