#include "hhbounds/core_bounds.hpp"

namespace hhb {

double midpoint_lower(const Fn1D& f, const Interval& iv, int n) {
  const Partition1D part(iv, n);
  double sum = 0;
  for (int k = 1; k <= n; ++k) sum += f(part.midpoint(k));
  return part.step() * sum;
}

double trapezoid_upper(const Fn1D& f, const Interval& iv, int n) {
  const Partition1D part(iv, n);
  double interior = 0;
  for (int k = 1; k < n; ++k) interior += f(part.node(k));
  return part.step() / 2 * (f(iv.lo()) + 2 * interior + f(iv.hi()));
}

BoundPair lemma1_bounds(const Fn1D& f, const Interval& iv, int n) {
  BoundPair out;
  out.lower = midpoint_lower(f, iv, n);
  out.upper = trapezoid_upper(f, iv, n);
  out.n = n;
  out.evals = 2 * static_cast<std::int64_t>(n) + 1;
  return out;
}

double lemma2_upper(const Fn1D& f, const Interval& iv, double t, int n) {
  if (!std::isfinite(t) || !iv.contains(t)) {
    throw DomainError("instantiation point t lies outside the interval");
  }
  if (!f.positive) {
    throw PreconditionError("bound requires a positive function (positive flag not set)");
  }
  return trapezoid_upper(f, iv, n);
}

}  // namespace hhb
