#include <cmath>
#include <limits>
#include <sstream>

#include "hhbounds/core_bounds.hpp"
#include "hhbounds/rect_bounds.hpp"

namespace hhb {

InnerScheme InnerScheme::nested(int m) {
  if (m < 1) throw PreconditionError("NestedDiscrete requires m >= 1");
  return InnerScheme(NestedDiscrete{m});
}

InnerScheme InnerScheme::quadrature(double tol) {
  if (!(tol > 0) || !std::isfinite(tol)) {
    throw PreconditionError("Quadrature requires a finite tolerance > 0");
  }
  return InnerScheme(Quadrature{tol});
}

std::string InnerScheme::describe() const {
  std::ostringstream out;
  if (const auto* nd = std::get_if<NestedDiscrete>(&mode_)) {
    out << "nested-discrete(m=" << nd->m << ")";
  } else {
    out << "quadrature(tol=" << std::get<Quadrature>(mode_).tol
        << ", diagnostic, not certified)";
  }
  return out.str();
}

namespace {

constexpr int kInitialPanels = 8;
constexpr int kMaxDepth = 40;

struct Panel {
  double a, b;
  double fa, fm, fb;
  double whole;
};

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6 * (fa + 4 * fm + fb);
}

double refine(const Fn1D& g, const Panel& p, double eps, int depth) {
  const double m = (p.a + p.b) / 2;
  const double lm = (p.a + m) / 2;
  const double rm = (m + p.b) / 2;
  const double flm = g(lm);
  const double frm = g(rm);
  const double left = simpson(p.a, m, p.fa, flm, p.fm);
  const double right = simpson(m, p.b, p.fm, frm, p.fb);
  const double delta = left + right - p.whole;
  const double floor = 64 * std::numeric_limits<double>::epsilon() * std::abs(left + right);
  if (depth >= kMaxDepth || std::abs(delta) <= 15 * std::max(eps, floor)) {
    return left + right + delta / 15;
  }
  return refine(g, {p.a, m, p.fa, flm, p.fm, left}, eps / 2, depth + 1) +
         refine(g, {m, p.b, p.fm, frm, p.fb, right}, eps / 2, depth + 1);
}

}  // namespace

double adaptive_simpson(const Fn1D& g, const Interval& iv, double tol) {
  if (!(tol > 0)) throw PreconditionError("adaptive_simpson requires tol > 0");
  const Partition1D panels(iv, kInitialPanels);
  double total = 0;
  double fa = g(iv.lo());
  for (int k = 1; k <= kInitialPanels; ++k) {
    const double a = panels.node(k - 1);
    const double b = panels.node(k);
    const double fm = g(panels.midpoint(k));
    const double fb = g(b);
    total += refine(g, {a, b, fa, fm, fb, simpson(a, b, fa, fm, fb)}, tol / kInitialPanels, 0);
    fa = fb;
  }
  return total;
}

double inner_integral(const Fn1D& g, const Interval& iv, const InnerScheme& scheme, Side side) {
  if (const auto* nd = std::get_if<InnerScheme::NestedDiscrete>(&scheme.mode())) {
    return side == Side::Lower ? midpoint_lower(g, iv, nd->m) : trapezoid_upper(g, iv, nd->m);
  }
  return adaptive_simpson(g, iv, std::get<InnerScheme::Quadrature>(scheme.mode()).tol);
}

}  // namespace hhb
