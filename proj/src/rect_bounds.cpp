#include "hhbounds/rect_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hhbounds/convexity.hpp"
#include "hhbounds/parallel.hpp"

namespace hhb {

bool ChainReport::all_satisfied() const {
  return std::all_of(orderings.begin(), orderings.end(),
                     [](const ChainOrdering& o) { return o.satisfied; });
}

double ChainReport::value(const std::string& name) const {
  for (const auto& t : terms) {
    if (t.name == name) return t.value;
  }
  throw std::out_of_range("no chain term named " + name);
}

ChainReport make_chain(std::vector<ChainTerm> terms, double tolerance, bool certified) {
  ChainReport report;
  report.terms = std::move(terms);
  report.certified = certified;
  if (tolerance > 0) {
    report.tolerance = tolerance;
  } else {
    double scale = 1;
    for (const auto& t : report.terms) scale = std::max(scale, std::abs(t.value));
    report.tolerance = 1e-9 * scale;
  }
  for (std::size_t i = 0; i + 1 < report.terms.size(); ++i) {
    const double slack = report.terms[i + 1].value - report.terms[i].value;
    report.orderings.push_back({i, i + 1, slack >= -report.tolerance, slack});
  }
  return report;
}

namespace {

void require_n(int n) {
  if (n < 1) throw PreconditionError("cell count n must be >= 1");
}

// Sum of integral_{side} f(., fixed_k) over a list of fixed coordinates,
// evaluated per index and reduced in index order.
double sum_of_line_integrals(const Fn2D& f, const std::vector<double>& fixed, Axis free_axis,
                             const Interval& side, const InnerScheme& scheme, Side s) {
  std::vector<double> parts(fixed.size());
  parallel_for(fixed.size(), [&](std::size_t k) {
    const Fn1D line = free_axis == Axis::X ? f.at_y(fixed[k]) : f.at_x(fixed[k]);
    parts[k] = inner_integral(line, side, scheme, s);
  });
  double total = 0;
  for (double p : parts) total += p;
  return total;
}

std::vector<double> cell_midpoints(const Partition1D& part) {
  std::vector<double> out;
  out.reserve(part.n());
  for (int k = 1; k <= part.n(); ++k) out.push_back(part.midpoint(k));
  return out;
}

std::vector<double> interior_nodes(const Partition1D& part) {
  std::vector<double> out;
  for (int k = 1; k < part.n(); ++k) out.push_back(part.node(k));
  return out;
}

struct Theorem3Sides {
  double lower = 0;
  double upper = 0;
};

Theorem3Sides theorem3_sides(const Fn2D& f, const Rect& r, int n, const InnerScheme& scheme) {
  require_n(n);
  const Partition1D px(r.x_side(), n);
  const Partition1D py(r.y_side(), n);
  const double wx = r.x_side().length();
  const double wy = r.y_side().length();

  Theorem3Sides out;
  // integrals along x at the y-cell midpoints, and along y at the x-cell midpoints
  const double lower_x = sum_of_line_integrals(f, cell_midpoints(py), Axis::X, r.x_side(),
                                               scheme, Side::Lower);
  const double lower_y = sum_of_line_integrals(f, cell_midpoints(px), Axis::Y, r.y_side(),
                                               scheme, Side::Lower);
  out.lower = wy / (2 * n) * lower_x + wx / (2 * n) * lower_y;

  const double edges_x = sum_of_line_integrals(f, {r.c(), r.d()}, Axis::X, r.x_side(), scheme,
                                               Side::Upper);
  const double edges_y = sum_of_line_integrals(f, {r.a(), r.b()}, Axis::Y, r.y_side(), scheme,
                                               Side::Upper);
  const double inner_x = sum_of_line_integrals(f, interior_nodes(py), Axis::X, r.x_side(),
                                               scheme, Side::Upper);
  const double inner_y = sum_of_line_integrals(f, interior_nodes(px), Axis::Y, r.y_side(),
                                               scheme, Side::Upper);
  out.upper = wy / (4 * n) * edges_x + wx / (4 * n) * edges_y + wy / (2 * n) * inner_x +
              wx / (2 * n) * inner_y;
  return out;
}

double double_integral(const Fn2D& f, const Rect& r, const ChainOptions& opts) {
  if (opts.known_integral) return *opts.known_integral;
  return reference_integral_2d(f, r, opts.oracle_grid).value;
}

}  // namespace

ChainReport theorem3_terms(const Fn2D& f, const Rect& r, int n, const InnerScheme& scheme,
                           const ChainOptions& opts) {
  const Theorem3Sides sides = theorem3_sides(f, r, n, scheme);
  return make_chain({{"lower_sum", sides.lower},
                     {"double_integral", double_integral(f, r, opts)},
                     {"upper_sum", sides.upper}},
                    opts.tolerance, scheme.certified());
}

BoundPair theorem3_discrete_bounds(const Fn2D& f, const Rect& r, int n, int m) {
  const Theorem3Sides sides = theorem3_sides(f, r, n, InnerScheme::nested(m));
  BoundPair out;
  out.lower = sides.lower;
  out.upper = sides.upper;
  out.n = n;
  // lower: 2n midpoint sums of m points; upper: 2(n+1) trapezoid sums of m+1 points
  out.evals = 2 * static_cast<std::int64_t>(n) * m + 2 * static_cast<std::int64_t>(n + 1) * (m + 1);
  return out;
}

InequalitySides theorem4_terms(const Fn2D& f, const Rect& r, int n, const InnerScheme& scheme) {
  require_n(n);
  const Partition1D px(r.x_side(), n);
  const Partition1D py(r.y_side(), n);
  const double xm = r.x_side().center();
  const double ym = r.y_side().center();

  InequalitySides out;
  double lhs = 0;
  for (int k = 1; k <= n; ++k) lhs += f(xm, py.midpoint(k));
  for (int k = 1; k <= n; ++k) lhs += f(px.midpoint(k), ym);
  out.lhs = lhs;

  const double along_y = inner_integral(f.at_x(xm), r.y_side(), scheme, Side::Upper);
  const double along_x = inner_integral(f.at_y(ym), r.x_side(), scheme, Side::Upper);
  out.rhs = n / r.y_side().length() * along_y + n / r.x_side().length() * along_x;
  return out;
}

InequalitySides theorem5_terms(const Fn2D& f, const Rect& r, int n, const InnerScheme& scheme) {
  require_n(n);
  const Partition1D px(r.x_side(), n);
  const Partition1D py(r.y_side(), n);

  InequalitySides out;
  const double edges_y = sum_of_line_integrals(f, {r.a(), r.b()}, Axis::Y, r.y_side(), scheme,
                                               Side::Lower);
  const double edges_x = sum_of_line_integrals(f, {r.c(), r.d()}, Axis::X, r.x_side(), scheme,
                                               Side::Lower);
  out.lhs = n / r.y_side().length() * edges_y + n / r.x_side().length() * edges_x;

  double rhs = f(r.a(), r.c()) + f(r.a(), r.d()) + f(r.b(), r.c()) + f(r.b(), r.d());
  for (int k = 1; k < n; ++k) {
    rhs += f(r.a(), py.node(k)) + f(r.b(), py.node(k)) + f(px.node(k), r.c()) +
           f(px.node(k), r.d());
  }
  out.rhs = rhs;
  return out;
}

double theorem6_upper(const Fn2D& f, const Rect& r, int n, const InnerScheme& scheme) {
  require_n(n);
  if (!f.positive) {
    throw PreconditionError("bound requires a positive function (positive flag not set)");
  }
  if (grid_minimum(f, r) < 0) {
    throw PreconditionError("positive flag set but the function is negative on the grid");
  }
  const Partition1D px(r.x_side(), n);
  const Partition1D py(r.y_side(), n);
  const double wx = r.x_side().length();
  const double wy = r.y_side().length();

  const double left = inner_integral(f.at_x(r.a()), r.y_side(), scheme, Side::Upper);
  const double right = inner_integral(f.at_x(r.b()), r.y_side(), scheme, Side::Upper);
  const double cols = sum_of_line_integrals(f, interior_nodes(px), Axis::Y, r.y_side(), scheme,
                                            Side::Upper);
  const double bottom = inner_integral(f.at_y(r.c()), r.x_side(), scheme, Side::Upper);
  const double top = inner_integral(f.at_y(r.d()), r.x_side(), scheme, Side::Upper);
  const double rows = sum_of_line_integrals(f, interior_nodes(py), Axis::X, r.x_side(), scheme,
                                            Side::Upper);

  return wx / (4 * n) * ((n + 1) * left + (n + 1) * right + 2 * cols) +
         wy / (4 * n) * ((n + 1) * bottom + (n + 1) * top + 2 * rows);
}

namespace {

struct CommonTerms {
  double center = 0;
  double midline_mean = 0;
  double integral = 0;
};

CommonTerms common_terms(const Fn2D& f, const Rect& r, const InnerScheme& scheme,
                         const ChainOptions& opts) {
  const double xm = r.x_side().center();
  const double ym = r.y_side().center();
  const double wx = r.x_side().length();
  const double wy = r.y_side().length();
  CommonTerms out;
  out.center = r.area() * f(xm, ym);
  const double along_x = inner_integral(f.at_y(ym), r.x_side(), scheme, Side::Lower);
  const double along_y = inner_integral(f.at_x(xm), r.y_side(), scheme, Side::Lower);
  out.midline_mean = (wy * along_x + wx * along_y) / 2;
  out.integral = double_integral(f, r, opts);
  return out;
}

}  // namespace

ChainReport dragomir_chain(const Fn2D& f, const Rect& r, const InnerScheme& scheme,
                           const ChainOptions& opts) {
  const CommonTerms common = common_terms(f, r, scheme, opts);
  const double wx = r.x_side().length();
  const double wy = r.y_side().length();

  const double edges_x = sum_of_line_integrals(f, {r.c(), r.d()}, Axis::X, r.x_side(), scheme,
                                               Side::Upper);
  const double edges_y = sum_of_line_integrals(f, {r.a(), r.b()}, Axis::Y, r.y_side(), scheme,
                                               Side::Upper);
  const double boundary_mean = wy / 4 * edges_x + wx / 4 * edges_y;
  const double corners = f(r.a(), r.c()) + f(r.a(), r.d()) + f(r.b(), r.c()) + f(r.b(), r.d());

  return make_chain({{"center", common.center},
                     {"midline_mean", common.midline_mean},
                     {"double_integral", common.integral},
                     {"boundary_mean", boundary_mean},
                     {"corner_mean", r.area() * corners / 4}},
                    opts.tolerance, scheme.certified());
}

ChainReport bakula_chain(const Fn2D& f, const Rect& r, const InnerScheme& scheme,
                         const ChainOptions& opts) {
  const CommonTerms common = common_terms(f, r, scheme, opts);
  const double wx = r.x_side().length();
  const double wy = r.y_side().length();
  const double xm = r.x_side().center();
  const double ym = r.y_side().center();

  // f(x,c) + f(x,d) + 2 f(x,ym) along x, and the transposed combination along y
  const double lines_x = sum_of_line_integrals(f, {r.c(), r.d(), ym, ym}, Axis::X, r.x_side(),
                                               scheme, Side::Upper);
  const double lines_y = sum_of_line_integrals(f, {r.a(), r.b(), xm, xm}, Axis::Y, r.y_side(),
                                               scheme, Side::Upper);
  const double refined_boundary = wy / 8 * lines_x + wx / 8 * lines_y;

  const double corners = f(r.a(), r.c()) + f(r.a(), r.d()) + f(r.b(), r.c()) + f(r.b(), r.d());
  const double edge_mids = f(xm, r.c()) + f(xm, r.d()) + f(r.a(), ym) + f(r.b(), ym);
  const double refined_corner = corners / 16 + f(xm, ym) / 4 + edge_mids / 8;

  return make_chain({{"center", common.center},
                     {"midline_mean", common.midline_mean},
                     {"double_integral", common.integral},
                     {"refined_boundary_mean", refined_boundary},
                     {"refined_corner_mean", r.area() * refined_corner}},
                    opts.tolerance, scheme.certified());
}

}  // namespace hhb
