#include "hhbounds/oracle.hpp"

#include <cmath>
#include <vector>

#include "hhbounds/parallel.hpp"

namespace hhb {
namespace {

// Neumaier compensated accumulator. The reference integrators deliberately
// share no summation code with the bound routines they are used to check.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0;
  double comp_ = 0;
};

void require_grid(int grid) {
  if (grid < 64 || (grid & (grid - 1)) != 0) {
    throw DomainError("oracle grid must be a power of two >= 64");
  }
}

// Simpson weight pattern 1,4,2,4,...,2,4,1 (without the h/3 factor).
double simpson_weight(int i, int cells) noexcept {
  if (i == 0 || i == cells) return 1;
  return (i % 2 == 1) ? 4 : 2;
}

double grid_node(double lo, double hi, int i, int cells) noexcept {
  if (i == cells) return hi;
  return lo + (static_cast<double>(i) * (hi - lo)) / cells;
}

struct SimpsonPair {
  double fine = 0;
  double coarse = 0;
};

// Weighted sums over one line of samples: all nodes at `cells`, and the even
// nodes as the coarse grid with `cells/2` cells.
SimpsonPair line_sums(const std::vector<double>& values, int cells) {
  CompensatedSum fine;
  CompensatedSum coarse;
  for (int i = 0; i <= cells; ++i) {
    fine.add(simpson_weight(i, cells) * values[i]);
    if (i % 2 == 0) coarse.add(simpson_weight(i / 2, cells / 2) * values[i]);
  }
  return {fine.value(), coarse.value()};
}

}  // namespace

OracleResult reference_integral_1d(const Fn1D& f, const Interval& iv, int grid) {
  require_grid(grid);
  std::vector<double> values(grid + 1);
  for (int i = 0; i <= grid; ++i) values[i] = f(grid_node(iv.lo(), iv.hi(), i, grid));

  const SimpsonPair sums = line_sums(values, grid);
  const double h = iv.length() / grid;
  const double fine = sums.fine * h / 3;
  const double coarse = sums.coarse * (2 * h) / 3;
  return {fine, std::abs(fine - coarse) / 15, grid};
}

OracleResult reference_integral_2d(const Fn2D& f, const Rect& r, int grid) {
  require_grid(grid);
  const int cells = grid;
  std::vector<SimpsonPair> rows(cells + 1);

  parallel_for(rows.size(), [&](std::size_t idx) {
    const int i = static_cast<int>(idx);
    const double x = grid_node(r.a(), r.b(), i, cells);
    std::vector<double> values(cells + 1);
    for (int j = 0; j <= cells; ++j) values[j] = f(x, grid_node(r.c(), r.d(), j, cells));
    rows[idx] = line_sums(values, cells);
  });

  CompensatedSum fine;
  CompensatedSum coarse;
  for (int i = 0; i <= cells; ++i) {
    fine.add(simpson_weight(i, cells) * rows[i].fine);
    if (i % 2 == 0) coarse.add(simpson_weight(i / 2, cells / 2) * rows[i].coarse);
  }

  const double hx = r.x_side().length() / cells;
  const double hy = r.y_side().length() / cells;
  const double fine_value = fine.value() * (hx / 3) * (hy / 3);
  const double coarse_value = coarse.value() * (2 * hx / 3) * (2 * hy / 3);
  return {fine_value, std::abs(fine_value - coarse_value) / 15, grid};
}

}  // namespace hhb
