#include "hhbounds/convexity.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <random>
#include <sstream>

namespace hhb {

const char* axis_name(Axis axis) { return axis == Axis::X ? "x" : "y"; }

namespace {

// Uniform draws built directly on mt19937_64 output so sequences are the same
// on every standard library.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(engine_() % (hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

double clamp_to(const Interval& iv, double t) { return std::min(iv.hi(), std::max(iv.lo(), t)); }

}  // namespace

ConvexityReport check_coordinate_convexity(const Fn2D& f, const Rect& r, int samples, double tol,
                                           std::uint64_t seed) {
  if (samples < 1) throw PreconditionError("convexity check needs samples >= 1");
  if (!(tol >= 0)) throw PreconditionError("convexity tolerance must be >= 0");

  constexpr double kUlps = 8 * std::numeric_limits<double>::epsilon();
  Sampler rng(seed);
  ConvexityReport report;
  report.samples = samples;
  report.max_violation = std::numeric_limits<double>::infinity();

  for (Axis axis : {Axis::X, Axis::Y}) {
    const Interval& free_side = axis == Axis::X ? r.x_side() : r.y_side();
    const Interval& fixed_side = axis == Axis::X ? r.y_side() : r.x_side();
    auto eval = [&](double u, double fixed) { return axis == Axis::X ? f(u, fixed) : f(fixed, u); };

    for (int s = 0; s < samples; ++s) {
      const double fixed = rng.uniform(fixed_side.lo(), fixed_side.hi());
      const double u1 = rng.uniform(free_side.lo(), free_side.hi());
      const double u2 = rng.uniform(free_side.lo(), free_side.hi());
      const double lambda = rng.unit();
      const double u = clamp_to(free_side, lambda * u1 + (1 - lambda) * u2);

      const double f1 = eval(u1, fixed);
      const double f2 = eval(u2, fixed);
      const double fu = eval(u, fixed);
      double slack = lambda * f1 + (1 - lambda) * f2 - fu;
      const double noise = kUlps * (std::abs(lambda * f1) + std::abs((1 - lambda) * f2) + std::abs(fu));
      if (std::abs(slack) <= noise) slack = 0;

      if (slack < report.max_violation) {
        report.max_violation = slack;
        if (slack < 0) {
          ConvexityWitness w{axis, fixed, u1, u2, lambda, 0, 0};
          w.x = axis == Axis::X ? u : fixed;
          w.y = axis == Axis::X ? fixed : u;
          report.witness = w;
        }
      }
    }
  }
  report.passed = report.max_violation >= -tol;
  return report;
}

double grid_minimum(const Fn2D& f, const Rect& r, int points) {
  if (points < 2) throw PreconditionError("grid_minimum needs at least 2 points per axis");
  const Partition1D px(r.x_side(), points - 1);
  const Partition1D py(r.y_side(), points - 1);
  double lowest = std::numeric_limits<double>::infinity();
  for (int i = 0; i < points; ++i) {
    for (int j = 0; j < points; ++j) lowest = std::min(lowest, f(px.node(i), py.node(j)));
  }
  return lowest;
}

double ConvexAtomSpec::operator()(double t) const noexcept {
  switch (kind) {
    case Kind::Square:
      return t * t;
    case Kind::AbsShift:
      return std::abs(t - center);
    case Kind::Exp:
      return std::exp(rate * t);
    case Kind::Affine:
      return slope * t + intercept;
  }
  return 0;
}

std::string ConvexAtomSpec::describe() const {
  std::ostringstream out;
  out.precision(17);
  switch (kind) {
    case Kind::Square:
      out << "sq";
      break;
    case Kind::AbsShift:
      out << "abs(" << center << ")";
      break;
    case Kind::Exp:
      out << "exp(" << rate << ")";
      break;
    case Kind::Affine:
      out << "affine(" << slope << "," << intercept << ")";
      break;
  }
  return out.str();
}

namespace {

// An atom that is convex and nonnegative on `side`.
ConvexAtomSpec draw_atom(Sampler& rng, const Interval& side) {
  ConvexAtomSpec atom;
  switch (rng.integer(0, 3)) {
    case 0:
      atom.kind = ConvexAtomSpec::Kind::Square;
      break;
    case 1:
      atom.kind = ConvexAtomSpec::Kind::AbsShift;
      atom.center = rng.uniform(side.lo(), side.hi());
      break;
    case 2:
      atom.kind = ConvexAtomSpec::Kind::Exp;
      atom.rate = rng.uniform(-1.5, 1.5);
      break;
    default: {
      atom.kind = ConvexAtomSpec::Kind::Affine;
      atom.slope = rng.uniform(-1, 1);
      const double lowest = std::min(atom.slope * side.lo(), atom.slope * side.hi());
      atom.intercept = -lowest + rng.uniform(0, 1);
      break;
    }
  }
  return atom;
}

struct ProductTerm {
  double weight;
  ConvexAtomSpec gx;
  ConvexAtomSpec hy;
};

struct GeneratedSurface {
  double beta = 0;
  double ax = 0;
  double ay = 0;
  std::vector<ProductTerm> products;

  double operator()(double x, double y) const noexcept {
    double v = beta + ax * x + ay * y;
    for (const auto& p : products) v += p.weight * p.gx(x) * p.hy(y);
    return v;
  }
};

std::string describe_surface(std::uint64_t seed, const GeneratedSurface& s) {
  std::ostringstream out;
  out.precision(17);
  out << "random_coordinate_convex(seed=" << seed << "): " << s.beta << " + " << s.ax << "*x + "
      << s.ay << "*y";
  for (const auto& p : s.products) {
    out << " + " << p.weight << "*" << p.gx.describe() << "[x]*" << p.hy.describe() << "[y]";
  }
  return out.str();
}

}  // namespace

Fn2D random_coordinate_convex(std::uint64_t seed, const Rect& r, int atom_count) {
  if (atom_count < 0) throw PreconditionError("atom_count must be >= 0");
  Sampler rng(seed);
  auto surface = std::make_shared<GeneratedSurface>();
  surface->ax = rng.uniform(-1, 1);
  surface->ay = rng.uniform(-1, 1);
  surface->beta = rng.uniform(-0.5, 2.5);
  for (int i = 0; i < atom_count; ++i) {
    ProductTerm term;
    term.weight = rng.uniform(0, 2);
    term.gx = draw_atom(rng, r.x_side());
    term.hy = draw_atom(rng, r.y_side());
    surface->products.push_back(term);
  }

  const auto& s = *surface;
  const double affine_min = s.beta + std::min(s.ax * r.a(), s.ax * r.b()) +
                            std::min(s.ay * r.c(), s.ay * r.d());

  Fn2D f;
  f.label = describe_surface(seed, s);
  f.positive = affine_min > 0;
  f.eval = [surface](double x, double y) { return (*surface)(x, y); };
  return f;
}

Fn1D random_convex_1d(std::uint64_t seed, const Interval& iv, int atom_count,
                      bool force_positive) {
  if (atom_count < 0) throw PreconditionError("atom_count must be >= 0");
  Sampler rng(seed);
  const double alpha = rng.uniform(-1, 1);
  double beta = rng.uniform(-0.5, 1.5);
  const double affine_min = beta + std::min(alpha * iv.lo(), alpha * iv.hi());
  if (force_positive && affine_min <= 0) beta += -affine_min + rng.uniform(0.01, 1);

  std::vector<std::pair<double, ConvexAtomSpec>> atoms;
  for (int i = 0; i < atom_count; ++i) {
    const double weight = rng.uniform(0, 2);
    atoms.emplace_back(weight, draw_atom(rng, iv));
  }

  Fn1D f;
  f.positive = force_positive;
  f.eval = [alpha, beta, atoms = std::move(atoms)](double t) {
    double v = beta + alpha * t;
    for (const auto& [w, atom] : atoms) v += w * atom(t);
    return v;
  };
  return f;
}

ConvexInstance random_instance(std::uint64_t seed) {
  Sampler rng(seed);
  const double a = rng.uniform(-1, 1);
  const double b = a + rng.uniform(0.5, 2);
  const double c = rng.uniform(-1, 1);
  const double d = c + rng.uniform(0.5, 2);
  ConvexInstance inst;
  inst.seed = seed;
  inst.rect = Rect(a, b, c, d);
  inst.atom_count = rng.integer(1, 4);
  inst.f = random_coordinate_convex(derive_seed(seed, 0), inst.rect, inst.atom_count);
  return inst;
}

std::uint64_t derive_seed(std::uint64_t base_seed, std::uint64_t index) {
  std::uint64_t z = base_seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace hhb
