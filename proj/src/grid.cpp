#include "qedens/grid.hpp"

#include <cmath>
#include <string>

#include "qedens/errors.hpp"

namespace qedens {

std::string_view to_string(Boundary b) {
  switch (b) {
    case Boundary::periodic:
      return "periodic";
    case Boundary::dirichlet_zero:
      return "dirichlet-zero";
    case Boundary::decaying:
      return "decaying";
  }
  return "unknown";
}

Boundary parse_boundary(std::string_view name) {
  if (name == "periodic") return Boundary::periodic;
  if (name == "dirichlet-zero" || name == "dirichlet") return Boundary::dirichlet_zero;
  if (name == "decaying") return Boundary::decaying;
  throw DomainError("boundary: unknown policy '" + std::string(name) + "'");
}

namespace {

std::vector<double> composite_weights(std::size_t n, double h, bool periodic) {
  std::vector<double> w(n, 0.0);
  if (periodic) {
    std::fill(w.begin(), w.end(), h);
    return w;
  }
  const std::size_t intervals = n - 1;
  // Simpson over the leading even number of intervals, 3/8 rule on the tail.
  const std::size_t simpson_intervals = intervals % 2 == 0 ? intervals : intervals - 3;
  for (std::size_t i = 0; i + 2 <= simpson_intervals; i += 2) {
    w[i] += h / 3.0;
    w[i + 1] += 4.0 * h / 3.0;
    w[i + 2] += h / 3.0;
  }
  if (simpson_intervals != intervals) {
    const std::size_t s = simpson_intervals;
    w[s] += 3.0 * h / 8.0;
    w[s + 1] += 9.0 * h / 8.0;
    w[s + 2] += 9.0 * h / 8.0;
    w[s + 3] += 3.0 * h / 8.0;
  }
  return w;
}

}  // namespace

Grid1D::Grid1D(double xmin, double xmax, std::size_t n, Boundary boundary)
    : xmin_(xmin), xmax_(xmax), n_(n), spacing_(0.0), boundary_(boundary) {
  if (n < 3) throw DomainError("n: need at least 3 nodes, got " + std::to_string(n));
  if (!(xmax > xmin) || !std::isfinite(xmin) || !std::isfinite(xmax)) {
    throw DomainError("xmax: must be finite and greater than xmin");
  }
  const double span = xmax - xmin;
  spacing_ = periodic() ? span / static_cast<double>(n) : span / static_cast<double>(n - 1);
  weights_ = composite_weights(n, spacing_, periodic());
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = node(i);
  return out;
}

bool Grid1D::operator==(const Grid1D& other) const {
  return xmin_ == other.xmin_ && xmax_ == other.xmax_ && n_ == other.n_ &&
         boundary_ == other.boundary_;
}

Grid1D make_uniform_grid(double xmin, double xmax, std::size_t n, Boundary boundary) {
  return Grid1D(xmin, xmax, n, boundary);
}

RadialGrid::RadialGrid(double rmin, double rmax, std::size_t n)
    : axis_([&] {
        if (!(rmin > 0.0)) throw DomainError("rmin: radial grids exclude the origin, need rmin > 0");
        return Grid1D(rmin, rmax, n, Boundary::decaying);
      }()) {
  weights_ = axis_.weights();
  for (std::size_t i = 0; i < weights_.size(); ++i) weights_[i] *= volume_weight(i);
}

double RadialGrid::volume_weight(std::size_t i) const {
  const double r = node(i);
  return 4.0 * kPi * r * r;
}

Grid2D::Grid2D(Grid1D x, Grid1D y) : x_(std::move(x)), y_(std::move(y)) {
  if (x_.boundary() != y_.boundary()) {
    throw StructuralError("Grid2D: both axes must share one boundary policy");
  }
}

std::size_t node_count(const Grid& grid) {
  return std::visit([](const auto& g) { return g.size(); }, grid);
}

std::vector<double> quadrature_weights(const Grid& grid) {
  if (const auto* g1 = std::get_if<Grid1D>(&grid)) return g1->weights();
  if (const auto* gr = std::get_if<RadialGrid>(&grid)) return gr->weights();
  const auto& g2 = std::get<Grid2D>(grid);
  const auto& wx = g2.x().weights();
  const auto& wy = g2.y().weights();
  std::vector<double> w(g2.size());
  for (std::size_t iy = 0; iy < wy.size(); ++iy) {
    for (std::size_t ix = 0; ix < wx.size(); ++ix) w[g2.index(ix, iy)] = wx[ix] * wy[iy];
  }
  return w;
}

bool same_grid(const Grid& a, const Grid& b) { return a == b; }

ComplexField::ComplexField(Grid grid, std::vector<Complex> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  const std::size_t n = node_count(grid_);
  if (values_.size() != n) {
    throw StructuralError("ComplexField: " + std::to_string(values_.size()) +
                          " values for a grid of " + std::to_string(n) + " nodes");
  }
}

ComplexField::ComplexField(Grid grid) : grid_(std::move(grid)), values_(node_count(grid_)) {}

ComplexField ComplexField::sample(const Grid1D& grid, const std::function<Complex(double)>& f) {
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
  return ComplexField(grid, std::move(v));
}

ComplexField ComplexField::sample(const RadialGrid& grid, const std::function<Complex(double)>& f) {
  std::vector<Complex> v(grid.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.node(i));
  return ComplexField(grid, std::move(v));
}

ComplexField ComplexField::sample(const Grid2D& grid,
                                  const std::function<Complex(double, double)>& f) {
  std::vector<Complex> v(grid.size());
  for (std::size_t iy = 0; iy < grid.y().size(); ++iy) {
    for (std::size_t ix = 0; ix < grid.x().size(); ++ix) {
      v[grid.index(ix, iy)] = f(grid.x().node(ix), grid.y().node(iy));
    }
  }
  return ComplexField(grid, std::move(v));
}

const Grid1D& ComplexField::axis() const {
  if (const auto* g1 = std::get_if<Grid1D>(&grid_)) return *g1;
  if (const auto* gr = std::get_if<RadialGrid>(&grid_)) return gr->axis();
  throw DomainError("axis: 2D fields have no single axis");
}

ComplexField& ComplexField::operator+=(const ComplexField& other) {
  if (!same_grid(grid_, other.grid_)) throw StructuralError("field sum: grids differ");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

ComplexField& ComplexField::operator*=(Complex scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

ComplexField operator+(ComplexField a, const ComplexField& b) { return a += b; }
ComplexField operator*(Complex scale, ComplexField f) { return f *= scale; }

namespace {

// Trapezoid over [0, rmin] with a vanishing integrand at the origin.
template <typename T>
T origin_closure(const RadialGrid& g, T first_sample) {
  const double r = g.rmin();
  return first_sample * (0.5 * r * g.volume_weight(0));
}

}  // namespace

Complex integrate(const ComplexField& f) {
  const auto w = quadrature_weights(f.grid());
  Complex sum{0.0, 0.0};
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * f[i];
  if (const auto* gr = std::get_if<RadialGrid>(&f.grid())) sum += origin_closure(*gr, f[0]);
  return sum;
}

double integrate(const Grid& grid, std::span<const double> samples) {
  const auto w = quadrature_weights(grid);
  if (samples.size() != w.size()) {
    throw StructuralError("integrate: " + std::to_string(samples.size()) +
                          " samples for a grid of " + std::to_string(w.size()) + " nodes");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * samples[i];
  if (const auto* gr = std::get_if<RadialGrid>(&grid)) sum += origin_closure(*gr, samples[0]);
  return sum;
}

double integrate(const Grid1D& grid, std::span<const double> samples) {
  return integrate(Grid{grid}, samples);
}

double norm2(const ComplexField& f) {
  std::vector<double> density(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) density[i] = std::norm(f[i]);
  return integrate(f.grid(), density);
}

ComplexField normalized(ComplexField f) {
  const double n2 = norm2(f);
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw DomainError("normalized: field has zero or non-finite norm");
  f *= 1.0 / std::sqrt(n2);
  return f;
}

Complex inner_product(const ComplexField& a, const ComplexField& b) {
  if (!same_grid(a.grid(), b.grid())) throw StructuralError("inner_product: grids differ");
  std::vector<Complex> prod(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) prod[i] = std::conj(a[i]) * b[i];
  return integrate(ComplexField(a.grid(), std::move(prod)));
}

std::vector<Complex> differentiate(const Grid1D& grid, std::span<const Complex> f, int order) {
  if (order != 1 && order != 2) {
    throw DomainError("order: derivative order must be 1 or 2, got " + std::to_string(order));
  }
  const std::size_t n = grid.size();
  if (f.size() != n) throw StructuralError("derivative: sample count does not match grid");
  const double h = grid.spacing();
  std::vector<Complex> d(n);

  auto fourth = [&](Complex m2, Complex m1, Complex c, Complex p1, Complex p2) {
    if (order == 1) return (m2 - 8.0 * m1 + 8.0 * p1 - p2) / (12.0 * h);
    return (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / (12.0 * h * h);
  };
  auto second = [&](Complex m1, Complex c, Complex p1) {
    if (order == 1) return (p1 - m1) / (2.0 * h);
    return (m1 - 2.0 * c + p1) / (h * h);
  };

  if (grid.periodic()) {
    if (n < 5) throw DomainError("n: periodic derivatives need at least 5 nodes");
    for (std::size_t i = 0; i < n; ++i) {
      d[i] = fourth(f[(i + n - 2) % n], f[(i + n - 1) % n], f[i], f[(i + 1) % n], f[(i + 2) % n]);
    }
    return d;
  }

  const std::size_t layer = n >= 5 ? 2 : 1;
  for (std::size_t i = layer; i + layer < n; ++i) {
    d[i] = n >= 5 ? fourth(f[i - 2], f[i - 1], f[i], f[i + 1], f[i + 2])
                  : second(f[i - 1], f[i], f[i + 1]);
  }
  if (layer == 2) {
    d[1] = second(f[0], f[1], f[2]);
    d[n - 2] = second(f[n - 3], f[n - 2], f[n - 1]);
  }
  if (order == 1) {
    d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h);
    d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  } else if (n >= 4) {
    d[0] = (2.0 * f[0] - 5.0 * f[1] + 4.0 * f[2] - f[3]) / (h * h);
    d[n - 1] = (2.0 * f[n - 1] - 5.0 * f[n - 2] + 4.0 * f[n - 3] - f[n - 4]) / (h * h);
  } else {
    d[0] = d[1];
    d[n - 1] = d[n - 2];
  }
  return d;
}

ComplexField derivative(const ComplexField& f, int order) {
  if (f.is_2d()) throw DomainError("derivative: 2D fields need an axis");
  return ComplexField(f.grid(), differentiate(f.axis(), f.values(), order));
}

ComplexField derivative(const ComplexField& f, int order, Axis axis) {
  if (!f.is_2d()) {
    if (axis == Axis::y) throw DomainError("derivative: y axis requested on a 1D field");
    return derivative(f, order);
  }
  const auto& g = std::get<Grid2D>(f.grid());
  const Grid1D& line = axis == Axis::x ? g.x() : g.y();
  const std::size_t lines = axis == Axis::x ? g.y().size() : g.x().size();
  std::vector<Complex> out(f.size());
  std::vector<Complex> buf(line.size());
  for (std::size_t l = 0; l < lines; ++l) {
    for (std::size_t k = 0; k < line.size(); ++k) {
      buf[k] = f[axis == Axis::x ? g.index(k, l) : g.index(l, k)];
    }
    const auto d = differentiate(line, buf, order);
    for (std::size_t k = 0; k < line.size(); ++k) {
      out[axis == Axis::x ? g.index(k, l) : g.index(l, k)] = d[k];
    }
  }
  return ComplexField(f.grid(), std::move(out));
}

Complex boundary_derivative(const Grid1D& grid, std::span<const Complex> f, Side side) {
  const std::size_t n = grid.size();
  if (f.size() != n) throw StructuralError("boundary_derivative: sample count does not match grid");
  const double h = grid.spacing();
  if (n < 5) {
    return side == Side::lower ? (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * h)
                               : (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * h);
  }
  if (side == Side::lower) {
    return (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
  }
  return (25.0 * f[n - 1] - 48.0 * f[n - 2] + 36.0 * f[n - 3] - 16.0 * f[n - 4] + 3.0 * f[n - 5]) /
         (12.0 * h);
}

}  // namespace qedens
