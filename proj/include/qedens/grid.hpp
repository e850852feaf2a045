#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace qedens {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

enum class Boundary { periodic, dirichlet_zero, decaying };

std::string_view to_string(Boundary b);
/// Accepts "periodic", "dirichlet-zero" / "dirichlet", "decaying".
Boundary parse_boundary(std::string_view name);

/// Uniform sample axis.
///
/// Non-periodic grids place nodes at xmin + i*h with h = (xmax-xmin)/(n-1),
/// so both end points are nodes. Periodic grids hold n distinct nodes of one
/// period: h = (xmax-xmin)/n and xmax itself is the image of xmin.
class Grid1D {
 public:
  Grid1D(double xmin, double xmax, std::size_t n, Boundary boundary);

  double xmin() const { return xmin_; }
  double xmax() const { return xmax_; }
  std::size_t size() const { return n_; }
  double spacing() const { return spacing_; }
  Boundary boundary() const { return boundary_; }
  bool periodic() const { return boundary_ == Boundary::periodic; }

  double node(std::size_t i) const { return xmin_ + static_cast<double>(i) * spacing_; }
  std::vector<double> nodes() const;

  /// Composite quadrature weights: equal weights on periodic grids,
  /// Simpson otherwise (Simpson 3/8 closes an odd interval count).
  const std::vector<double>& weights() const { return weights_; }

  bool operator==(const Grid1D& other) const;

 private:
  double xmin_;
  double xmax_;
  std::size_t n_;
  double spacing_;
  Boundary boundary_;
  std::vector<double> weights_;
};

Grid1D make_uniform_grid(double xmin, double xmax, std::size_t n, Boundary boundary);

/// Radial axis for spherically symmetric fields. The origin is excluded
/// (rmin > 0) and every node carries the 4*pi*r^2 volume factor.
class RadialGrid {
 public:
  static constexpr double kDefaultRmin = 1e-3;

  RadialGrid(double rmin, double rmax, std::size_t n);

  double rmin() const { return axis_.xmin(); }
  double rmax() const { return axis_.xmax(); }
  std::size_t size() const { return axis_.size(); }
  double spacing() const { return axis_.spacing(); }
  double node(std::size_t i) const { return axis_.node(i); }
  std::vector<double> nodes() const { return axis_.nodes(); }
  const Grid1D& axis() const { return axis_; }

  double volume_weight(std::size_t i) const;
  /// Axis quadrature weights multiplied by 4*pi*r^2.
  const std::vector<double>& weights() const { return weights_; }

  bool operator==(const RadialGrid& other) const { return axis_ == other.axis_; }

 private:
  Grid1D axis_;
  std::vector<double> weights_;
};

/// Tensor-product grid; node (ix, iy) lives at flat index iy*nx + ix.
class Grid2D {
 public:
  Grid2D(Grid1D x, Grid1D y);

  const Grid1D& x() const { return x_; }
  const Grid1D& y() const { return y_; }
  std::size_t size() const { return x_.size() * y_.size(); }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * x_.size() + ix; }

  bool operator==(const Grid2D& other) const { return x_ == other.x_ && y_ == other.y_; }

 private:
  Grid1D x_;
  Grid1D y_;
};

using Grid = std::variant<Grid1D, RadialGrid, Grid2D>;

std::size_t node_count(const Grid& grid);
/// Quadrature weights of the grid (radial ones include 4*pi*r^2).
std::vector<double> quadrature_weights(const Grid& grid);

/// Complex samples of a wavefunction, one per grid node.
class ComplexField {
 public:
  ComplexField(Grid grid, std::vector<Complex> values);
  explicit ComplexField(Grid grid);

  static ComplexField sample(const Grid1D& grid, const std::function<Complex(double)>& f);
  static ComplexField sample(const RadialGrid& grid, const std::function<Complex(double)>& f);
  static ComplexField sample(const Grid2D& grid, const std::function<Complex(double, double)>& f);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  bool is_1d() const { return std::holds_alternative<Grid1D>(grid_); }
  bool is_radial() const { return std::holds_alternative<RadialGrid>(grid_); }
  bool is_2d() const { return std::holds_alternative<Grid2D>(grid_); }

  /// The axis along which 1D derivatives act (1D and radial fields only).
  const Grid1D& axis() const;

  ComplexField& operator+=(const ComplexField& other);
  ComplexField& operator*=(Complex scale);

 private:
  Grid grid_;
  std::vector<Complex> values_;
};

ComplexField operator+(ComplexField a, const ComplexField& b);
ComplexField operator*(Complex scale, ComplexField f);

bool same_grid(const Grid& a, const Grid& b);

/// Integral of the field over its grid. Radial grids integrate over the
/// ball of radius rmax: the 4*pi*r^2 weight is applied and the excluded
/// core [0, rmin] is closed with a trapezoid that vanishes at the origin.
Complex integrate(const ComplexField& f);
/// Same rule for real per-node samples on any grid.
double integrate(const Grid& grid, std::span<const double> samples);
/// Plain 1D rule without any volume factor.
double integrate(const Grid1D& grid, std::span<const double> samples);

double norm2(const ComplexField& f);
ComplexField normalized(ComplexField f);
/// <a, b> = integral of conj(a) * b.
Complex inner_product(const ComplexField& a, const ComplexField& b);

enum class Axis { x, y };

/// Central finite differences: 4th-order stencils in the interior and on
/// periodic grids; 2nd-order closures on the two outer node layers of
/// non-periodic grids. 1D and radial fields differentiate along r (plain
/// d/dr, not the radial Laplacian).
ComplexField derivative(const ComplexField& f, int order);
ComplexField derivative(const ComplexField& f, int order, Axis axis);

/// 1D kernels over raw samples; exposed for modules that work on vectors.
std::vector<Complex> differentiate(const Grid1D& grid, std::span<const Complex> values, int order);

enum class Side { lower, upper };
/// First derivative at an end node from the 4th-order one-sided stencil.
Complex boundary_derivative(const Grid1D& grid, std::span<const Complex> values, Side side);

}  // namespace qedens
