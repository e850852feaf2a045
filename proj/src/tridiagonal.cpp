#include "qedens/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qedens/errors.hpp"

namespace qedens {

SymmetricTridiagonal::SymmetricTridiagonal(std::vector<double> diagonal,
                                           std::vector<double> off_diagonal, double corner,
                                           bool cyclic)
    : diag_(std::move(diagonal)), off_(std::move(off_diagonal)), corner_(cyclic ? corner : 0.0),
      cyclic_(cyclic) {
  if (diag_.empty()) throw DomainError("tridiagonal: empty matrix");
  if (off_.size() + 1 != diag_.size()) {
    throw StructuralError("tridiagonal: off-diagonal must have size n-1");
  }
  if (cyclic_ && diag_.size() < 3) throw DomainError("tridiagonal: cyclic matrices need n >= 3");
}

template <typename T>
std::vector<T> SymmetricTridiagonal::apply_impl(std::span<const T> x) const {
  const std::size_t n = size();
  if (x.size() != n) throw StructuralError("tridiagonal apply: size mismatch");
  std::vector<T> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    T v = diag_[i] * x[i];
    if (i > 0) v += off_[i - 1] * x[i - 1];
    if (i + 1 < n) v += off_[i] * x[i + 1];
    y[i] = v;
  }
  if (cyclic_) {
    y[0] += corner_ * x[n - 1];
    y[n - 1] += corner_ * x[0];
  }
  return y;
}

std::vector<double> SymmetricTridiagonal::apply(std::span<const double> x) const {
  return apply_impl(x);
}

std::vector<std::complex<double>> SymmetricTridiagonal::apply(
    std::span<const std::complex<double>> x) const {
  return apply_impl(x);
}

SymmetricTridiagonal::Factor SymmetricTridiagonal::factor(double shift) const {
  const std::size_t n = size();
  double scale = std::abs(shift);
  for (double d : diag_) scale = std::max(scale, std::abs(d));
  for (double e : off_) scale = std::max(scale, std::abs(e));
  scale = std::max(scale, std::abs(corner_));
  const double tiny = std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
  auto guard = [tiny](double p) { return std::abs(p) < tiny ? -tiny : p; };

  Factor f{std::vector<double>(n), std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
  if (n == 1) {
    f.pivot[0] = guard(diag_[0] - shift);
    return f;
  }
  // Index n-1 is the border; rows 0..n-2 form a chain. w holds the running
  // column A(i, n-1) of the partially eliminated matrix.
  std::vector<double> d(diag_);
  for (double& v : d) v -= shift;
  std::vector<double> w(n, 0.0);
  w[n - 2] += off_[n - 2];
  w[0] += corner_;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double p = guard(d[i]);
    f.pivot[i] = p;
    if (i + 2 < n) {
      const double l = off_[i] / p;
      f.lower[i] = l;
      d[i + 1] -= l * off_[i];
      w[i + 1] -= l * w[i];
    }
    f.border[i] = w[i] / p;
    d[n - 1] -= w[i] * w[i] / p;
  }
  f.pivot[n - 1] = guard(d[n - 1]);
  return f;
}

std::size_t SymmetricTridiagonal::count_below(double shift) const {
  const Factor f = factor(shift);
  return static_cast<std::size_t>(
      std::count_if(f.pivot.begin(), f.pivot.end(), [](double p) { return p < 0.0; }));
}

template <typename T>
std::vector<T> SymmetricTridiagonal::solve_impl(double shift, std::span<const T> rhs) const {
  const std::size_t n = size();
  if (rhs.size() != n) throw StructuralError("tridiagonal solve: size mismatch");
  const Factor f = factor(shift);
  std::vector<T> y(rhs.begin(), rhs.end());
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (i + 2 < n) y[i + 1] -= f.lower[i] * y[i];
    y[n - 1] -= f.border[i] * y[i];
  }
  for (std::size_t i = 0; i < n; ++i) y[i] /= f.pivot[i];
  for (std::size_t i = n - 1; i-- > 0;) {
    if (i + 2 < n) y[i] -= f.lower[i] * y[i + 1];
    y[i] -= f.border[i] * y[n - 1];
  }
  return y;
}

std::vector<double> SymmetricTridiagonal::solve(double shift, std::span<const double> rhs) const {
  return solve_impl(shift, rhs);
}

std::vector<std::complex<double>> SymmetricTridiagonal::solve(
    double shift, std::span<const std::complex<double>> rhs) const {
  return solve_impl(shift, rhs);
}

std::pair<double, double> SymmetricTridiagonal::spectral_bounds() const {
  const std::size_t n = size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (std::size_t i = 0; i < n; ++i) {
    double radius = 0.0;
    if (i > 0) radius += std::abs(off_[i - 1]);
    if (i + 1 < n) radius += std::abs(off_[i]);
    if (cyclic_ && (i == 0 || i == n - 1)) radius += std::abs(corner_);
    lo = std::min(lo, diag_[i] - radius);
    hi = std::max(hi, diag_[i] + radius);
  }
  return {lo, hi};
}

SymmetricTridiagonal SymmetricTridiagonal::shifted(double shift) const {
  std::vector<double> d(diag_);
  for (double& v : d) v += shift;
  return SymmetricTridiagonal(std::move(d), off_, corner_, cyclic_);
}

}  // namespace qedens
