#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace qedens {

/// Real symmetric tridiagonal matrix, optionally closed into a cycle by a
/// corner element coupling the first and last rows (periodic stencils).
class SymmetricTridiagonal {
 public:
  SymmetricTridiagonal(std::vector<double> diagonal, std::vector<double> off_diagonal,
                       double corner = 0.0, bool cyclic = false);

  std::size_t size() const { return diag_.size(); }
  std::span<const double> diagonal() const { return diag_; }
  std::span<const double> off_diagonal() const { return off_; }
  double corner() const { return corner_; }
  bool cyclic() const { return cyclic_; }

  std::vector<double> apply(std::span<const double> x) const;
  std::vector<std::complex<double>> apply(std::span<const std::complex<double>> x) const;

  /// Number of eigenvalues strictly below `shift` (Sylvester inertia of the
  /// LDL^T factorization of A - shift I).
  std::size_t count_below(double shift) const;

  /// Solves (A - shift I) x = rhs. Zero pivots are nudged to a tiny value,
  /// which is the behaviour inverse iteration wants near an eigenvalue.
  std::vector<double> solve(double shift, std::span<const double> rhs) const;
  std::vector<std::complex<double>> solve(double shift,
                                          std::span<const std::complex<double>> rhs) const;

  /// Gershgorin interval containing the whole spectrum.
  std::pair<double, double> spectral_bounds() const;

  /// Copy with `shift` added to every diagonal entry.
  SymmetricTridiagonal shifted(double shift) const;

 private:
  struct Factor {
    std::vector<double> pivot;   // D of LDL^T
    std::vector<double> lower;   // L(i+1, i) for the chain
    std::vector<double> border;  // L(n-1, i) for the cyclic border (zero otherwise)
  };
  Factor factor(double shift) const;
  template <typename T>
  std::vector<T> solve_impl(double shift, std::span<const T> rhs) const;
  template <typename T>
  std::vector<T> apply_impl(std::span<const T> x) const;

  std::vector<double> diag_;
  std::vector<double> off_;
  double corner_;
  bool cyclic_;
};

}  // namespace qedens
