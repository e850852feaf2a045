#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "qedens/random.hpp"
#include "qedens/tridiagonal.hpp"

using namespace qedens;

namespace {

SymmetricTridiagonal random_matrix(std::size_t n, bool cyclic, std::uint64_t seed) {
  CounterRng rng(seed);
  std::vector<double> d(n), e(n - 1);
  for (auto& v : d) v = 4.0 * rng.uniform() - 2.0;
  for (auto& v : e) v = 2.0 * rng.uniform() - 1.0;
  const double corner = cyclic ? 2.0 * rng.uniform() - 1.0 : 0.0;
  return SymmetricTridiagonal(d, e, corner, cyclic);
}

std::vector<std::vector<double>> dense(const SymmetricTridiagonal& a) {
  const std::size_t n = a.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = a.diagonal()[i];
  for (std::size_t i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = a.off_diagonal()[i];
  if (a.cyclic()) {
    m[0][n - 1] += a.corner();
    m[n - 1][0] += a.corner();
  }
  return m;
}

}  // namespace

TEST_CASE("apply matches the dense matrix") {
  for (bool cyclic : {false, true}) {
    const auto a = random_matrix(9, cyclic, 3);
    const auto m = dense(a);
    std::vector<double> x(9);
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(1.0 + static_cast<double>(i));
    const auto y = a.apply(x);
    for (std::size_t i = 0; i < x.size(); ++i) {
      double ref = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) ref += m[i][j] * x[j];
      CHECK(std::abs(y[i] - ref) < 1e-14);
    }
  }
}

TEST_CASE("inertia counts agree with a dense eigen-decomposition") {
  for (bool cyclic : {false, true}) {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
      const auto a = random_matrix(14, cyclic, seed);
      const auto eig = oracle::jacobi_eigen(dense(a));
      CAPTURE(cyclic);
      CAPTURE(seed);
      for (std::size_t k = 0; k < eig.values.size(); ++k) {
        CHECK(a.count_below(eig.values[k] - 1e-9) == k);
        CHECK(a.count_below(eig.values[k] + 1e-9) == k + 1);
      }
      const auto [lo, hi] = a.spectral_bounds();
      CHECK(lo <= eig.values.front());
      CHECK(hi >= eig.values.back());
    }
  }
}

TEST_CASE("shifted solve inverts A - sI") {
  for (bool cyclic : {false, true}) {
    const auto a = random_matrix(12, cyclic, 11);
    const double s = 0.123;
    std::vector<std::complex<double>> rhs(12);
    for (std::size_t i = 0; i < rhs.size(); ++i) rhs[i] = {std::cos(0.3 * i), std::sin(0.7 * i)};
    const auto x = a.solve(s, std::span<const std::complex<double>>(rhs));
    const auto back = a.apply(std::span<const std::complex<double>>(x));
    for (std::size_t i = 0; i < rhs.size(); ++i) CHECK(std::abs(back[i] - s * x[i] - rhs[i]) < 1e-10);

    std::vector<double> r(12, 1.0);
    const auto y = a.shifted(-s).solve(0.0, r);
    const auto z = a.solve(s, r);
    for (std::size_t i = 0; i < r.size(); ++i) CHECK(std::abs(y[i] - z[i]) < 1e-12);
  }
}

TEST_CASE("periodic second-difference matrix has the circulant spectrum") {
  const std::size_t n = 16;
  const SymmetricTridiagonal lap(std::vector<double>(n, 2.0), std::vector<double>(n - 1, -1.0), -1.0, true);
  // Eigenvalues 2 - 2 cos(2 pi k / n): zero is simple, the rest come in pairs.
  CHECK(lap.count_below(1e-12) == 1);
  const double l1 = 2.0 - 2.0 * std::cos(2.0 * oracle::kPi / n);
  CHECK(lap.count_below(l1 - 1e-9) == 1);
  CHECK(lap.count_below(l1 + 1e-9) == 3);
  CHECK(lap.count_below(4.0 + 1e-9) == n);
}
