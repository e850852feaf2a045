#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "qedens/densities.hpp"
#include "qedens/errors.hpp"
#include "qedens/hydrogen.hpp"
#include "qedens/random.hpp"

using namespace qedens;

namespace {

const Grid1D kRing(0.0, 2.0 * kPi, 2048, Boundary::periodic);
const Grid1D kLine(-10.0, 10.0, 2001, Boundary::decaying);
const RadialGrid kRadial(1e-3, 40.0, 4000);

ComplexField gaussian(const Grid1D& g) {
  return ComplexField::sample(g, [](double x) { return std::pow(kPi, -0.25) * std::exp(-0.5 * x * x); });
}

ComplexField hydrogen_field() { return ComplexField::sample(kRadial, [](double r) { return psi1(r); }); }

double max_abs(std::span<const double> v, std::size_t skip = 0) {
  double m = 0.0;
  for (std::size_t i = skip; i + skip < v.size(); ++i) m = std::max(m, std::abs(v[i]));
  return m;
}

double integral(const ComplexField& f, const std::vector<double>& d) { return integrate(f.grid(), d); }

std::vector<double> zeros(std::size_t n) { return std::vector<double>(n, 0.0); }

// Test fields for the parts identity: decaying, periodic and non-decaying.
std::vector<ComplexField> identity_fields() {
  std::vector<ComplexField> out;
  out.push_back(gaussian(kLine));
  out.push_back(ComplexField::sample(kLine, [](double x) {
    return std::exp(-(x - 1.0) * (x - 1.0)) * std::polar(1.0, 2.0 * x) +
           0.5 * std::exp(-0.5 * (x + 2.0) * (x + 2.0));
  }));
  out.push_back(ComplexField::sample(kRing, [](double x) {
    return Complex(0.3, 0.1) * std::polar(1.0, 3.0 * x) + 0.8 * std::polar(1.0, -x) + 0.2;
  }));
  out.push_back(hydrogen_field());
  out.push_back(ComplexField::sample(Grid1D(0.0, 3.0, 1201, Boundary::dirichlet_zero), [](double x) {
    return Complex(std::sin(x), std::cos(2.0 * x));
  }));
  return out;
}

}  // namespace

TEST_CASE("ke density of a plane wave is p^2/2 |A|^2") {
  const Complex amp{0.7, 0.2};
  for (double k : {1.0, 2.0, 3.0}) {
    const auto psi = ComplexField::sample(kRing, [&](double x) { return amp * std::polar(1.0, k * x); });
    const auto ke = ke_density(psi);
    const auto kk = k_density(psi);
    for (std::size_t i = 0; i < ke.size(); ++i) {
      CHECK(std::abs(ke[i] - 0.5 * k * k * std::norm(amp)) < 1e-8);
      CHECK(std::abs(ke[i] - kk[i]) < 1e-8);
    }
  }
}

TEST_CASE("Gaussian kinetic densities") {
  const auto psi = gaussian(kLine);
  const auto ke = ke_density(psi);
  const auto kk = k_density(psi);
  const std::size_t centre = 1000;
  REQUIRE(std::abs(kLine.node(centre)) < 1e-12);
  CHECK(std::abs(ke[centre]) < 1e-10);
  // integral (1/2) x^2 e^{-x^2} / sqrt(pi) dx = 1/4.
  CHECK(std::abs(integral(psi, ke) - 0.25) < 1e-6);
  // -(1/2) psi psi'' = (1/2)(1 - x^2) e^{-x^2} / sqrt(pi).
  CHECK(std::abs(kk[centre] - 0.5 / std::sqrt(kPi)) < 1e-9);
  for (std::size_t i = 2; i + 2 < kLine.size(); ++i) {
    if (std::abs(kLine.node(i)) > 1.0 + kLine.spacing()) CHECK(kk[i] < 0.0);
  }
}

TEST_CASE("hydrogen Laplacian form matches the closed form away from rmin") {
  const auto kk = k_density(hydrogen_field());
  double worst = 0.0;
  for (std::size_t i = 0; i < kRadial.size(); ++i) {
    const double r = kRadial.node(i);
    if (r < 0.1) continue;
    worst = std::max(worst, std::abs(kk[i] - hydrogen_k(r)));
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("potential energy density") {
  const auto psi = gaussian(kLine);
  CHECK(max_abs(pe_density(psi, zeros(psi.size()))) == 0.0);

  const auto h = hydrogen_field();
  std::vector<double> coulomb(kRadial.size());
  for (std::size_t i = 0; i < coulomb.size(); ++i) coulomb[i] = -1.0 / kRadial.node(i);
  const auto pe = pe_density(h, coulomb);
  for (std::size_t i = 0; i < pe.size(); ++i) CHECK(std::abs(pe[i] - hydrogen_pe(kRadial.node(i))) < 1e-10);

  const double c = -2.75;
  CHECK(std::abs(integral(psi, pe_density(psi, std::vector<double>(psi.size(), c))) - c) < 1e-10);
  CHECK_THROWS_AS(pe_density(psi, zeros(10)), StructuralError);
}

TEST_CASE("local momentum") {
  const double k = 2.0;
  const auto wave = ComplexField::sample(kRing, [&](double x) { return std::polar(1.0, k * x); });
  const auto p = local_momentum(wave);
  for (std::size_t i = 0; i < p.size(); ++i) CHECK(std::abs(p[i] - k * wave[i]) < 1e-8);

  const auto real = local_momentum(gaussian(kLine));
  for (std::size_t i = 0; i < real.size(); ++i) CHECK(real[i].real() == 0.0);

  const auto standing = ComplexField::sample(kRing, [](double x) { return std::cos(3.0 * x); });
  const auto ps = local_momentum(standing);
  std::vector<Complex> prod(standing.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = std::conj(standing[i]) * ps[i];
  CHECK(std::abs(integrate(ComplexField(kRing, prod))) < 1e-10);
}

TEST_CASE("local momentum of a sum is the sum of local momenta") {
  std::vector<ComplexField> waves;
  const double ps[] = {1.0, -2.0, 4.0};
  const Complex as[] = {{1.0, 0.0}, {0.2, -0.5}, {0.3, 0.3}};
  ComplexField total(kRing);
  ComplexField expected(kRing);
  for (int j = 0; j < 3; ++j) {
    const auto w = ComplexField::sample(kRing, [&](double x) { return as[j] * std::polar(1.0, ps[j] * x); });
    total += w;
    expected += local_momentum(w);
  }
  const auto got = local_momentum(total);
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - expected[i]) < 1e-12);
}

TEST_CASE("local angular momentum") {
  const Grid1D ax(-6.0, 6.0, 801, Boundary::decaying);
  const Grid2D g(ax, ax);
  const auto vortex = ComplexField::sample(g, [](double x, double y) {
    return Complex(x, y) * std::exp(-0.5 * (x * x + y * y));
  });
  const auto lz = local_lz(vortex);
  double worst = 0.0;
  for (std::size_t iy = 2; iy + 2 < ax.size(); ++iy) {
    for (std::size_t ix = 2; ix + 2 < ax.size(); ++ix) {
      const std::size_t i = g.index(ix, iy);
      worst = std::max(worst, std::abs(lz[i] - vortex[i]));
    }
  }
  CHECK(worst < 1e-6);

  const auto blob = ComplexField::sample(g, [](double x, double y) { return std::exp(-0.5 * (x * x + y * y)); });
  const auto lz0 = local_lz(blob);
  double m0 = 0.0;
  for (std::size_t i = 0; i < lz0.size(); ++i) m0 = std::max(m0, std::abs(lz0[i]));
  CHECK(m0 < 1e-8);

  const Grid1D ring(-kPi, kPi, 512, Boundary::periodic);
  const Grid2D torus(ring, ring);
  const double k = 2.0;
  const auto wave = ComplexField::sample(torus, [&](double x, double) { return std::polar(1.0, k * x); });
  const auto lzw = local_lz(wave);
  for (std::size_t iy = 0; iy < ring.size(); ++iy) {
    for (std::size_t ix = 0; ix < ring.size(); ++ix) {
      const std::size_t i = torus.index(ix, iy);
      const double y = ring.node(iy);
      CHECK(std::abs(lzw[i] - (-y * k) * wave[i]) < 1e-6);
      if (y == 0.0) CHECK(std::abs(lzw[i]) < 1e-12);
    }
  }
  CHECK_THROWS_AS(local_lz(gaussian(kLine)), DomainError);
}

TEST_CASE("energy totals for the hydrogen ground state") {
  const auto h = hydrogen_field();
  std::vector<double> coulomb(kRadial.size());
  for (std::size_t i = 0; i < coulomb.size(); ++i) coulomb[i] = -1.0 / kRadial.node(i);
  const auto rep = totals(h, coulomb, -0.5);
  CHECK(std::abs(rep.ke_total - 0.5) < 1e-5);
  CHECK(std::abs(rep.pe_total + 1.0) < 1e-5);
  CHECK(std::abs(rep.e_total + 0.5) < 1e-5);
  CHECK(std::abs(rep.surface_term) < 1e-8);
  CHECK(std::abs(rep.norm2 - 1.0) < 1e-8);
  CHECK(std::abs(rep.ke_total - rep.k_total) < 1e-5);
}

TEST_CASE("surface term on periodic and decaying grids") {
  const auto wave = ComplexField::sample(kRing, [](double x) { return std::polar(1.0, 5.0 * x); });
  CHECK(totals(wave, zeros(wave.size()), 12.5).surface_term == 0.0);
  const auto g = gaussian(kLine);
  CHECK(std::abs(totals(g, zeros(g.size()), 0.0).surface_term) < 1e-20);
}

TEST_CASE("integration by parts identity holds for every test field") {
  for (const auto& psi : identity_fields()) {
    const auto rep = totals(psi, zeros(psi.size()), 0.0);
    CAPTURE(rep.ke_total);
    CAPTURE(rep.k_total);
    CAPTURE(rep.surface_term);
    CHECK(std::abs(rep.ke_total - rep.k_total - rep.surface_term) <= 1e-6 * std::abs(rep.ke_total));
    const bool closed = !psi.is_1d() || psi.axis().boundary() != Boundary::dirichlet_zero;
    if (closed) CHECK(std::abs(rep.ke_total - rep.k_total) <= 1e-6 * std::abs(rep.ke_total));
  }
  // The non-decaying field has a genuine boundary flux.
  const auto open = identity_fields().back();
  CHECK(std::abs(totals(open, zeros(open.size()), 0.0).surface_term) > 0.1);
}

TEST_CASE("kinetic densities are invariant under a global phase") {
  for (const auto& psi : identity_fields()) {
    ComplexField rotated = psi;
    rotated *= std::polar(1.0, 0.937);
    const auto a = ke_density(psi), b = ke_density(rotated);
    const auto c = k_density(psi), d = k_density(rotated);
    // Second differences carry roundoff of order |psi|^2 / h^2.
    double peak = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) peak = std::max(peak, std::norm(psi[i]));
    const double h = psi.is_radial() ? std::get<RadialGrid>(psi.grid()).spacing() : psi.axis().spacing();
    const double scale_ke = std::max({1.0, max_abs(a), peak / h});
    const double scale_k = std::max({1.0, max_abs(c), peak / (h * h)});
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(std::abs(a[i] - b[i]) <= 1e-12 * scale_ke);
      CHECK(std::abs(c[i] - d[i]) <= 1e-12 * scale_k);
    }
  }
}

TEST_CASE("gradient form is non-negative for arbitrary fields") {
  CounterRng rng(2024);
  for (Boundary b : {Boundary::periodic, Boundary::dirichlet_zero}) {
    ComplexField f(Grid1D(0.0, 1.0, 64, b));
    for (std::size_t i = 0; i < f.size(); ++i) f[i] = {rng.uniform() - 0.5, rng.uniform() - 0.5};
    for (double v : ke_density(f)) CHECK(v >= -1e-12);
  }
}

TEST_CASE("hydrogen densities differ pointwise and K changes sign at r = 2") {
  const auto h = hydrogen_field();
  const auto ke = ke_density(h);
  const auto kk = k_density(h);
  double gap = 0.0;
  for (std::size_t i = 0; i < ke.size(); ++i) gap = std::max(gap, std::abs(ke[i] - kk[i]));
  CHECK(gap > 0.1);
  for (std::size_t i = 5; i < kRadial.size() - 5; ++i) {
    const double r = kRadial.node(i);
    if (r < 2.0 - kRadial.spacing()) CHECK(kk[i] > 0.0);
    if (r > 2.0 + kRadial.spacing() && r < 15.0) CHECK(kk[i] < 0.0);
  }
}

TEST_CASE("imaginary part of the Laplacian form integrates to zero for a stationary state") {
  const auto psi = ComplexField::sample(kLine, [](double x) {
    return std::polar(std::pow(kPi, -0.25) * std::exp(-0.5 * x * x), 0.4);
  });
  const auto rep = totals(psi, zeros(psi.size()), 0.5);
  CHECK(std::abs(rep.k_imag_total) < 1e-12);
}
