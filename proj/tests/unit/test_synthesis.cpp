#include <doctest.h>

#include <cmath>
#include <vector>

#include "qedens/densities.hpp"
#include "qedens/errors.hpp"
#include "qedens/synthesis.hpp"

using namespace qedens;

namespace {

const Grid1D kRing(0.0, 2.0 * kPi, 2048, Boundary::periodic);

std::vector<WaveComponent> mixture() {
  return {WaveComponent::free({1.0, 0.0}, 1.0), WaveComponent::free({0.2, -0.5}, -2.0),
          WaveComponent::free({0.3, 0.3}, 3.0)};
}

double max_diff(const ComplexField& a, const ComplexField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("single component is a normalized plane wave") {
  const double k = 3.0;
  const std::vector<WaveComponent> one{WaveComponent::free({1.0, 0.0}, k)};
  const auto psi = superpose(one, kRing, 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const Complex expected = std::polar(1.0, k * kRing.node(i)) / std::sqrt(2.0 * kPi);
    CHECK(std::abs(psi[i] - expected) < 1e-15);
  }
  CHECK_THROWS_AS(superpose(std::vector<WaveComponent>{}, kRing, 0.0), DomainError);
  CHECK_THROWS_AS(local_fields(std::vector<WaveComponent>{}, kRing, 0.0), DomainError);
}

TEST_CASE("counter-propagating pair is a standing wave with zero momentum") {
  const double p = 2.0;
  const std::vector<WaveComponent> pair{WaveComponent::free({1.0, 0.0}, p), WaveComponent::free({1.0, 0.0}, -p)};
  const auto psi = superpose(pair, kRing, 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    const double c = std::cos(p * kRing.node(i));
    CHECK(std::abs(std::norm(psi[i]) - 4.0 * c * c / (2.0 * kPi)) < 1e-14);
  }
  const auto fields = local_fields(pair, kRing, 0.0);
  std::vector<Complex> prod(psi.size());
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] = std::conj(psi[i]) * fields.momentum[i];
  CHECK(std::abs(integrate(ComplexField(kRing, prod))) < 1e-12);
}

TEST_CASE("field is periodic in time when every energy is a multiple of 2 pi / T") {
  const double period = 1.7;
  const double w = 2.0 * kPi / period;
  const std::vector<WaveComponent> comps{{{1.0, 0.5}, 1.0, 3.0 * w}, {{-0.4, 0.1}, -4.0, w}, {{0.2, 0.0}, 2.0, -7.0 * w}};
  CHECK(max_diff(superpose(comps, kRing, 0.0), superpose(comps, kRing, period)) < 1e-12);
}

TEST_CASE("analytic momentum field is the amplitude-weighted sum of the components") {
  const auto comps = mixture();
  const double t = 0.37;
  const auto fields = local_fields(comps, kRing, t);
  ComplexField expected(kRing);
  for (const auto& c : comps) expected += c.momentum * component_wave(c, kRing, t);
  CHECK(max_diff(fields.momentum, expected) < 1e-12);

  // Cross-check against finite differences of the synthesized field.
  CHECK(max_diff(fields.momentum, local_momentum(superpose(comps, kRing, t))) < 1e-6);
}

TEST_CASE("energy field of a single plane wave follows the dispersion") {
  const auto c = WaveComponent::free({0.6, -0.8}, 2.5);
  CHECK(c.energy == 3.125);
  const std::vector<WaveComponent> one{c};
  const auto fields = local_fields(one, kRing, 0.9);
  const auto psi = superpose(one, kRing, 0.9);
  for (std::size_t i = 0; i < psi.size(); ++i) CHECK(std::abs(fields.energy[i] - 3.125 * psi[i]) < 1e-14);
}

TEST_CASE("each component has constant intensity") {
  for (const auto& c : mixture()) {
    const auto w = component_wave(c, kRing, 1.3);
    const double ref = std::norm(w[0]);
    for (std::size_t i = 0; i < w.size(); ++i) CHECK(std::abs(std::norm(w[i]) - ref) < 1e-12);
    CHECK(std::abs(ref - std::norm(c.amplitude) / (2.0 * kPi)) < 1e-15);
  }
}

TEST_CASE("norm is additive over distinct exact wavenumbers") {
  const auto comps = mixture();
  double expected = 0.0;
  for (const auto& c : comps) expected += std::norm(c.amplitude);
  CHECK(std::abs(norm2(superpose(comps, kRing, 0.0)) - expected) < 1e-10);
  CHECK(std::abs(norm2(superpose(comps, kRing, 5.2)) - expected) < 1e-10);
}

TEST_CASE("projected amplitudes do not change in time") {
  const auto comps = mixture();
  for (double t : {0.0, 0.25, 3.0, 41.5}) {
    const auto psi = superpose(comps, kRing, t);
    for (const auto& c : comps) {
      const Complex a = project_amplitude(psi, c.momentum, c.energy, t);
      CHECK(std::abs(std::abs(a) - std::abs(c.amplitude)) < 1e-10);
      CHECK(std::abs(a - c.amplitude) < 1e-10);
    }
  }
}

TEST_CASE("measurement histogram") {
  const std::vector<WaveComponent> degenerate{{{1.0, 0.0}, 1.0, 0.5}, {{0.0, 0.0}, 2.0, 2.0}, {{0.0, 0.0}, 3.0, 4.5}};
  const auto counts = measurement_histogram(degenerate, 12345, 42);
  CHECK(counts == std::vector<std::uint64_t>{12345, 0, 0});

  const std::uint64_t trials = 1000000;
  const std::vector<WaveComponent> even{WaveComponent::free(1.0, 1.0), WaveComponent::free(1.0, -1.0)};
  const auto e = measurement_histogram(even, trials, 42);
  CHECK(std::abs(static_cast<double>(e[0]) / trials - 0.5) < 0.002);
  CHECK(std::abs(static_cast<double>(e[1]) / trials - 0.5) < 0.002);

  const std::vector<WaveComponent> skew{WaveComponent::free(1.0, 1.0), WaveComponent::free(2.0, 2.0)};
  const auto s = measurement_histogram(skew, trials, 42);
  CHECK(std::abs(static_cast<double>(s[0]) / trials - 0.2) < 0.002);
  CHECK(std::abs(static_cast<double>(s[1]) / trials - 0.8) < 0.002);

  CHECK(measurement_histogram(skew, 1000, 9) == measurement_histogram(skew, 1000, 9));
  CHECK(measurement_histogram(skew, 1000, 9) != measurement_histogram(skew, 1000, 10));

  const std::vector<WaveComponent> silent{{{0.0, 0.0}, 1.0, 0.5}};
  CHECK_THROWS_AS(measurement_histogram(silent, 10, 42), DomainError);
  CHECK_THROWS_AS(measurement_histogram(skew, 0, 42), DomainError);
}
