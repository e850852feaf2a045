#include "qedens/synthesis.hpp"

#include <algorithm>
#include <cmath>

#include "qedens/errors.hpp"
#include "qedens/random.hpp"

namespace qedens {

namespace {

void require_components(std::span<const WaveComponent> components) {
  if (components.empty()) throw DomainError("components: need at least one wave component");
}

Complex phase(const WaveComponent& c, double x, double t) {
  return std::polar(1.0, c.momentum * x - c.energy * t);
}

// Sum of weight(c) * a_c * e^{i(p x - E t)} over components, with prefactor.
template <typename Weight>
ComplexField weighted_sum(std::span<const WaveComponent> components, const Grid1D& grid, double t,
                          Weight weight) {
  require_components(components);
  std::vector<Complex> v(grid.size(), Complex{0.0, 0.0});
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = grid.node(i);
    for (const auto& c : components) v[i] += weight(c) * c.amplitude * phase(c, x, t);
    v[i] *= kSynthesisPrefactor;
  }
  return ComplexField(grid, std::move(v));
}

}  // namespace

ComplexField superpose(std::span<const WaveComponent> components, const Grid1D& grid, double t) {
  return weighted_sum(components, grid, t, [](const WaveComponent&) { return 1.0; });
}

ComplexField component_wave(const WaveComponent& component, const Grid1D& grid, double t) {
  return superpose(std::span(&component, 1), grid, t);
}

LocalFields local_fields(std::span<const WaveComponent> components, const Grid1D& grid, double t) {
  return {weighted_sum(components, grid, t, [](const WaveComponent& c) { return c.momentum; }),
          weighted_sum(components, grid, t, [](const WaveComponent& c) { return c.energy; })};
}

Complex project_amplitude(const ComplexField& psi, double momentum, double energy, double t) {
  const Grid1D& grid = psi.axis();
  std::vector<Complex> integrand(psi.size());
  for (std::size_t i = 0; i < integrand.size(); ++i) {
    integrand[i] = std::polar(1.0, -momentum * grid.node(i)) * psi[i];
  }
  const Complex overlap = integrate(ComplexField(grid, std::move(integrand)));
  const double length = grid.xmax() - grid.xmin();
  return std::polar(1.0, energy * t) * overlap / (kSynthesisPrefactor * length);
}

std::vector<std::uint64_t> sample_counts(std::span<const double> weights, std::uint64_t trials,
                                         std::uint64_t seed) {
  if (weights.empty()) throw DomainError("weights: need at least one outcome");
  if (trials < 1) throw DomainError("trials: need at least one trial");
  std::vector<double> cumulative(weights.size());
  double total = 0.0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    if (!(weights[k] >= 0.0) || !std::isfinite(weights[k])) {
      throw DomainError("weights: must be finite and non-negative");
    }
    total += weights[k];
    cumulative[k] = total;
  }
  if (!(total > 0.0)) throw DomainError("weights: all outcome weights are zero");

  CounterRng rng(seed);
  std::vector<std::uint64_t> counts(weights.size(), 0);
  for (std::uint64_t trial = 0; trial < trials; ++trial) {
    const double u = rng.uniform() * total;
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    // u < total always, but rounding in the running sum can leave a gap.
    std::size_t k = it == cumulative.end() ? cumulative.size() - 1
                                           : static_cast<std::size_t>(it - cumulative.begin());
    while (weights[k] == 0.0 && k > 0) --k;
    ++counts[k];
  }
  return counts;
}

std::vector<std::uint64_t> measurement_histogram(std::span<const WaveComponent> components,
                                                 std::uint64_t trials, std::uint64_t seed) {
  require_components(components);
  std::vector<double> weights(components.size());
  for (std::size_t k = 0; k < weights.size(); ++k) weights[k] = std::norm(components[k].amplitude);
  return sample_counts(weights, trials, seed);
}

}  // namespace qedens
