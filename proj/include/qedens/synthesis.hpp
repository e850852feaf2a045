#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qedens/grid.hpp"

namespace qedens {

/// One virtual motion: a constant-amplitude wave a e^{i(p x - E t)}.
struct WaveComponent {
  Complex amplitude;
  double momentum = 0.0;
  double energy = 0.0;

  /// Free-particle component with E = p^2 / 2.
  static WaveComponent free(Complex amplitude, double momentum) {
    return {amplitude, momentum, 0.5 * momentum * momentum};
  }
};

/// Per-dimension normalization of the plane-wave sum.
inline constexpr double kSynthesisPrefactor = 0.39894228040143267794;  // (2 pi)^{-1/2}

/// psi(x, t) = (2 pi)^{-1/2} sum_k a_k e^{i(p_k x - E_k t)}.
ComplexField superpose(std::span<const WaveComponent> components, const Grid1D& grid, double t);

/// One component on its own (the k-th term of `superpose`).
ComplexField component_wave(const WaveComponent& component, const Grid1D& grid, double t);

struct LocalFields {
  ComplexField momentum;  ///< (2 pi)^{-1/2} sum p_k a_k e^{...}
  ComplexField energy;    ///< (2 pi)^{-1/2} sum E_k a_k e^{...}
};

/// Analytic local momentum and energy fields; no numeric differencing.
LocalFields local_fields(std::span<const WaveComponent> components, const Grid1D& grid, double t);

/// Recovers the amplitude of the wave with momentum p from a sampled field by
/// projection over the grid: a = sqrt(2 pi) e^{iEt} / L * integral e^{-ipx} psi.
/// Exact on periodic grids for exact wavenumbers.
Complex project_amplitude(const ComplexField& psi, double momentum, double energy, double t);

/// Draws `trials` outcomes with probabilities weights[k] / sum(weights) and
/// returns per-outcome counts. Deterministic for a given seed.
std::vector<std::uint64_t> sample_counts(std::span<const double> weights, std::uint64_t trials,
                                         std::uint64_t seed);

/// Measurement outcomes over components, weighted by |a_k|^2.
std::vector<std::uint64_t> measurement_histogram(std::span<const WaveComponent> components,
                                                 std::uint64_t trials, std::uint64_t seed);

}  // namespace qedens
