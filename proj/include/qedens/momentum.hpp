#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qedens/grid.hpp"

namespace qedens {

/// Momentum amplitudes a(p) of a spherically symmetric (s-state) field.
struct MomentumSpectrum {
  Grid1D p_axis;
  std::vector<double> amplitude;
  double normalization = 0.0;  ///< integral |a|^2 4 pi p^2 dp over the p axis
  std::optional<std::string> truncation_warning;
};

/// sin(z)/z with sinc(0) = 1.
double sinc(double z);

/// a(p) = sqrt(2/pi) integral psi(r) sinc(p r) r^2 dr on the radial grid
/// (core closure included). Fields with a non-decaying tail,
/// |psi(rmax)| rmax^2 > 1e-8, carry a truncation warning.
MomentumSpectrum radial_momentum_transform(const RadialGrid& grid, std::span<const double> psi,
                                           const Grid1D& p_axis);
/// Real part of a radial field.
MomentumSpectrum radial_momentum_transform(const ComplexField& psi, const Grid1D& p_axis);

/// psi(r) = sqrt(2/pi) integral a(p) sinc(p r) p^2 dp at every node of `grid`.
std::vector<double> roundtrip(const MomentumSpectrum& spectrum, const RadialGrid& grid);
/// Same synthesis at arbitrary radii.
std::vector<double> synthesize(const MomentumSpectrum& spectrum, std::span<const double> radii);

/// Default sampling: r in (1e-3, 60] with 6000 nodes, p in [0, 50] with 5000.
RadialGrid default_momentum_radial_grid();
Grid1D default_momentum_axis();

}  // namespace qedens
