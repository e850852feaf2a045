#include "qedens/momentum.hpp"

#include <cmath>
#include <sstream>

#include "qedens/errors.hpp"

namespace qedens {

namespace {
const double kTransformPrefactor = std::sqrt(2.0 / kPi);
}

double sinc(double z) {
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return 1.0 - z2 / 6.0 + z2 * z2 / 120.0;
  }
  return std::sin(z) / z;
}

MomentumSpectrum radial_momentum_transform(const RadialGrid& grid, std::span<const double> psi,
                                           const Grid1D& p_axis) {
  if (psi.size() != grid.size()) throw StructuralError("momentum transform: field size does not match grid");
  if (p_axis.xmin() < 0.0) throw DomainError("p_samples: momenta must be non-negative");
  if (p_axis.periodic()) throw DomainError("p_samples: momentum axis cannot be periodic");

  MomentumSpectrum s{p_axis, std::vector<double>(p_axis.size()), 0.0, std::nullopt};
  const std::size_t nr = grid.size();
  std::vector<double> integrand(nr);
  for (std::size_t k = 0; k < p_axis.size(); ++k) {
    const double p = p_axis.node(k);
    for (std::size_t i = 0; i < nr; ++i) integrand[i] = psi[i] * sinc(p * grid.node(i));
    // The radial rule applies 4 pi r^2; the transform wants r^2.
    s.amplitude[k] = kTransformPrefactor * integrate(Grid{grid}, integrand) / (4.0 * kPi);
  }

  std::vector<double> weight(p_axis.size());
  for (std::size_t k = 0; k < weight.size(); ++k) {
    const double p = p_axis.node(k);
    weight[k] = s.amplitude[k] * s.amplitude[k] * 4.0 * kPi * p * p;
  }
  s.normalization = integrate(p_axis, weight);

  const double tail = std::abs(psi[nr - 1]) * grid.rmax() * grid.rmax();
  if (tail > 1e-8) {
    std::ostringstream msg;
    msg << "field does not decay: |psi(rmax)| rmax^2 = " << tail << " > 1e-8";
    s.truncation_warning = msg.str();
  }
  return s;
}

MomentumSpectrum radial_momentum_transform(const ComplexField& psi, const Grid1D& p_axis) {
  const auto* grid = std::get_if<RadialGrid>(&psi.grid());
  if (grid == nullptr) throw DomainError("momentum transform: needs a radial field");
  std::vector<double> re(psi.size());
  for (std::size_t i = 0; i < re.size(); ++i) re[i] = psi[i].real();
  return radial_momentum_transform(*grid, re, p_axis);
}

std::vector<double> synthesize(const MomentumSpectrum& spectrum, std::span<const double> radii) {
  const Grid1D& axis = spectrum.p_axis;
  std::vector<double> out(radii.size());
  std::vector<double> integrand(axis.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    for (std::size_t k = 0; k < axis.size(); ++k) {
      const double p = axis.node(k);
      integrand[k] = spectrum.amplitude[k] * sinc(p * radii[i]) * p * p;
    }
    out[i] = kTransformPrefactor * integrate(axis, integrand);
  }
  return out;
}

std::vector<double> roundtrip(const MomentumSpectrum& spectrum, const RadialGrid& grid) {
  return synthesize(spectrum, grid.nodes());
}

RadialGrid default_momentum_radial_grid() { return RadialGrid(RadialGrid::kDefaultRmin, 60.0, 6000); }

Grid1D default_momentum_axis() { return Grid1D(0.0, 50.0, 5000, Boundary::decaying); }

}  // namespace qedens
