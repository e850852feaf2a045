#include "qedens/hydrogen.hpp"

#include <cmath>

#include "qedens/errors.hpp"

namespace qedens {

double psi1(double r) {
  if (r < 0.0) throw DomainError("r: radius must be non-negative");
  return std::exp(-r) / std::sqrt(kPi);
}

double hydrogen_ke(double r) { return 0.5 * std::exp(-2.0 * r) / kPi; }

double hydrogen_k(double r) { return (1.0 / r - 0.5) * std::exp(-2.0 * r) / kPi; }

double hydrogen_pe(double r) { return -(1.0 / r) * std::exp(-2.0 * r) / kPi; }

HydrogenProfile hydrogen_profile(const RadialGrid& grid) {
  const std::size_t n = grid.size();
  HydrogenProfile p{grid, std::vector<double>(n), std::vector<double>(n), std::vector<double>(n),
                    std::vector<double>(n), std::vector<double>(n)};
  for (std::size_t i = 0; i < n; ++i) {
    const double r = grid.node(i);
    p.psi[i] = psi1(r);
    p.ke[i] = hydrogen_ke(r);
    p.k[i] = hydrogen_k(r);
    p.pe[i] = hydrogen_pe(r);
    p.e_density[i] = kHydrogenGroundEnergy * p.psi[i] * p.psi[i];
  }
  return p;
}

namespace {

// Incomplete moments of e^{-2r} on [0, a].
double moment1(double a) { return (1.0 - std::exp(-2.0 * a) * (1.0 + 2.0 * a)) / 4.0; }
double moment2(double a) { return (1.0 - std::exp(-2.0 * a) * (2.0 * a * a + 2.0 * a + 1.0)) / 4.0; }

double tail(const HydrogenProfile& p, const std::vector<double>& density) {
  // Axis rule only: the analytic core replaces the generic radial closure.
  return integrate(p.grid.axis(), [&] {
    std::vector<double> g(density.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = density[i] * p.grid.volume_weight(i);
    return g;
  }());
}

}  // namespace

HydrogenTotals hydrogen_totals(const HydrogenProfile& profile) {
  const double a = profile.grid.rmin();
  // 4 pi r^2 times the closed forms: ke -> 2 r^2 e^{-2r}, k -> (4r - 2r^2) e^{-2r},
  // pe -> -4 r e^{-2r}.
  const double ke_core = 2.0 * moment2(a);
  const double k_core = 4.0 * moment1(a) - 2.0 * moment2(a);
  const double pe_core = -4.0 * moment1(a);
  return {ke_core + tail(profile, profile.ke), k_core + tail(profile, profile.k),
          pe_core + tail(profile, profile.pe)};
}

std::vector<double> energy_balance_mismatch(const HydrogenProfile& profile) {
  std::vector<double> out(profile.psi.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = profile.e_density[i] - profile.ke[i] - profile.pe[i];
  }
  return out;
}

double hydrogen_momentum_amplitude(double p) {
  if (p < 0.0) throw DomainError("p: momentum magnitude must be non-negative");
  const double s = 1.0 + p * p;
  return 2.0 * std::sqrt(2.0) / kPi / (s * s);
}

double hartree_to_ev(double energy_hartree) { return energy_hartree * kHartreeInEv; }

}  // namespace qedens
