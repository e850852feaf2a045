#pragma once

#include <vector>

#include "qedens/grid.hpp"

namespace qedens {

/// Hartree -> electron-volt conversion factor (CODATA).
inline constexpr double kHartreeInEv = 27.211386;
/// Hydrogen ground-state energy in hartree.
inline constexpr double kHydrogenGroundEnergy = -0.5;

/// Ground-state hydrogen densities sampled on a radial grid (a = 1, hartree).
struct HydrogenProfile {
  RadialGrid grid;
  std::vector<double> psi;
  std::vector<double> ke;         ///< (1/2)|grad psi|^2
  std::vector<double> k;          ///< -(1/2) psi lap psi, changes sign at r = 2
  std::vector<double> pe;         ///< -(1/r)|psi|^2
  std::vector<double> e_density;  ///< E |psi|^2 with E = -1/2
};

double psi1(double r);

/// Closed-form pointwise densities.
double hydrogen_ke(double r);
double hydrogen_k(double r);
double hydrogen_pe(double r);

HydrogenProfile hydrogen_profile(const RadialGrid& grid);

/// Volume integrals of a profile. Each total integrates its closed form
/// analytically over the core [0, rmin] and numerically over the grid.
struct HydrogenTotals {
  double ke;
  double k;
  double pe;
};
HydrogenTotals hydrogen_totals(const HydrogenProfile& profile);

/// Per-node E|psi|^2 - ke - pe; nonzero except on the shell r = 1.
std::vector<double> energy_balance_mismatch(const HydrogenProfile& profile);

/// Unit-normalized momentum amplitude a(p) = (2 sqrt 2 / pi)(1 + p^2)^-2.
double hydrogen_momentum_amplitude(double p);

double hartree_to_ev(double energy_hartree);

}  // namespace qedens
