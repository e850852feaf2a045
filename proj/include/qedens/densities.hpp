#pragma once

#include <span>
#include <vector>

#include "qedens/grid.hpp"

namespace qedens {

/// Local energy densities of one wavefunction (hartree per unit volume).
struct DensityProfile {
  ComplexField source;
  std::vector<double> ke;      ///< gradient form (1/2)|grad psi|^2
  std::vector<double> k;       ///< Laplacian form Re[-(1/2) psi* lap psi]
  std::vector<double> k_imag;  ///< Im[-(1/2) psi* lap psi], debug only
  std::vector<double> pe;
  std::vector<double> e_density;
};

struct EnergyReport {
  double ke_total = 0.0;
  double k_total = 0.0;
  double k_imag_total = 0.0;
  double pe_total = 0.0;
  double e_total = 0.0;
  /// Boundary flux (1/2) Re[psi* d psi/dn]; ke_total = k_total + surface_term.
  double surface_term = 0.0;
  double norm2 = 0.0;
};

/// Radial fields are treated as s-states: the gradient is d/dr and the
/// Laplacian is psi'' + (2/r) psi'. 2D fields sum both axes.
std::vector<double> ke_density(const ComplexField& psi);
std::vector<double> k_density(const ComplexField& psi);
std::vector<double> k_density_imag(const ComplexField& psi);
std::vector<double> pe_density(const ComplexField& psi, std::span<const double> potential);

/// -i d psi/dx. This is the amplitude-weighted local momentum, not an
/// expectation value. 2D fields need the axis overload.
ComplexField local_momentum(const ComplexField& psi);
ComplexField local_momentum(const ComplexField& psi, Axis axis);

/// x p_y - y p_x on a 2D field.
ComplexField local_lz(const ComplexField& psi);

/// Boundary term of the integration by parts relating the two kinetic forms.
double surface_term(const ComplexField& psi);

DensityProfile density_profile(const ComplexField& psi, std::span<const double> potential,
                               double energy);

/// `energy` is the caller's eigenvalue; it is never inferred from psi.
EnergyReport totals(const ComplexField& psi, std::span<const double> potential, double energy);

}  // namespace qedens
