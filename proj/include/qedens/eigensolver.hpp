#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qedens/grid.hpp"
#include "qedens/tridiagonal.hpp"

namespace qedens {

enum class PotentialKind { infinite_well, harmonic, finite_barrier, coulomb_radial, custom_samples };

std::string_view to_string(PotentialKind kind);
/// Accepts the hyphenated names: "infinite-well", "harmonic", "finite-barrier",
/// "coulomb-radial", "custom-samples".
PotentialKind parse_potential_kind(std::string_view name);

/// External potential V(x). Only the parameters of `kind` are used.
struct Potential {
  PotentialKind kind = PotentialKind::harmonic;
  double width = 1.0;   ///< well width, or barrier width (barrier centred on x = 0)
  double omega = 1.0;   ///< oscillator frequency, V = omega^2 x^2 / 2
  double height = 0.0;  ///< barrier height
  double charge = 1.0;  ///< nuclear charge Z, V = -Z / r
  std::vector<std::pair<double, double>> samples;  ///< (x, V), linearly interpolated

  static Potential infinite_well(double width);
  static Potential harmonic(double omega);
  static Potential finite_barrier(double height, double width);
  static Potential coulomb(double charge);
  static Potential custom(std::vector<std::pair<double, double>> samples);
};

/// V at every node of `grid`. Coulomb needs a RadialGrid; the infinite well
/// needs a non-periodic grid spanning exactly its width.
std::vector<double> sample_potential(const Potential& potential, const Grid& grid);

/// -(1/2) D2 + V with the three-point stencil, restricted to the unknown
/// nodes of the grid.
///
/// Unknowns: every node on periodic grids (cyclic matrix); interior nodes on
/// Dirichlet/decaying grids; nodes 0..n-2 of a radial grid, where the
/// reduced function u = sqrt(4 pi) r psi vanishes at the origin and at rmax.
/// The first radial cell spans [0, r_0] to [r_0, r_1], so its row carries a
/// mass weight m_0 = (rmin + h) / 2h that is symmetrized into the matrix:
/// the stored operator acts on v_j = sqrt(h m_j) u_j, making the discrete
/// energy functional the plain Rayleigh quotient v^H H v / v^H v.
class Hamiltonian {
 public:
  Hamiltonian(const Potential& potential, Grid grid);

  const Grid& grid() const { return grid_; }
  const SymmetricTridiagonal& matrix() const { return matrix_; }
  /// Matrix without the potential; used as a preconditioner.
  const SymmetricTridiagonal& kinetic() const { return kinetic_; }
  std::span<const double> potential() const { return potential_; }
  std::size_t unknowns() const { return matrix_.size(); }
  bool radial() const { return std::holds_alternative<RadialGrid>(grid_); }

  std::vector<Complex> apply(std::span<const Complex> v) const { return matrix_.apply(v); }
  /// H applied to a field on the grid; boundary nodes of the result are zero.
  ComplexField apply(const ComplexField& psi) const;

  /// Field <-> unknown-vector maps (see class comment for the scaling).
  std::vector<Complex> to_unknowns(const ComplexField& psi) const;
  ComplexField to_field(std::span<const Complex> v) const;

 private:
  std::size_t first_node() const;

  Grid grid_;
  std::vector<double> potential_;
  std::vector<double> scale_;  // v_j = scale_j * (psi or u at node first_node + j)
  SymmetricTridiagonal matrix_;
  SymmetricTridiagonal kinetic_;
};

Hamiltonian build_hamiltonian(const Potential& potential, const Grid& grid);

struct EigenResult {
  double energy = 0.0;
  ComplexField field;  ///< unit norm; on radial grids the 3D psi = u / (sqrt(4 pi) r)
  double residual_max = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  std::string diagnostics;
};

struct SolverOptions {
  double residual_tolerance = 1e-6;
  double shift_tolerance = 1e-10;  ///< relative change of the Rayleigh shift
  std::size_t max_iterations = 10000;
};

/// Lowest eigenpair by inverse iteration with Rayleigh-quotient shifts.
/// The starting vector is the positive half-sine over the unknowns.
EigenResult ground_state(const Potential& potential, const Grid& grid, const SolverOptions& options = {});

/// The `count` lowest eigenpairs, deflated against each other.
std::vector<EigenResult> excited_states(const Potential& potential, const Grid& grid, std::size_t count,
                                        const SolverOptions& options = {});

enum class StepPolicy { steepest, conjugate };

struct VariationalOptions {
  StepPolicy step = StepPolicy::conjugate;
  bool preconditioned = true;      ///< (T + shift)^{-1} kinetic preconditioner
  double preconditioner_shift = 1.0;
  double armijo = 1e-4;            ///< sufficient-decrease constant
  std::size_t max_halvings = 60;
  double residual_tolerance = 1e-6;
  std::size_t max_iterations = 10000;
  std::uint64_t seed = 42;         ///< random initial field when none is given
};

/// Minimizes E[psi] = integral (1/2)|psi'|^2 + V |psi|^2 over unit-norm
/// fields by projected gradient descent on the sphere, renormalizing after
/// each step. Stops when the pointwise Schrodinger residual drops below the
/// tolerance.
EigenResult variational_minimize(const Potential& potential, const Grid& grid, const ComplexField& init,
                                 const VariationalOptions& options = {});
/// Same, starting from a seeded random field.
EigenResult variational_minimize(const Potential& potential, const Grid& grid,
                                 const VariationalOptions& options = {});

/// Discrete energy functional (Rayleigh quotient) of any nonzero field.
double energy_functional(const Hamiltonian& hamiltonian, const ComplexField& psi);

enum class Stencil { three_point, five_point };

struct Residual {
  ComplexField field;
  double max = 0.0;  ///< max |r| over interior nodes (all nodes when periodic)
};

/// r = E psi + (1/2) psi'' - V psi. Radial fields are converted to the
/// reduced function u = sqrt(4 pi) r psi first, so r is the residual of the
/// s-wave equation for u. The three-point stencil matches the Hamiltonian.
Residual schrodinger_residual(const ComplexField& psi, double energy, std::span<const double> potential,
                              Stencil stencil = Stencil::three_point);

}  // namespace qedens
