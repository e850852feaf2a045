#include "qedens/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "qedens/errors.hpp"
#include "qedens/random.hpp"

namespace qedens {

std::string_view to_string(PotentialKind kind) {
  switch (kind) {
    case PotentialKind::infinite_well:
      return "infinite-well";
    case PotentialKind::harmonic:
      return "harmonic";
    case PotentialKind::finite_barrier:
      return "finite-barrier";
    case PotentialKind::coulomb_radial:
      return "coulomb-radial";
    case PotentialKind::custom_samples:
      return "custom-samples";
  }
  return "unknown";
}

PotentialKind parse_potential_kind(std::string_view name) {
  for (auto kind : {PotentialKind::infinite_well, PotentialKind::harmonic, PotentialKind::finite_barrier,
                    PotentialKind::coulomb_radial, PotentialKind::custom_samples}) {
    if (name == to_string(kind)) return kind;
  }
  throw DomainError("potential: unknown kind '" + std::string(name) + "'");
}

Potential Potential::infinite_well(double width) {
  if (!(width > 0.0)) throw DomainError("width: must be positive");
  Potential p;
  p.kind = PotentialKind::infinite_well;
  p.width = width;
  return p;
}

Potential Potential::harmonic(double omega) {
  Potential p;
  p.kind = PotentialKind::harmonic;
  p.omega = omega;
  return p;
}

Potential Potential::finite_barrier(double height, double width) {
  if (!(width > 0.0)) throw DomainError("width: must be positive");
  Potential p;
  p.kind = PotentialKind::finite_barrier;
  p.height = height;
  p.width = width;
  return p;
}

Potential Potential::coulomb(double charge) {
  Potential p;
  p.kind = PotentialKind::coulomb_radial;
  p.charge = charge;
  return p;
}

Potential Potential::custom(std::vector<std::pair<double, double>> samples) {
  if (samples.size() < 2) throw DomainError("samples: need at least two (x, V) pairs");
  std::sort(samples.begin(), samples.end());
  for (const auto& [x, v] : samples) {
    if (!std::isfinite(x) || !std::isfinite(v)) throw DomainError("samples: values must be finite");
  }
  Potential p;
  p.kind = PotentialKind::custom_samples;
  p.samples = std::move(samples);
  return p;
}

namespace {

double interpolate(const std::vector<std::pair<double, double>>& s, double x) {
  const double span = s.back().first - s.front().first;
  const double slack = 1e-12 * std::max(1.0, std::abs(span));
  if (x < s.front().first - slack || x > s.back().first + slack) {
    throw DomainError("samples: grid node " + std::to_string(x) + " lies outside the sampled range");
  }
  auto it = std::lower_bound(s.begin(), s.end(), x,
                             [](const std::pair<double, double>& a, double v) { return a.first < v; });
  if (it == s.begin()) return it->second;
  if (it == s.end()) return s.back().second;
  const auto& [x1, v1] = *it;
  const auto& [x0, v0] = *(it - 1);
  if (x1 == x0) return v1;
  return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
}

double potential_at(const Potential& p, double x) {
  switch (p.kind) {
    case PotentialKind::infinite_well:
      return 0.0;
    case PotentialKind::harmonic:
      return 0.5 * p.omega * p.omega * x * x;
    case PotentialKind::finite_barrier:
      return std::abs(x) < 0.5 * p.width ? p.height : 0.0;
    case PotentialKind::coulomb_radial:
      return -p.charge / x;
    case PotentialKind::custom_samples:
      return interpolate(p.samples, x);
  }
  return 0.0;
}

}  // namespace

std::vector<double> sample_potential(const Potential& potential, const Grid& grid) {
  if (std::holds_alternative<Grid2D>(grid)) throw DomainError("potential: 2D grids are not supported");
  const bool radial = std::holds_alternative<RadialGrid>(grid);
  const Grid1D& axis = radial ? std::get<RadialGrid>(grid).axis() : std::get<Grid1D>(grid);
  if (potential.kind == PotentialKind::coulomb_radial && !radial) {
    throw DomainError("potential: coulomb-radial needs a radial grid");
  }
  if (potential.kind == PotentialKind::infinite_well) {
    if (axis.periodic()) throw DomainError("potential: infinite-well needs a non-periodic grid");
    const double span = axis.xmax() - axis.xmin();
    if (std::abs(span - potential.width) > 1e-9 * potential.width) {
      throw DomainError("potential: infinite-well width must equal the grid span");
    }
  }
  std::vector<double> v(axis.size());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = potential_at(potential, axis.node(i));
  return v;
}

namespace {

const Grid1D& axis_of(const Grid& grid) {
  if (const auto* g1 = std::get_if<Grid1D>(&grid)) return *g1;
  if (const auto* gr = std::get_if<RadialGrid>(&grid)) return gr->axis();
  throw DomainError("hamiltonian: 2D grids are not supported");
}

struct Assembly {
  std::vector<double> scale;
  SymmetricTridiagonal matrix;
  SymmetricTridiagonal kinetic;
};

Assembly assemble(const Grid& grid, const std::vector<double>& v) {
  const Grid1D& axis = axis_of(grid);
  const double h = axis.spacing();
  const std::size_t n = axis.size();
  const double hop = -0.5 / (h * h);

  if (axis.periodic()) {
    std::vector<double> kin(n, 1.0 / (h * h));
    std::vector<double> full(kin);
    for (std::size_t i = 0; i < n; ++i) full[i] += v[i];
    std::vector<double> off(n - 1, hop);
    return {std::vector<double>(n, std::sqrt(h)), SymmetricTridiagonal(full, off, hop, true),
            SymmetricTridiagonal(kin, off, hop, true)};
  }

  if (const auto* radial = std::get_if<RadialGrid>(&grid)) {
    const std::size_t m = n - 1;
    const double r0 = radial->rmin();
    const double mass0 = (r0 + h) / (2.0 * h);
    std::vector<double> kin(m, 1.0 / (h * h));
    kin[0] = 0.5 * (1.0 / r0 + 1.0 / h) / h / mass0;
    std::vector<double> off(m - 1, hop);
    off[0] = hop / std::sqrt(mass0);
    std::vector<double> full(kin);
    for (std::size_t j = 0; j < m; ++j) full[j] += v[j];
    std::vector<double> scale(m);
    for (std::size_t j = 0; j < m; ++j) {
      const double mass = j == 0 ? mass0 : 1.0;
      scale[j] = std::sqrt(h * mass) * std::sqrt(4.0 * kPi) * radial->node(j);
    }
    return {std::move(scale), SymmetricTridiagonal(full, off), SymmetricTridiagonal(kin, off)};
  }

  const std::size_t m = n - 2;
  std::vector<double> kin(m, 1.0 / (h * h));
  std::vector<double> full(kin);
  for (std::size_t j = 0; j < m; ++j) full[j] += v[j + 1];
  std::vector<double> off(m > 0 ? m - 1 : 0, hop);
  return {std::vector<double>(m, std::sqrt(h)), SymmetricTridiagonal(full, off),
          SymmetricTridiagonal(kin, off)};
}

}  // namespace

Hamiltonian::Hamiltonian(const Potential& potential, Grid grid)
    : grid_(std::move(grid)),
      potential_(sample_potential(potential, grid_)),
      scale_(),
      matrix_({0.0}, {}),
      kinetic_({0.0}, {}) {
  Assembly a = assemble(grid_, potential_);
  scale_ = std::move(a.scale);
  matrix_ = std::move(a.matrix);
  kinetic_ = std::move(a.kinetic);
}

std::size_t Hamiltonian::first_node() const {
  const Grid1D& axis = axis_of(grid_);
  return axis.periodic() || radial() ? 0 : 1;
}

std::vector<Complex> Hamiltonian::to_unknowns(const ComplexField& psi) const {
  if (!same_grid(psi.grid(), grid_)) throw StructuralError("hamiltonian: field lives on another grid");
  const std::size_t offset = first_node();
  std::vector<Complex> v(unknowns());
  for (std::size_t j = 0; j < v.size(); ++j) v[j] = scale_[j] * psi[offset + j];
  return v;
}

ComplexField Hamiltonian::to_field(std::span<const Complex> v) const {
  if (v.size() != unknowns()) throw StructuralError("hamiltonian: unknown vector has the wrong size");
  ComplexField psi(grid_);
  const std::size_t offset = first_node();
  for (std::size_t j = 0; j < v.size(); ++j) psi[offset + j] = v[j] / scale_[j];
  return psi;
}

ComplexField Hamiltonian::apply(const ComplexField& psi) const {
  if (radial()) {
    const auto v = to_unknowns(psi);
    return to_field(matrix_.apply(std::span<const Complex>(v)));
  }
  // Uniform scaling cancels; act on the node values directly so that
  // constants on a ring come back exact.
  if (!same_grid(psi.grid(), grid_)) throw StructuralError("hamiltonian: field lives on another grid");
  const std::size_t offset = first_node();
  const std::span<const Complex> inner(psi.values().data() + offset, unknowns());
  const auto kin = kinetic_.apply(inner);
  ComplexField out(grid_);
  for (std::size_t j = 0; j < kin.size(); ++j) out[offset + j] = kin[j] + potential_[offset + j] * inner[j];
  return out;
}

Hamiltonian build_hamiltonian(const Potential& potential, const Grid& grid) {
  return Hamiltonian(potential, grid);
}

Residual schrodinger_residual(const ComplexField& psi, double energy, std::span<const double> potential,
                              Stencil stencil) {
  if (psi.is_2d()) throw DomainError("schrodinger_residual: 2D fields are not supported");
  if (potential.size() != psi.size()) throw StructuralError("schrodinger_residual: potential size mismatch");
  const Grid1D& axis = psi.axis();
  const std::size_t n = psi.size();
  std::vector<Complex> f(psi.values().begin(), psi.values().end());
  if (const auto* radial = std::get_if<RadialGrid>(&psi.grid())) {
    for (std::size_t i = 0; i < n; ++i) f[i] *= std::sqrt(4.0 * kPi) * radial->node(i);
  }
  std::vector<Complex> d2;
  if (stencil == Stencil::five_point) {
    d2 = differentiate(axis, f, 2);
  } else {
    const double h2 = axis.spacing() * axis.spacing();
    d2.assign(n, Complex{0.0, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
      if (!axis.periodic() && (i == 0 || i + 1 == n)) continue;
      d2[i] = (f[(i + n - 1) % n] - 2.0 * f[i] + f[(i + 1) % n]) / h2;
    }
  }
  Residual out{ComplexField(psi.grid()), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    if (!axis.periodic() && (i == 0 || i + 1 == n)) continue;
    out.field[i] = energy * f[i] + 0.5 * d2[i] - potential[i] * f[i];
    out.max = std::max(out.max, std::abs(out.field[i]));
  }
  return out;
}

namespace {

using CVec = std::vector<Complex>;

double dot_re(const CVec& a, const CVec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::real(std::conj(a[i]) * b[i]);
  return s;
}

Complex dot(const CVec& a, const CVec& b) {
  Complex s{0.0, 0.0};
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const CVec& a) { return std::sqrt(dot_re(a, a)); }

void scale(CVec& a, double s) {
  for (auto& x : a) x *= s;
}

void orthogonalize(CVec& x, const std::vector<CVec>& basis) {
  // Two passes of modified Gram-Schmidt.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const Complex c = dot(b, x);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * b[i];
    }
  }
}

double rayleigh(const SymmetricTridiagonal& h, const CVec& x) {
  const auto hx = h.apply(std::span<const Complex>(x));
  return dot_re(x, hx) / dot_re(x, x);
}

struct Evaluation {
  ComplexField field;
  double residual = 0.0;
};

Evaluation evaluate(const Hamiltonian& ham, const CVec& v, double energy) {
  ComplexField field = normalized(ham.to_field(v));
  const double r = schrodinger_residual(field, energy, ham.potential()).max;
  return {std::move(field), r};
}

CVec half_sine(std::size_t m, std::size_t mode) {
  CVec x(m);
  for (std::size_t j = 0; j < m; ++j) {
    x[j] = std::sin(kPi * static_cast<double>(mode * (j + 1)) / static_cast<double>(m + 1));
  }
  return x;
}

// Eigenvalue k (0-based) of H bracketed by Sturm-count bisection.
std::pair<double, double> bracket(const SymmetricTridiagonal& h, std::size_t k) {
  auto [lo, hi] = h.spectral_bounds();
  const double pad = 1e-8 * std::max(1.0, hi - lo);
  lo -= pad;
  hi += pad;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (hi - lo <= 1e-12 * std::max({1.0, std::abs(lo), std::abs(hi)})) break;
    if (h.count_below(mid) > k) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return {lo, hi};
}

EigenResult inverse_iteration(const Hamiltonian& ham, std::size_t k, CVec start,
                              const std::vector<CVec>& deflate, const SolverOptions& opt,
                              CVec* vector_out) {
  const auto& h = ham.matrix();
  const auto [lo, hi] = bracket(h, k);
  double shift = 0.5 * (lo + hi);
  CVec x = std::move(start);
  orthogonalize(x, deflate);
  if (norm(x) == 0.0) x = half_sine(x.size(), 1);
  scale(x, 1.0 / norm(x));

  double energy = rayleigh(h, x);
  std::size_t it = 0;
  bool converged = false;
  Evaluation eval{ComplexField(ham.grid()), 0.0};
  while (it < opt.max_iterations) {
    ++it;
    CVec y = h.solve(shift, std::span<const Complex>(x));
    orthogonalize(y, deflate);
    const double ny = norm(y);
    if (!(ny > 0.0) || !std::isfinite(ny)) break;
    scale(y, 1.0 / ny);
    x = std::move(y);
    energy = rayleigh(h, x);
    // Rayleigh-quotient shift, kept inside the Sturm bracket of eigenvalue k.
    const double next = energy >= lo && energy <= hi ? energy : shift;
    const bool settled = std::abs(next - shift) <= opt.shift_tolerance * std::max(1.0, std::abs(shift));
    shift = next;
    if (settled && it >= 2) {
      eval = evaluate(ham, x, energy);
      if (eval.residual <= opt.residual_tolerance) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) eval = evaluate(ham, x, energy);
  std::ostringstream diag;
  diag << "inverse iteration: eigenvalue " << k << " bracket [" << lo << ", " << hi << "], " << it
       << " solves";
  if (!converged) diag << ", not converged (residual " << eval.residual << ")";
  if (vector_out != nullptr) *vector_out = x;
  return {energy, std::move(eval.field), eval.residual, it, converged, diag.str()};
}

CVec start_vector(std::size_t m, std::size_t k) {
  // Mode k+1 half-sine with a small deterministic perturbation so the start is
  // never exactly orthogonal to the target.
  CVec x = half_sine(m, k + 1);
  CounterRng rng(0x51A7ULL + k);
  for (auto& v : x) v += 1e-3 * (rng.uniform() - 0.5);
  return x;
}

}  // namespace

EigenResult ground_state(const Potential& potential, const Grid& grid, const SolverOptions& options) {
  const Hamiltonian ham(potential, grid);
  return inverse_iteration(ham, 0, half_sine(ham.unknowns(), 1), {}, options, nullptr);
}

std::vector<EigenResult> excited_states(const Potential& potential, const Grid& grid, std::size_t count,
                                        const SolverOptions& options) {
  if (count < 1) throw DomainError("count: need at least one eigenpair");
  const Hamiltonian ham(potential, grid);
  if (count > ham.unknowns()) throw DomainError("count: more eigenpairs than unknowns");
  std::vector<EigenResult> out;
  std::vector<CVec> found;
  for (std::size_t k = 0; k < count; ++k) {
    CVec vec;
    CVec start = k == 0 ? half_sine(ham.unknowns(), 1) : start_vector(ham.unknowns(), k);
    out.push_back(inverse_iteration(ham, k, std::move(start), found, options, &vec));
    found.push_back(std::move(vec));
  }
  return out;
}

double energy_functional(const Hamiltonian& hamiltonian, const ComplexField& psi) {
  const auto v = hamiltonian.to_unknowns(psi);
  const double n = dot_re(v, v);
  if (!(n > 0.0)) throw DomainError("energy_functional: field has zero norm");
  return rayleigh(hamiltonian.matrix(), v);
}

EigenResult variational_minimize(const Potential& potential, const Grid& grid, const ComplexField& init,
                                 const VariationalOptions& opt) {
  const Hamiltonian ham(potential, grid);
  const auto& h = ham.matrix();
  CVec x = ham.to_unknowns(init);
  const double n0 = norm(x);
  if (!(n0 > 0.0) || !std::isfinite(n0)) throw DomainError("init: field has zero norm");
  scale(x, 1.0 / n0);

  auto hx = h.apply(std::span<const Complex>(x));
  double energy = dot_re(x, hx);
  auto gradient = [&](const CVec& hxv, double e) {
    CVec g(x.size());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = hxv[i] - e * x[i];
    return g;
  };
  CVec g = gradient(hx, energy);
  CVec z_prev;
  CVec g_prev;
  CVec d_prev;
  double last_decrease = 0.0;
  std::size_t it = 0;
  bool converged = false;
  std::string failure;
  Evaluation eval = evaluate(ham, x, energy);

  while (true) {
    if (eval.residual <= opt.residual_tolerance) {
      converged = true;
      break;
    }
    if (it >= opt.max_iterations) {
      failure = "iteration limit reached";
      break;
    }
    ++it;

    // Preconditioned gradient, projected onto the tangent space of the sphere.
    CVec z = opt.preconditioned ? ham.kinetic().solve(-opt.preconditioner_shift, std::span<const Complex>(g))
                                : g;
    {
      const Complex c = dot(x, z);
      for (std::size_t i = 0; i < z.size(); ++i) z[i] -= c * x[i];
    }
    CVec d(z.size());
    double beta = 0.0;
    if (opt.step == StepPolicy::conjugate && !d_prev.empty()) {
      double num = 0.0;
      for (std::size_t i = 0; i < z.size(); ++i) num += std::real(std::conj(z[i]) * (g[i] - g_prev[i]));
      const double den = dot_re(z_prev, g_prev);
      beta = den > 0.0 ? std::max(0.0, num / den) : 0.0;
    }
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = -z[i] + (beta != 0.0 ? beta * d_prev[i] : Complex{});
    {
      const Complex c = dot(x, d);
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= c * x[i];
    }
    if (dot_re(d, g) >= 0.0) {
      // Not a descent direction: restart from the plain preconditioned gradient.
      for (std::size_t i = 0; i < d.size(); ++i) d[i] = -z[i];
    }
    const double nd = norm(d);
    if (!(nd > 0.0)) {
      failure = "zero search direction";
      break;
    }
    CVec dhat = d;
    scale(dhat, 1.0 / nd);

    // Energy along the great circle x cos(t) + dhat sin(t):
    //   E(t) = (a + c)/2 + (a - c)/2 cos 2t + b sin 2t.
    const auto hd = h.apply(std::span<const Complex>(dhat));
    const double a = energy;
    const double b = dot_re(x, hd);
    const double c = dot_re(dhat, hd);
    auto energy_at = [&](double t) {
      return 0.5 * (a + c) + 0.5 * (a - c) * std::cos(2.0 * t) + b * std::sin(2.0 * t);
    };
    double step = 0.5 * std::atan2(-b, 0.5 * (c - a));
    const double slope = 2.0 * b;
    std::size_t halvings = 0;
    while (energy_at(step) > a + opt.armijo * step * slope) {
      if (++halvings > opt.max_halvings) break;
      step *= 0.5;
    }
    if (halvings > opt.max_halvings) {
      failure = "step collapse: backtracking exhausted";
      break;
    }

    const double cs = std::cos(step);
    const double sn = std::sin(step);
    for (std::size_t i = 0; i < x.size(); ++i) {
      x[i] = cs * x[i] + sn * dhat[i];
      hx[i] = cs * hx[i] + sn * hd[i];
    }
    const double nx = norm(x);
    scale(x, 1.0 / nx);
    scale(hx, 1.0 / nx);
    const double next = dot_re(x, hx);
    last_decrease = energy - next;
    energy = next;

    g_prev = std::move(g);
    z_prev = std::move(z);
    d_prev = std::move(d);
    g = gradient(hx, energy);
    eval = evaluate(ham, x, energy);
  }

  std::ostringstream diag;
  diag << "projected " << (opt.step == StepPolicy::conjugate ? "conjugate" : "steepest") << " descent"
       << (opt.preconditioned ? " (kinetic preconditioner)" : "") << ": " << it
       << " steps, last energy decrease " << last_decrease;
  if (!converged) diag << "; not converged: " << failure << " (residual " << eval.residual << ")";
  return {energy, std::move(eval.field), eval.residual, it, converged, diag.str()};
}

EigenResult variational_minimize(const Potential& potential, const Grid& grid, const VariationalOptions& opt) {
  const Hamiltonian ham(potential, grid);
  CounterRng rng(opt.seed);
  CVec v(ham.unknowns());
  for (auto& x : v) x = 2.0 * rng.uniform() - 1.0;
  return variational_minimize(potential, grid, ham.to_field(v), opt);
}

}  // namespace qedens
