#include "qedens/densities.hpp"

#include <cmath>
#include <complex>

#include "qedens/errors.hpp"

namespace qedens {

namespace {

std::vector<ComplexField> gradient(const ComplexField& psi) {
  if (psi.is_2d()) return {derivative(psi, 1, Axis::x), derivative(psi, 1, Axis::y)};
  return {derivative(psi, 1)};
}

ComplexField laplacian(const ComplexField& psi) {
  if (psi.is_2d()) return derivative(psi, 2, Axis::x) + derivative(psi, 2, Axis::y);
  ComplexField lap = derivative(psi, 2);
  if (const auto* radial = std::get_if<RadialGrid>(&psi.grid())) {
    const ComplexField d1 = derivative(psi, 1);
    for (std::size_t i = 0; i < lap.size(); ++i) lap[i] += 2.0 * d1[i] / radial->node(i);
  }
  return lap;
}

std::vector<Complex> laplacian_form(const ComplexField& psi) {
  const ComplexField lap = laplacian(psi);
  std::vector<Complex> out(psi.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -0.5 * std::conj(psi[i]) * lap[i];
  return out;
}

void require_potential(const ComplexField& psi, std::span<const double> potential) {
  if (potential.size() != psi.size()) {
    throw StructuralError("potential: " + std::to_string(potential.size()) +
                          " samples for a field of " + std::to_string(psi.size()) + " nodes");
  }
}

double flux(Complex value, Complex slope) { return 0.5 * std::real(std::conj(value) * slope); }

}  // namespace

std::vector<double> ke_density(const ComplexField& psi) {
  std::vector<double> ke(psi.size(), 0.0);
  for (const auto& component : gradient(psi)) {
    for (std::size_t i = 0; i < ke.size(); ++i) ke[i] += 0.5 * std::norm(component[i]);
  }
  return ke;
}

std::vector<double> k_density(const ComplexField& psi) {
  const auto form = laplacian_form(psi);
  std::vector<double> k(form.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = form[i].real();
  return k;
}

std::vector<double> k_density_imag(const ComplexField& psi) {
  const auto form = laplacian_form(psi);
  std::vector<double> k(form.size());
  for (std::size_t i = 0; i < k.size(); ++i) k[i] = form[i].imag();
  return k;
}

std::vector<double> pe_density(const ComplexField& psi, std::span<const double> potential) {
  require_potential(psi, potential);
  std::vector<double> pe(psi.size());
  for (std::size_t i = 0; i < pe.size(); ++i) pe[i] = potential[i] * std::norm(psi[i]);
  return pe;
}

ComplexField local_momentum(const ComplexField& psi) {
  ComplexField p = derivative(psi, 1);
  p *= Complex(0.0, -1.0);
  return p;
}

ComplexField local_momentum(const ComplexField& psi, Axis axis) {
  ComplexField p = derivative(psi, 1, axis);
  p *= Complex(0.0, -1.0);
  return p;
}

ComplexField local_lz(const ComplexField& psi) {
  if (!psi.is_2d()) throw DomainError("local_lz: needs a 2D field");
  const auto& g = std::get<Grid2D>(psi.grid());
  const ComplexField px = local_momentum(psi, Axis::x);
  const ComplexField py = local_momentum(psi, Axis::y);
  ComplexField lz(psi.grid());
  for (std::size_t iy = 0; iy < g.y().size(); ++iy) {
    for (std::size_t ix = 0; ix < g.x().size(); ++ix) {
      const std::size_t i = g.index(ix, iy);
      lz[i] = g.x().node(ix) * py[i] - g.y().node(iy) * px[i];
    }
  }
  return lz;
}

double surface_term(const ComplexField& psi) {
  if (const auto* g1 = std::get_if<Grid1D>(&psi.grid())) {
    if (g1->periodic()) return 0.0;
    const auto v = psi.values();
    const std::size_t n = v.size();
    return flux(v[n - 1], boundary_derivative(*g1, v, Side::upper)) -
           flux(v[0], boundary_derivative(*g1, v, Side::lower));
  }
  if (const auto* gr = std::get_if<RadialGrid>(&psi.grid())) {
    // Outer sphere only; the core [0, rmin] is part of the radial quadrature.
    const auto v = psi.values();
    const std::size_t n = v.size();
    return gr->volume_weight(n - 1) * flux(v[n - 1], boundary_derivative(gr->axis(), v, Side::upper));
  }
  const auto& g = std::get<Grid2D>(psi.grid());
  if (g.x().periodic()) return 0.0;
  const std::size_t nx = g.x().size();
  const std::size_t ny = g.y().size();
  double total = 0.0;
  std::vector<Complex> line;
  // Edges x = xmin, xmax: outward normal derivative is -/+ d/dx.
  line.resize(nx);
  for (std::size_t iy = 0; iy < ny; ++iy) {
    for (std::size_t ix = 0; ix < nx; ++ix) line[ix] = psi[g.index(ix, iy)];
    const double edge = flux(line[nx - 1], boundary_derivative(g.x(), line, Side::upper)) -
                        flux(line[0], boundary_derivative(g.x(), line, Side::lower));
    total += g.y().weights()[iy] * edge;
  }
  line.resize(ny);
  for (std::size_t ix = 0; ix < nx; ++ix) {
    for (std::size_t iy = 0; iy < ny; ++iy) line[iy] = psi[g.index(ix, iy)];
    const double edge = flux(line[ny - 1], boundary_derivative(g.y(), line, Side::upper)) -
                        flux(line[0], boundary_derivative(g.y(), line, Side::lower));
    total += g.x().weights()[ix] * edge;
  }
  return total;
}

DensityProfile density_profile(const ComplexField& psi, std::span<const double> potential,
                               double energy) {
  require_potential(psi, potential);
  const auto form = laplacian_form(psi);
  DensityProfile d{psi, ke_density(psi), std::vector<double>(psi.size()),
                   std::vector<double>(psi.size()), pe_density(psi, potential),
                   std::vector<double>(psi.size())};
  for (std::size_t i = 0; i < psi.size(); ++i) {
    d.k[i] = form[i].real();
    d.k_imag[i] = form[i].imag();
    d.e_density[i] = energy * std::norm(psi[i]);
  }
  return d;
}

EnergyReport totals(const ComplexField& psi, std::span<const double> potential, double energy) {
  const DensityProfile d = density_profile(psi, potential, energy);
  const Grid& grid = psi.grid();
  EnergyReport r;
  r.norm2 = norm2(psi);
  r.ke_total = integrate(grid, d.ke);
  r.k_total = integrate(grid, d.k);
  r.k_imag_total = integrate(grid, d.k_imag);
  r.pe_total = integrate(grid, d.pe);
  r.e_total = integrate(grid, d.e_density);
  r.surface_term = surface_term(psi);
  return r;
}

}  // namespace qedens
