#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "qedens/densities.hpp"
#include "qedens/eigensolver.hpp"
#include "qedens/errors.hpp"
#include "qedens/grid.hpp"
#include "qedens/hydrogen.hpp"
#include "qedens/interference.hpp"
#include "qedens/momentum.hpp"
#include "qedens/random.hpp"
#include "qedens/synthesis.hpp"

namespace qedens::cli {
namespace {

using json = nlohmann::ordered_json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header) : file_(path, std::ios::binary) {
    if (!file_) throw UsageError("cannot write " + path);
    for (std::size_t i = 0; i < header.size(); ++i) file_ << (i ? "," : "") << header[i];
    file_ << '\n';
  }
  void row(const std::vector<double>& values) {
    for (std::size_t i = 0; i < values.size(); ++i) file_ << (i ? "," : "") << num(values[i]);
    file_ << '\n';
  }

 private:
  std::ofstream file_;
};

/// Rows of a numeric CSV; a non-numeric first line is taken as the header.
std::vector<std::vector<double>> read_csv(const std::string& path, std::size_t min_columns) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(ss, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
      } catch (const std::exception&) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw UsageError(path + ": non-numeric row '" + line + "'");
    }
    first = false;
    if (row.size() < min_columns) throw UsageError(path + ": expected at least " + std::to_string(min_columns) + " columns");
    rows.push_back(std::move(row));
  }
  if (rows.size() < 3) throw UsageError(path + ": need at least 3 rows");
  return rows;
}

/// First column must be uniformly spaced; returns (min, max).
std::pair<double, double> uniform_span(const std::vector<std::vector<double>>& rows) {
  const double a = rows.front()[0];
  const double b = rows.back()[0];
  const double h = (b - a) / static_cast<double>(rows.size() - 1);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (std::abs(rows[i][0] - (a + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, std::abs(b - a))) {
      throw UsageError("input grid is not uniformly spaced");
    }
  }
  return {a, b};
}

json parse_json_argument(const std::string& text) {
  try {
    if (!text.empty() && (text.front() == '{' || text.front() == '[')) return json::parse(text);
    std::ifstream in(text);
    if (!in) throw UsageError("cannot read " + text);
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError(std::string("invalid JSON: ") + e.what());
  }
}

struct Check {
  std::string name;
  bool passed;
  double value;
  double tolerance;
};

struct Summary {
  json config;
  json results = json::object();
  std::vector<Check> checks;

  void check(std::string name, bool passed, double value, double tolerance) {
    checks.push_back({std::move(name), passed, value, tolerance});
  }
  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
  }
};

// Options shared by every subcommand.
struct Common {
  std::string out;
  std::string json_path;
  std::string seed_text;
};

struct SeedChoice {
  std::uint64_t value;
  std::string source;
};

std::uint64_t parse_seed(const std::string& text, const std::string& origin) {
  try {
    std::size_t used = 0;
    if (text.empty() || text.front() == '-') throw std::invalid_argument(text);
    const auto v = std::stoull(text, &used, 10);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw UsageError(origin + ": not an unsigned integer: '" + text + "'");
  }
}

SeedChoice resolve_seed(const Common& c) {
  if (!c.seed_text.empty()) return {parse_seed(c.seed_text, "--seed"), "flag"};
  if (const char* env = std::getenv("QEDENS_SEED"); env != nullptr && *env != '\0') {
    return {parse_seed(env, "QEDENS_SEED"), "environment"};
  }
  return {CounterRng::kDefaultSeed, "default"};
}

std::string json_path_for(const Common& c) {
  if (!c.json_path.empty()) return c.json_path;
  std::filesystem::path p(c.out);
  p.replace_extension(".json");
  return p.string();
}

void add_common(CLI::App* app, Common& c, const std::string& default_out) {
  c.out = default_out;
  app->add_option("--out", c.out, "CSV output path")->capture_default_str();
  app->add_option("--json", c.json_path, "JSON summary path (default: CSV path with .json)");
  app->add_option("--seed", c.seed_text, "generator seed (overrides QEDENS_SEED; default 42)");
}

json base_config(const std::string& subcommand, const Common& c, const SeedChoice& seed) {
  json cfg;
  cfg["subcommand"] = subcommand;
  cfg["out"] = c.out;
  cfg["json"] = json_path_for(c);
  cfg["seed"] = seed.value;
  cfg["seed_source"] = seed.source;
  cfg["generator"] = std::string(CounterRng::kName);
  return cfg;
}

int finish(const Summary& s, const Common& c, std::ostream& out) {
  json doc;
  doc["config"] = s.config;
  doc["results"] = s.results;
  json checks = json::array();
  for (const auto& ch : s.checks) {
    checks.push_back({{"name", ch.name}, {"passed", ch.passed}, {"value", ch.value}, {"tolerance", ch.tolerance}});
  }
  doc["checks"] = checks;
  const std::string path = json_path_for(c);
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write " + path);
  f << doc.dump(2) << '\n';

  out << "qedens-cli " << s.config["subcommand"].get<std::string>() << '\n';
  for (const auto& [key, value] : s.results.items()) {
    if (value.is_array() || value.is_object()) continue;
    const std::string text = value.is_number_float() ? short_num(value.get<double>())
                             : value.is_string()       ? value.get<std::string>()
                                                       : value.dump();
    out << "  " << std::left << std::setw(28) << key << ' ' << text << '\n';
  }
  for (const auto& ch : s.checks) {
    out << "  " << (ch.passed ? "PASS " : "FAIL ") << std::left << std::setw(34) << ch.name
        << " value=" << short_num(ch.value) << " tol=" << short_num(ch.tolerance) << '\n';
  }
  out << "  wrote " << c.out << ", " << path << '\n';
  return s.ok() ? 0 : 1;
}

// ---------------------------------------------------------------- potentials

struct PotentialArgs {
  std::string kind;
  double omega = 1.0;
  double width = 1.0;
  double height = 0.0;
  double charge = 1.0;
  std::string record;
  std::string samples_csv;
};

void add_potential(CLI::App* app, PotentialArgs& p) {
  app->add_option("--potential", p.kind, "infinite-well | harmonic | finite-barrier | coulomb-radial | custom-samples");
  app->add_option("--omega", p.omega, "oscillator frequency")->capture_default_str();
  app->add_option("--width", p.width, "well or barrier width")->capture_default_str();
  app->add_option("--height", p.height, "barrier height")->capture_default_str();
  app->add_option("--charge", p.charge, "nuclear charge Z")->capture_default_str();
  app->add_option("--potential-json", p.record, "potential record {kind, ...}: inline JSON or a file");
  app->add_option("--potential-csv", p.samples_csv, "two-column CSV (x, V) for custom-samples");
}

std::optional<Potential> resolve_potential(const PotentialArgs& a) {
  if (!a.record.empty()) {
    const json r = parse_json_argument(a.record);
    if (!r.is_object() || !r.contains("kind")) throw UsageError("potential record needs a \"kind\"");
    try {
      Potential p;
      p.kind = parse_potential_kind(r.at("kind").get<std::string>());
      p.omega = r.value("omega", 1.0);
      p.width = r.value("width", 1.0);
      p.height = r.value("height", 0.0);
      p.charge = r.value("charge", 1.0);
      if (r.contains("samples")) {
        for (const auto& s : r.at("samples")) p.samples.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
      }
      if (p.kind == PotentialKind::custom_samples) return Potential::custom(std::move(p.samples));
      return p;
    } catch (const json::exception& e) {
      throw UsageError(std::string("potential record: ") + e.what());
    }
  }
  if (!a.samples_csv.empty()) {
    std::vector<std::pair<double, double>> s;
    for (const auto& row : read_csv(a.samples_csv, 2)) s.emplace_back(row[0], row[1]);
    return Potential::custom(std::move(s));
  }
  if (a.kind.empty()) return std::nullopt;
  switch (parse_potential_kind(a.kind)) {
    case PotentialKind::infinite_well:
      return Potential::infinite_well(a.width);
    case PotentialKind::harmonic:
      return Potential::harmonic(a.omega);
    case PotentialKind::finite_barrier:
      return Potential::finite_barrier(a.height, a.width);
    case PotentialKind::coulomb_radial:
      return Potential::coulomb(a.charge);
    case PotentialKind::custom_samples:
      throw UsageError("custom-samples needs --potential-csv or --potential-json");
  }
  return std::nullopt;
}

json potential_json(const Potential& p) {
  json j;
  j["kind"] = std::string(to_string(p.kind));
  switch (p.kind) {
    case PotentialKind::infinite_well:
      j["width"] = p.width;
      break;
    case PotentialKind::harmonic:
      j["omega"] = p.omega;
      break;
    case PotentialKind::finite_barrier:
      j["height"] = p.height;
      j["width"] = p.width;
      break;
    case PotentialKind::coulomb_radial:
      j["charge"] = p.charge;
      break;
    case PotentialKind::custom_samples: {
      json s = json::array();
      for (const auto& [x, v] : p.samples) s.push_back({x, v});
      j["samples"] = s;
      break;
    }
  }
  return j;
}

json grid_json(const Grid& g) {
  json j;
  if (const auto* r = std::get_if<RadialGrid>(&g)) {
    j = {{"type", "radial"}, {"rmin", r->rmin()}, {"rmax", r->rmax()}, {"n", r->size()}};
  } else if (const auto* a = std::get_if<Grid1D>(&g)) {
    j = {{"type", "uniform"},
         {"xmin", a->xmin()},
         {"xmax", a->xmax()},
         {"n", a->size()},
         {"boundary", std::string(to_string(a->boundary()))}};
  }
  return j;
}

// ------------------------------------------------------------------ hydrogen

struct HydrogenArgs {
  Common common;
  double rmin = RadialGrid::kDefaultRmin;
  double rmax = 40.0;
  std::size_t n = 4000;
};

int run_hydrogen(const HydrogenArgs& a, std::ostream& out) {
  const auto seed = resolve_seed(a.common);
  const RadialGrid g(a.rmin, a.rmax, a.n);
  const auto prof = hydrogen_profile(g);
  const auto tot = hydrogen_totals(prof);
  const auto mismatch = energy_balance_mismatch(prof);
  const auto field = ComplexField::sample(g, [](double r) { return psi1(r); });
  const double e_total = tot.ke + tot.pe;
  const double h = g.spacing();

  // Sign change of the Laplacian form.
  std::optional<double> crossing;
  for (std::size_t i = 0; i + 1 < g.size(); ++i) {
    if (prof.k[i] > 0.0 && prof.k[i + 1] <= 0.0) {
      crossing = g.node(i) + h * prof.k[i] / (prof.k[i] - prof.k[i + 1]);
      break;
    }
  }
  std::size_t sign_violations = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double r = g.node(i);
    if (std::abs(r - 2.0) <= h) continue;
    if ((r < 2.0 && !(prof.k[i] > 0.0)) || (r > 2.0 && !(prof.k[i] < 0.0))) ++sign_violations;
  }

  // Pointwise balance: largest mismatch and the shell where the mismatch per
  // unit probability vanishes.
  double worst = 0.0;
  std::size_t best = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    worst = std::max(worst, std::abs(mismatch[i]));
    const double rel = std::abs(mismatch[i]) / (prof.psi[i] * prof.psi[i]);
    if (rel < std::abs(mismatch[best]) / (prof.psi[best] * prof.psi[best])) best = i;
  }

  CsvWriter csv(a.common.out, {"r", "psi", "ke", "k", "pe", "e_density", "mismatch"});
  for (std::size_t i = 0; i < g.size(); ++i) {
    csv.row({g.node(i), prof.psi[i], prof.ke[i], prof.k[i], prof.pe[i], prof.e_density[i], mismatch[i]});
  }

  Summary s;
  s.config = base_config("hydrogen", a.common, seed);
  s.config["grid"] = grid_json(g);
  auto& r = s.results;
  r["ke_total_hartree"] = tot.ke;
  r["k_total_hartree"] = tot.k;
  r["pe_total_hartree"] = tot.pe;
  r["e_total_hartree"] = e_total;
  r["e_total_ev"] = std::round(hartree_to_ev(e_total) * 1e4) / 1e4;
  r["e_total_ev_exact"] = hartree_to_ev(e_total);
  r["surface_term"] = surface_term(field);
  r["k_zero_crossing"] = crossing ? json(*crossing) : json(nullptr);
  r["max_balance_mismatch"] = worst;
  r["balance_shell_r"] = g.node(best);

  const double ledger = std::max({std::abs(tot.ke - 0.5), std::abs(tot.pe + 1.0), std::abs(e_total + 0.5)});
  s.check("hydrogen_energy_ledger", ledger < 1e-5, ledger, 1e-5);
  const double cross_err = crossing ? std::abs(*crossing - 2.0) : INFINITY;
  s.check("k_sign_change", cross_err <= h && sign_violations == 0, cross_err, h);
  s.check("ke_k_total_agreement", std::abs(tot.ke - tot.k) < 1e-5, std::abs(tot.ke - tot.k), 1e-5);
  s.check("pointwise_energy_balance_failure", worst > 0.01 && std::abs(g.node(best) - 1.0) <= h, worst, 0.01);
  return finish(s, a.common, out);
}

// ----------------------------------------------------------------- densities

struct GridArgs {
  std::optional<double> xmin, xmax;
  std::optional<std::size_t> n;
  std::string boundary;
  double rmin = RadialGrid::kDefaultRmin;
  std::optional<double> rmax;
};

void add_grid(CLI::App* app, GridArgs& g) {
  app->add_option("--xmin", g.xmin, "grid start");
  app->add_option("--xmax", g.xmax, "grid end");
  app->add_option("-n,--points", g.n, "grid nodes");
  app->add_option("--boundary", g.boundary, "periodic | dirichlet-zero | decaying");
  app->add_option("--rmin", g.rmin, "radial grid start")->capture_default_str();
  app->add_option("--rmax", g.rmax, "radial grid end");
}

Grid1D make_axis(const GridArgs& g, double xmin, double xmax, std::size_t n, Boundary b) {
  return Grid1D(g.xmin.value_or(xmin), g.xmax.value_or(xmax), g.n.value_or(n),
                g.boundary.empty() ? b : parse_boundary(g.boundary));
}

struct DensitiesArgs {
  Common common;
  GridArgs grid;
  PotentialArgs potential;
  std::string state = "gaussian";
  std::string input;
  double k = 1.0;
  std::optional<double> energy;
};

int run_densities(const DensitiesArgs& a, std::ostream& out) {
  const auto seed = resolve_seed(a.common);
  std::optional<ComplexField> field;
  double default_energy = 0.0;
  std::optional<Potential> pot = resolve_potential(a.potential);

  if (!a.input.empty()) {
    const auto rows = read_csv(a.input, 2);
    const auto [lo, hi] = uniform_span(rows);
    const Grid1D axis(lo, hi, rows.size(), a.grid.boundary.empty() ? Boundary::decaying : parse_boundary(a.grid.boundary));
    std::vector<Complex> v(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) v[i] = {rows[i][1], rows[i].size() > 2 ? rows[i][2] : 0.0};
    field.emplace(Grid{axis}, std::move(v));
  } else if (a.state == "gaussian") {
    const auto axis = make_axis(a.grid, -10.0, 10.0, 2001, Boundary::decaying);
    field = ComplexField::sample(axis, [](double x) { return std::pow(kPi, -0.25) * std::exp(-0.5 * x * x); });
  } else if (a.state == "plane-wave") {
    const auto axis = make_axis(a.grid, 0.0, 2.0 * kPi, 1024, Boundary::periodic);
    const double k = a.k;
    field = ComplexField::sample(axis, [k](double x) { return std::polar(1.0, k * x) / std::sqrt(2.0 * kPi); });
    default_energy = 0.5 * k * k;
  } else if (a.state == "superposition") {
    const auto axis = make_axis(a.grid, 0.0, 2.0 * kPi, 1024, Boundary::periodic);
    field = ComplexField::sample(axis, [](double x) {
      return (std::polar(1.0, x) + Complex(0.2, -0.5) * std::polar(1.0, -2.0 * x) +
              Complex(0.3, 0.3) * std::polar(1.0, 3.0 * x)) /
             std::sqrt(2.0 * kPi);
    });
  } else if (a.state == "hydrogen") {
    const RadialGrid g(a.grid.rmin, a.grid.rmax.value_or(40.0), a.grid.n.value_or(4000));
    field = ComplexField::sample(g, [](double r) { return psi1(r); });
    if (!pot) pot = Potential::coulomb(1.0);
    default_energy = kHydrogenGroundEnergy;
  } else {
    throw UsageError("--state: expected gaussian, plane-wave, superposition or hydrogen");
  }

  const std::vector<double> V = pot ? sample_potential(*pot, field->grid()) : std::vector<double>(field->size(), 0.0);
  const double energy = a.energy.value_or(default_energy);
  const auto prof = density_profile(*field, V, energy);
  const auto rep = totals(*field, V, energy);

  const bool radial = field->is_radial();
  CsvWriter csv(a.common.out, {radial ? "r" : "x", "re", "im", "ke", "k", "k_imag", "pe", "e_density"});
  const Grid1D& axis = field->axis();
  for (std::size_t i = 0; i < field->size(); ++i) {
    const Complex z = (*field)[i];
    csv.row({axis.node(i), z.real(), z.imag(), prof.ke[i], prof.k[i], prof.k_imag[i], prof.pe[i], prof.e_density[i]});
  }

  Summary s;
  s.config = base_config("densities", a.common, seed);
  s.config["state"] = a.input.empty() ? a.state : "input";
  if (!a.input.empty()) s.config["input"] = a.input;
  s.config["k"] = a.k;
  s.config["grid"] = grid_json(field->grid());
  s.config["potential"] = pot ? potential_json(*pot) : json(nullptr);
  s.config["energy"] = energy;
  auto& r = s.results;
  r["ke_total"] = rep.ke_total;
  r["k_total"] = rep.k_total;
  r["k_imag_total"] = rep.k_imag_total;
  r["pe_total"] = rep.pe_total;
  r["e_total"] = rep.e_total;
  r["surface_term"] = rep.surface_term;
  r["norm2"] = rep.norm2;
  const double gap = std::abs(rep.ke_total - rep.k_total - rep.surface_term);
  const double scale = std::max(std::abs(rep.ke_total), 1e-300);
  s.check("parts_identity", gap <= 1e-6 * scale, gap / scale, 1e-6);
  return finish(s, a.common, out);
}

// --------------------------------------------------------------------- synth

struct SynthArgs {
  Common common;
  GridArgs grid;
  std::string components;
  double t = 0.0;
  std::uint64_t trials = 0;
};

std::vector<WaveComponent> parse_components(const std::string& text) {
  if (text.empty()) {
    return {WaveComponent::free({1.0, 0.0}, 1.0), WaveComponent::free({0.2, -0.5}, -2.0),
            WaveComponent::free({0.3, 0.3}, 3.0)};
  }
  const json j = parse_json_argument(text);
  if (!j.is_array()) throw UsageError("--components: expected a JSON array of {re, im, p}");
  std::vector<WaveComponent> out;
  try {
    for (const auto& c : j) {
      const double p = c.at("p").get<double>();
      WaveComponent w = WaveComponent::free({c.value("re", 0.0), c.value("im", 0.0)}, p);
      if (c.contains("E")) w.energy = c.at("E").get<double>();
      out.push_back(w);
    }
  } catch (const json::exception& e) {
    throw UsageError(std::string("--components: ") + e.what());
  }
  return out;
}

int run_synth(const SynthArgs& a, std::ostream& out) {
  const auto seed = resolve_seed(a.common);
  const auto comps = parse_components(a.components);
  const auto axis = make_axis(a.grid, 0.0, 2.0 * kPi, 1024, Boundary::periodic);
  const auto psi = superpose(comps, axis, a.t);
  const auto fields = local_fields(comps, axis, a.t);
  const auto fd = local_momentum(psi);

  ComplexField sum(axis);
  for (const auto& c : comps) sum += c.momentum * component_wave(c, axis, a.t);
  double identity = 0.0, fd_gap = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    identity = std::max(identity, std::abs(fields.momentum[i] - sum[i]));
    fd_gap = std::max(fd_gap, std::abs(fields.momentum[i] - fd[i]));
  }
  double expected_norm = 0.0;
  for (const auto& c : comps) expected_norm += std::norm(c.amplitude);

  CsvWriter csv(a.common.out, {"x", "re", "im", "p_re", "p_im", "p_fd_re", "p_fd_im", "e_re", "e_im"});
  for (std::size_t i = 0; i < psi.size(); ++i) {
    csv.row({axis.node(i), psi[i].real(), psi[i].imag(), fields.momentum[i].real(), fields.momentum[i].imag(),
             fd[i].real(), fd[i].imag(), fields.energy[i].real(), fields.energy[i].imag()});
  }

  Summary s;
  s.config = base_config("synth", a.common, seed);
  json cj = json::array();
  for (const auto& c : comps) {
    cj.push_back({{"re", c.amplitude.real()}, {"im", c.amplitude.imag()}, {"p", c.momentum}, {"E", c.energy}});
  }
  s.config["components"] = cj;
  s.config["grid"] = grid_json(axis);
  s.config["t"] = a.t;
  s.config["trials"] = a.trials;
  auto& r = s.results;
  r["norm2"] = norm2(psi);
  r["sum_amplitude2"] = expected_norm;
  r["identity_max_error"] = identity;
  r["finite_difference_max_error"] = fd_gap;
  if (a.trials > 0) {
    const auto counts = measurement_histogram(comps, a.trials, seed.value);
    r["histogram"] = counts;
    json freq = json::array();
    for (auto c : counts) freq.push_back(static_cast<double>(c) / static_cast<double>(a.trials));
    r["frequencies"] = freq;
  }
  s.check("three_wave_identity", identity <= 1e-12, identity, 1e-12);
  if (axis.periodic()) s.check("finite_difference_cross_check", fd_gap <= 1e-6, fd_gap, 1e-6);
  return finish(s, a.common, out);
}

// --------------------------------------------------------------------- solve

struct SolveArgs {
  Common common;
  GridArgs grid;
  PotentialArgs potential;
  std::size_t states = 1;
  double tolerance = 1e-6;
  std::size_t max_iterations = 10000;
};

int run_solve(const SolveArgs& a, std::ostream& out) {
  const auto seed = resolve_seed(a.common);
  auto pot = resolve_potential(a.potential);
  if (!pot) throw UsageError("solve: --potential, --potential-json or --potential-csv is required");

  std::optional<Grid> grid;
  if (pot->kind == PotentialKind::coulomb_radial) {
    grid = RadialGrid(a.grid.rmin, a.grid.rmax.value_or(60.0), a.grid.n.value_or(6000));
  } else if (pot->kind == PotentialKind::infinite_well) {
    grid = make_axis(a.grid, 0.0, pot->width, 2000, Boundary::dirichlet_zero);
  } else {
    grid = make_axis(a.grid, -10.0, 10.0, 2000, Boundary::dirichlet_zero);
  }
  if (a.states < 1) throw UsageError("--states: need at least 1");

  SolverOptions so;
  so.residual_tolerance = a.tolerance;
  so.max_iterations = a.max_iterations;
  VariationalOptions vo;
  vo.residual_tolerance = a.tolerance;
  vo.max_iterations = a.max_iterations;
  vo.seed = seed.value;

  const auto states = excited_states(*pot, *grid, a.states, so);
  const auto var = variational_minimize(*pot, *grid, vo);
  const auto& gs = states.front();
  const auto V = sample_potential(*pot, *grid);
  const auto rep = totals(gs.field, V, gs.energy);
  const double diff = std::abs(var.energy - gs.energy);
  const bool agree = gs.converged && var.converged && diff < 1e-6;

  std::vector<std::string> header{std::holds_alternative<RadialGrid>(*grid) ? "r" : "x", "V"};
  for (std::size_t k = 0; k < states.size(); ++k) {
    header.push_back("psi" + std::to_string(k) + "_re");
    header.push_back("psi" + std::to_string(k) + "_im");
  }
  header.push_back("variational_re");
  header.push_back("variational_im");
  CsvWriter csv(a.common.out, header);
  const Grid1D& axis = gs.field.axis();
  for (std::size_t i = 0; i < axis.size(); ++i) {
    std::vector<double> row{axis.node(i), V[i]};
    for (const auto& st : states) {
      row.push_back(st.field[i].real());
      row.push_back(st.field[i].imag());
    }
    row.push_back(var.field[i].real());
    row.push_back(var.field[i].imag());
    csv.row(row);
  }

  Summary s;
  s.config = base_config("solve", a.common, seed);
  s.config["potential"] = potential_json(*pot);
  s.config["grid"] = grid_json(*grid);
  s.config["states"] = a.states;
  s.config["residual_tolerance"] = a.tolerance;
  s.config["shift_tolerance"] = so.shift_tolerance;
  s.config["max_iterations"] = a.max_iterations;
  auto& r = s.results;
  r["energy"] = gs.energy;
  r["energy_ev"] = hartree_to_ev(gs.energy);
  json energies = json::array();
  for (const auto& st : states) energies.push_back(st.energy);
  r["energies"] = energies;
  r["residual_max"] = gs.residual_max;
  r["iterations"] = gs.iterations;
  r["variational_energy"] = var.energy;
  r["variational_residual_max"] = var.residual_max;
  r["variational_iterations"] = var.iterations;
  r["energy_difference"] = diff;
  r["methods_agree"] = agree;
  r["ke_total"] = rep.ke_total;
  r["pe_total"] = rep.pe_total;
  r["e_total"] = rep.e_total;
  r["diagnostics"] = gs.diagnostics;
  r["variational_diagnostics"] = var.diagnostics;
  bool all_converged = true;
  double worst_residual = 0.0;
  for (const auto& st : states) {
    all_converged = all_converged && st.converged;
    worst_residual = std::max(worst_residual, st.residual_max);
  }
  s.check("eigen_converged", all_converged, worst_residual, a.tolerance);
  s.check("variational_converged", var.converged, var.residual_max, a.tolerance);
  s.check("methods_agree", agree, diff, 1e-6);
  return finish(s, a.common, out);
}

// --------------------------------------------------------------------- slits

struct SlitsArgs {
  Common common;
  double wavelength = 0.5;
  double separation = 10.0;
  double distance = 2000.0;
  std::size_t count = 2;
  std::vector<double> positions;
  std::vector<double> weights;
  double half_width = 500.0;
  std::size_t samples = 10001;
  std::uint64_t detections = 0;
};

int run_slits(const SlitsArgs& a, std::ostream& out) {
  const auto seed = resolve_seed(a.common);
  SlitConfig cfg = SlitConfig::grating(a.count, a.wavelength, a.separation, a.distance, a.half_width, a.samples);
  if (!a.positions.empty()) cfg.slits = a.positions;
  cfg.weights = a.weights;
  cfg.validate();
  const auto prof = slit_pattern(cfg);
  const auto spacing = fringe_spacing(prof);
  const auto width = central_peak_width(prof);
  std::vector<std::uint64_t> counts;
  if (a.detections > 0) counts = detect(prof, a.detections, seed.value);

  std::vector<std::string> header{"y", "intensity"};
  if (!counts.empty()) header.push_back("detections");
  CsvWriter csv(a.common.out, header);
  for (std::size_t i = 0; i < prof.y.size(); ++i) {
    std::vector<double> row{prof.y[i], prof.intensity[i]};
    if (!counts.empty()) row.push_back(static_cast<double>(counts[i]));
    csv.row(row);
  }

  Summary s;
  s.config = base_config("slits", a.common, seed);
  s.config["wavelength"] = cfg.wavelength;
  s.config["slits"] = cfg.slits;
  s.config["weights"] = cfg.weights;
  s.config["distance"] = cfg.distance;
  s.config["screen_half_width"] = cfg.screen_half_width;
  s.config["samples"] = cfg.samples;
  s.config["detections"] = a.detections;
  auto& r = s.results;
  const std::size_t n = cfg.slits.size();
  const double pitch = n > 1 ? cfg.aperture() / static_cast<double>(n - 1) : 0.0;
  r["aperture"] = cfg.aperture();
  r["far_field"] = cfg.far_field();
  r["fringe_spacing"] = spacing ? json(*spacing) : json(nullptr);
  r["fraunhofer_spacing"] = n > 1 ? json(cfg.wavelength * cfg.distance / pitch) : json(nullptr);
  r["central_peak_width"] = width ? json(*width) : json(nullptr);
  if (!counts.empty()) r["detections_total"] = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
  if (n > 1 && cfg.far_field()) {
    const double expected = cfg.wavelength * cfg.distance / pitch;
    const double rel = spacing ? std::abs(*spacing / expected - 1.0) : INFINITY;
    s.check("fringe_spacing", rel <= 0.02, rel, 0.02);
  }
  return finish(s, a.common, out);
}

// ------------------------------------------------------------------ momentum

struct MomentumArgs {
  Common common;
  double rmin = RadialGrid::kDefaultRmin;
  double rmax = 60.0;
  std::size_t n = 6000;
  double pmax = 50.0;
  std::size_t np = 5000;
  std::string input;
};

int run_momentum(const MomentumArgs& a, std::ostream& out) {
  const auto seed = resolve_seed(a.common);
  std::optional<RadialGrid> grid;
  std::vector<double> psi;
  if (!a.input.empty()) {
    const auto rows = read_csv(a.input, 2);
    const auto [lo, hi] = uniform_span(rows);
    grid.emplace(lo, hi, rows.size());
    for (const auto& row : rows) psi.push_back(row[1]);
  } else {
    grid.emplace(a.rmin, a.rmax, a.n);
    for (std::size_t i = 0; i < grid->size(); ++i) psi.push_back(psi1(grid->node(i)));
  }
  const Grid1D p_axis(0.0, a.pmax, a.np, Boundary::decaying);
  const auto spec = radial_momentum_transform(*grid, psi, p_axis);
  const auto unit = radial_momentum_transform(*grid, psi, Grid1D(0.0, 2.0, 3, Boundary::decaying));

  std::vector<double> rho(psi.size());
  for (std::size_t i = 0; i < psi.size(); ++i) rho[i] = psi[i] * psi[i];
  const double position_norm = integrate(Grid{*grid}, rho);
  const double a0 = spec.amplitude.front();
  double ratio_err = 0.0;
  for (std::size_t i = 0; i < p_axis.size() && p_axis.node(i) <= 5.0; ++i) {
    const double p = p_axis.node(i);
    ratio_err = std::max(ratio_err, std::abs(spec.amplitude[i] / a0 - 1.0 / ((1.0 + p * p) * (1.0 + p * p))));
  }

  CsvWriter csv(a.common.out, {"p", "a", "a2"});
  for (std::size_t i = 0; i < p_axis.size(); ++i) {
    csv.row({p_axis.node(i), spec.amplitude[i], spec.amplitude[i] * spec.amplitude[i]});
  }

  Summary s;
  s.config = base_config("momentum", a.common, seed);
  s.config["state"] = a.input.empty() ? "hydrogen" : "input";
  if (!a.input.empty()) s.config["input"] = a.input;
  s.config["grid"] = grid_json(*grid);
  s.config["p_axis"] = grid_json(p_axis);
  auto& r = s.results;
  r["a0"] = a0;
  r["ratio_at_1"] = unit.amplitude[1] / unit.amplitude[0];
  r["max_ratio_error"] = ratio_err;
  r["normalization"] = spec.normalization;
  r["position_norm"] = position_norm;
  r["truncation_warning"] = spec.truncation_warning ? json(*spec.truncation_warning) : json(nullptr);
  if (a.input.empty()) {
    s.check("momentum_ratio", ratio_err < 1e-3, ratio_err, 1e-3);
    s.check("momentum_a0", std::abs(a0 - 0.9003) < 1e-3, std::abs(a0 - 0.9003), 1e-3);
  }
  const double parseval = std::abs(position_norm - spec.normalization);
  s.check("parseval", parseval < 1e-3, parseval, 1e-3);
  return finish(s, a.common, out);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Local energy densities, plane-wave synthesis and stationary states in atomic units"};
  app.name("qedens-cli");
  app.require_subcommand(1);

  HydrogenArgs hyd;
  auto* h = app.add_subcommand("hydrogen", "hydrogen ground state energy densities and totals");
  add_common(h, hyd.common, "hydrogen.csv");
  h->add_option("--rmin", hyd.rmin, "innermost node")->capture_default_str();
  h->add_option("--rmax", hyd.rmax, "outer radius")->capture_default_str();
  h->add_option("-n,--points", hyd.n, "radial nodes")->capture_default_str();

  DensitiesArgs den;
  auto* d = app.add_subcommand("densities", "energy density diagnostics for a field");
  add_common(d, den.common, "densities.csv");
  add_grid(d, den.grid);
  add_potential(d, den.potential);
  d->add_option("--state", den.state, "gaussian | plane-wave | superposition | hydrogen")->capture_default_str();
  d->add_option("--input", den.input, "CSV field (x, re[, im]) on a uniform grid");
  d->add_option("--k", den.k, "plane-wave wavenumber")->capture_default_str();
  d->add_option("--energy", den.energy, "energy parameter E");

  SynthArgs syn;
  auto* y = app.add_subcommand("synth", "plane-wave superposition with local momentum and energy fields");
  add_common(y, syn.common, "synth.csv");
  add_grid(y, syn.grid);
  y->add_option("--components", syn.components, "JSON array of {re, im, p[, E]}: inline or a file");
  y->add_option("-t,--time", syn.t, "time")->capture_default_str();
  y->add_option("--trials", syn.trials, "measurement draws for the histogram")->capture_default_str();

  SolveArgs sol;
  auto* s = app.add_subcommand("solve", "stationary states by inverse iteration and by energy minimization");
  add_common(s, sol.common, "solve.csv");
  add_grid(s, sol.grid);
  add_potential(s, sol.potential);
  s->add_option("--states", sol.states, "number of lowest states")->capture_default_str();
  s->add_option("--tol", sol.tolerance, "residual tolerance")->capture_default_str();
  s->add_option("--max-iter", sol.max_iterations, "iteration cap")->capture_default_str();

  SlitsArgs sl;
  auto* l = app.add_subcommand("slits", "point-slit interference on a screen");
  add_common(l, sl.common, "slits.csv");
  l->add_option("--wavelength", sl.wavelength, "wavelength")->capture_default_str();
  l->add_option("--separation", sl.separation, "slit pitch d")->capture_default_str();
  l->add_option("--distance", sl.distance, "screen distance L")->capture_default_str();
  l->add_option("--slits", sl.count, "number of slits")->capture_default_str();
  l->add_option("--positions", sl.positions, "explicit slit offsets")->delimiter(',');
  l->add_option("--weights", sl.weights, "per-slit amplitudes")->delimiter(',');
  l->add_option("--half-width", sl.half_width, "screen half width")->capture_default_str();
  l->add_option("--samples", sl.samples, "screen samples")->capture_default_str();
  l->add_option("--detections", sl.detections, "whole-particle detections to draw")->capture_default_str();

  MomentumArgs mom;
  auto* m = app.add_subcommand("momentum", "momentum amplitudes of a radial s-state");
  add_common(m, mom.common, "momentum.csv");
  m->add_option("--rmin", mom.rmin, "innermost node")->capture_default_str();
  m->add_option("--rmax", mom.rmax, "outer radius")->capture_default_str();
  m->add_option("-n,--points", mom.n, "radial nodes")->capture_default_str();
  m->add_option("--pmax", mom.pmax, "largest momentum")->capture_default_str();
  m->add_option("--np", mom.np, "momentum samples")->capture_default_str();
  m->add_option("--input", mom.input, "CSV field (r, psi) on a uniform grid");

  std::vector<const char*> argv{"qedens-cli"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (h->parsed()) return run_hydrogen(hyd, out);
    if (d->parsed()) return run_densities(den, out);
    if (y->parsed()) return run_synth(syn, out);
    if (s->parsed()) return run_solve(sol, out);
    if (l->parsed()) return run_slits(sl, out);
    if (m->parsed()) return run_momentum(mom, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const StructuralError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace qedens::cli
