#include "pbo/system_model.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "pbo/errors.h"
#include "pbo/units.h"

namespace pbo {

namespace {

ElementDb make_builtin() {
  ElementDb db;
  const Element table[] = {
      {"H", 1, 1.008},    {"He", 2, 4.0026},  {"Li", 3, 6.94},    {"Be", 4, 9.0122},
      {"B", 5, 10.81},    {"C", 6, 12.011},   {"N", 7, 14.007},   {"O", 8, 15.999},
      {"F", 9, 18.998},   {"Ne", 10, 20.180}, {"Na", 11, 22.990}, {"Mg", 12, 24.305},
      {"Al", 13, 26.982}, {"Si", 14, 28.085}, {"P", 15, 30.974},  {"S", 16, 32.06},
      {"Cl", 17, 35.45},  {"Ar", 18, 39.948},
  };
  for (const auto& e : table) db.put(e);
  return db;
}

double coth(double x) { return 1.0 / std::tanh(x); }

}  // namespace

const ElementDb& ElementDb::builtin() {
  static const ElementDb db = make_builtin();
  return db;
}

ElementDb ElementDb::with_overrides(const std::string& json_text) {
  ElementDb db = builtin();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("element table: ") + e.what());
  }
  if (!doc.is_array()) throw ValidationError("element table must be a JSON array");
  for (const auto& row : doc) {
    if (!row.contains("symbol") || !row.contains("Z") || !row.contains("mass_amu"))
      throw ValidationError("element entry needs symbol, Z and mass_amu");
    Element e{row["symbol"].get<std::string>(), row["Z"].get<int>(),
              row["mass_amu"].get<double>()};
    if (e.atomic_number < 1 || !(e.mass_amu > 0.0))
      throw ValidationError("element " + e.symbol + ": Z must be >= 1 and mass > 0");
    db.put(e);
  }
  return db;
}

const Element& ElementDb::find(const std::string& symbol) const {
  auto it = by_symbol_.find(symbol);
  if (it == by_symbol_.end()) throw ValidationError("unknown element: " + symbol);
  return it->second;
}

bool ElementDb::contains(const std::string& symbol) const {
  return by_symbol_.count(symbol) != 0;
}

std::vector<Element> ElementDb::all() const {
  std::vector<Element> out;
  for (const auto& [k, v] : by_symbol_) out.push_back(v);
  std::sort(out.begin(), out.end(),
            [](const Element& a, const Element& b) { return a.atomic_number < b.atomic_number; });
  return out;
}

void ElementDb::put(Element e) { by_symbol_[e.symbol] = std::move(e); }

ParticleSet::ParticleSet(std::vector<Nucleus> nuclei, int net_charge)
    : nuclei_(std::move(nuclei)), net_charge_(net_charge) {
  for (const auto& n : nuclei_) {
    if (n.charge < 1) throw DomainError("nuclear charge must be >= 1");
    if (!(n.mass > 1.0)) throw DomainError("nuclear mass must exceed the electron mass");
  }
  eta_e_ = z_total() - net_charge_;
  if (eta_e_ < 0) throw DomainError("net charge exceeds total nuclear charge");
}

int ParticleSet::z_total() const {
  int z = 0;
  for (const auto& n : nuclei_) z += n.charge;
  return z;
}

std::vector<int> ParticleSet::charges() const {
  std::vector<int> out;
  out.reserve(eta());
  for (const auto& n : nuclei_) out.push_back(n.charge);
  out.insert(out.end(), eta_e_, 1);
  return out;
}

std::vector<double> ParticleSet::masses() const {
  std::vector<double> out;
  out.reserve(eta());
  for (const auto& n : nuclei_) out.push_back(n.mass);
  out.insert(out.end(), eta_e_, 1.0);
  return out;
}

ParticleSet particles_from_composition(
    const std::vector<std::pair<std::string, int>>& composition, int net_charge,
    const ElementDb& db) {
  if (composition.empty()) throw ValidationError("composition is empty");
  std::vector<Nucleus> nuclei;
  for (const auto& [sym, count] : composition) {
    if (count < 1) throw ValidationError("element count must be >= 1 for " + sym);
    const Element& e = db.find(sym);
    for (int i = 0; i < count; ++i)
      nuclei.push_back({e.atomic_number, units::amu_to_au(e.mass_amu)});
  }
  return ParticleSet(std::move(nuclei), net_charge);
}

double effective_delta(double box_width, int n_g) {
  return box_width / (std::ldexp(1.0, n_g) - 1.0);
}

GridSpec::GridSpec(double box_width, int n_g) : L_(box_width), n_g_(n_g) {
  if (!(box_width > 0.0)) throw DomainError("box width must be positive");
  if (n_g < 2 || n_g > 30) throw DomainError("n_g must lie in [2, 30]");
}

double GridSpec::delta() const { return effective_delta(L_, n_g_); }

void ThermalContext::validate() const {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  if (n_sigma < 0 || n_sigma > 6) throw DomainError("n_sigma must lie in [0, 6]");
}

double nuclear_grid_spacing(double mass, double temperature) {
  if (!(mass > 0.0) || !(temperature > 0.0))
    throw DomainError("grid spacing needs positive mass and temperature");
  return units::kPi / std::sqrt(3.0 * mass * units::kBoltzmannHaPerK * temperature);
}

double electronic_grid_spacing(int Z) {
  if (Z < 1) throw DomainError("atomic number must be >= 1");
  return units::kPi / Z;
}

int required_ng(double box_width, double delta_min) {
  if (!(box_width > 0.0) || !(delta_min > 0.0))
    throw DomainError("required_ng needs positive L and spacing");
  // Integer search instead of log2 so that required_ng(L, effective_delta(L, n)) == n
  // holds bit-for-bit.
  for (int n = 1; n < 63; ++n)
    if (effective_delta(box_width, n) <= delta_min) return n;
  throw DomainError("spacing too small for a 62-qubit axis");
}

double minimum_spacing(const ParticleSet& p, double temperature) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& n : p.nuclei()) {
    best = std::min(best, nuclear_grid_spacing(n.mass, temperature));
    best = std::min(best, electronic_grid_spacing(n.charge));
  }
  if (p.eta_e() > 0 && p.nuclei().empty()) best = std::min(best, electronic_grid_spacing(1));
  return best;
}

double thermal_rms_displacement(double temperature, const BondModel& m) {
  if (!(temperature > 0.0)) throw DomainError("temperature must be positive");
  const double hw = m.wavenumber * units::kHartreePerWavenumber;  // hbar*omega, hbar = 1
  const double mu = units::amu_to_au(m.reduced_mass_amu);
  const double occupation = coth(hw / (2.0 * units::kBoltzmannHaPerK * temperature));
  const double denom = m.convention == RmsConvention::printed ? 2.0 * units::kPi * mu * hw
                                                              : 2.0 * mu * hw;
  return std::sqrt(occupation / denom);
}

double min_nuclear_distance(const ThermalContext& ctx, const BondModel& m) {
  ctx.validate();
  const double d = units::angstrom_to_bohr(m.bond_length_angstrom) -
                   ctx.n_sigma * thermal_rms_displacement(ctx.temperature, m);
  if (!(d > 0.0)) throw DomainError("temperature too high for the bond model");
  return d;
}

SaturationSpec saturation_from_n_gamma(int n_gamma, const GridSpec& grid) {
  if (n_gamma < 0) throw DomainError("n_gamma must be non-negative");
  SaturationSpec s;
  s.n_gamma = n_gamma;
  s.gamma = std::sqrt(std::ldexp(1.0, n_gamma));
  s.effective_min_distance = grid.delta() * s.gamma;
  return s;
}

SaturationSpec gamma_spec(double delta_nuc, const GridSpec& grid) {
  const double delta = grid.delta();
  int n = 0;
  if (delta_nuc > delta) {
    n = static_cast<int>(std::floor(2.0 * std::log2(delta_nuc / delta)));
    // guard the floor against rounding at exact powers of two
    while (n > 0 && delta * std::sqrt(std::ldexp(1.0, n)) > delta_nuc) --n;
    while (delta * std::sqrt(std::ldexp(1.0, n + 1)) <= delta_nuc) ++n;
  }
  return saturation_from_n_gamma(std::max(0, n), grid);
}

double lambda_V(const ParticleSet& p) {
  double s = 0.0, s2 = 0.0;
  for (int z : p.charges()) {
    s += z;
    s2 += static_cast<double>(z) * z;
  }
  return s * s - s2;
}

double lambda_V_gamma(const ParticleSet& p, double gamma) {
  double zs = 0.0, zs2 = 0.0;
  for (const auto& n : p.nuclei()) {
    zs += n.charge;
    zs2 += static_cast<double>(n.charge) * n.charge;
  }
  const double nn = zs * zs - zs2;
  const double ne = p.eta_e();
  return nn / gamma + 2.0 * ne * p.z_total() + ne * (ne - 1.0);
}

double lambda_T(const ParticleSet& p) {
  double s = 0.0;
  for (double m : p.masses()) s += 1.0 / m;
  return s;
}

double kinetic_alpha(const GridSpec& g, double lambda_t) {
  const double L = g.box_width();
  return 3.0 * units::kPi * units::kPi * std::ldexp(1.0, 2 * (g.n_g() - 1)) * lambda_t / (L * L);
}

NormBundle compute_norms(const ParticleSet& p, const GridSpec& g, const SaturationSpec& sat,
                         bool shifted, bool apply_gamma) {
  if (p.eta() == 0) throw DomainError("empty particle set");
  NormBundle nb;
  nb.lambda_V = lambda_V(p);
  nb.lambda_V_gamma = lambda_V_gamma(p, sat.gamma);
  nb.lambda_T = lambda_T(p);
  nb.delta = g.delta();
  nb.shifted = shifted;
  nb.gamma_applied = apply_gamma;
  nb.alpha_T = kinetic_alpha(g, nb.lambda_T);
  nb.alpha_V = nb.lambda_used() / ((shifted ? 4.0 : 2.0) * g.delta());
  nb.alpha_H = nb.alpha_V + nb.alpha_T;
  return nb;
}

double rigorous_h_bound(double box_width, int eta_e, int eta_n, double mean_energy, double eps,
                        double delta, double gamma_tol) {
  auto in01 = [](double x) { return x > 0.0 && x < 1.0; };
  if (!(box_width > 0.0) || !(mean_energy > 0.0) || eta_e + eta_n < 1 || eta_e < 0 ||
      eta_n < 0 || !in01(eps) || !in01(delta) || !(gamma_tol > 0.0))
    throw DomainError("rigorous_h_bound: invalid inputs");
  const double core = eps * delta / (3.0 * (eta_e + eta_n) * mean_energy);
  return gamma_tol * std::sqrt(6.0 * units::kPi / box_width) * std::pow(core, 0.75);
}

}  // namespace pbo
