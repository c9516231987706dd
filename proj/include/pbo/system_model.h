#pragma once

#include <map>
#include <string>
#include <vector>

namespace pbo {

struct Element {
  std::string symbol;
  int atomic_number = 0;
  double mass_amu = 0.0;
};

class ElementDb {
 public:
  // H through Ar with standard atomic weights.
  static const ElementDb& builtin();
  // Overlay a JSON array of {symbol, Z, mass_amu} on top of the builtin table.
  static ElementDb with_overrides(const std::string& json_text);

  const Element& find(const std::string& symbol) const;
  bool contains(const std::string& symbol) const;
  std::vector<Element> all() const;
  void put(Element e);

 private:
  std::map<std::string, Element> by_symbol_;
};

struct Nucleus {
  int charge = 0;     // zeta
  double mass = 0.0;  // electron masses
};

// Nuclei first, then electrons; particle i is a nucleus iff i < eta_n().
class ParticleSet {
 public:
  explicit ParticleSet(std::vector<Nucleus> nuclei, int net_charge = 0);

  int eta() const { return eta_n() + eta_e_; }
  int eta_n() const { return static_cast<int>(nuclei_.size()); }
  int eta_e() const { return eta_e_; }
  int net_charge() const { return net_charge_; }
  int z_total() const;
  bool is_nucleus(int i) const { return i < eta_n(); }
  const std::vector<Nucleus>& nuclei() const { return nuclei_; }

  // Per-particle |charge| and mass, electrons contributing (1, 1).
  std::vector<int> charges() const;
  std::vector<double> masses() const;

 private:
  std::vector<Nucleus> nuclei_;
  int net_charge_ = 0;
  int eta_e_ = 0;
};

ParticleSet particles_from_composition(
    const std::vector<std::pair<std::string, int>>& composition, int net_charge = 0,
    const ElementDb& db = ElementDb::builtin());

class GridSpec {
 public:
  GridSpec(double box_width, int n_g);
  double box_width() const { return L_; }
  int n_g() const { return n_g_; }
  // Recomputed on every call so it can never drift from L and n_g.
  double delta() const;
  double volume() const { return L_ * L_ * L_; }

 private:
  double L_;
  int n_g_;
};

double effective_delta(double box_width, int n_g);

struct ThermalContext {
  double temperature = 300.0;  // kelvin
  int n_sigma = 3;
  void validate() const;
};

// How the thermal width of the reference bond is turned into a length.
//  printed:  x = sqrt(coth(b w/2) / (2 pi mu w)), units taken literally
//  standard: x = sqrt(coth(b w/2) / (2 mu w)), textbook oscillator
enum class RmsConvention { printed, standard };

struct BondModel {
  double wavenumber = 4200.0;          // cm^-1, H2 stretch
  double bond_length_angstrom = 0.74;  // H2
  double reduced_mass_amu = 1.008 / 2.0;
  RmsConvention convention = RmsConvention::printed;
};

double nuclear_grid_spacing(double mass, double temperature);
double electronic_grid_spacing(int Z);
int required_ng(double box_width, double delta_min);

// Smallest spacing over every nuclear species and every electronic 1s scale.
double minimum_spacing(const ParticleSet& p, double temperature);

double thermal_rms_displacement(double temperature, const BondModel& model = {});
double min_nuclear_distance(const ThermalContext& ctx, const BondModel& model = {});

struct SaturationSpec {
  int n_gamma = 0;
  double gamma = 1.0;
  double effective_min_distance = 0.0;
};

SaturationSpec gamma_spec(double delta_nuc, const GridSpec& grid);
SaturationSpec saturation_from_n_gamma(int n_gamma, const GridSpec& grid);

struct NormBundle {
  double lambda_V = 0.0;
  double lambda_V_gamma = 0.0;
  double lambda_T = 0.0;
  double alpha_V = 0.0;
  double alpha_T = 0.0;
  double alpha_H = 0.0;
  double delta = 0.0;  // bohr
  bool shifted = false;
  bool gamma_applied = false;
  // lambda actually used for alpha_V
  double lambda_used() const { return gamma_applied ? lambda_V_gamma : lambda_V; }
};

double lambda_V(const ParticleSet& p);
double lambda_V_gamma(const ParticleSet& p, double gamma);
double lambda_T(const ParticleSet& p);
double kinetic_alpha(const GridSpec& g, double lambda_t);

NormBundle compute_norms(const ParticleSet& p, const GridSpec& g, const SaturationSpec& sat,
                         bool shifted, bool apply_gamma = true);

// Box-confinement separation bound; electron mass is 1.
double rigorous_h_bound(double box_width, int eta_e, int eta_n, double mean_energy,
                        double eps, double delta, double gamma_tol);

}  // namespace pbo
