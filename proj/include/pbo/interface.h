#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pbo/cost_model.h"
#include "pbo/evolution.h"
#include "pbo/system_model.h"

namespace pbo {

inline constexpr int kSchemaVersion = 1;

enum class PrepChoice { auto_select, symmetric, amplitude_amplified };
enum class AllocationMode { uniform, optimized, explicit_fractions, reciprocal };

struct AllocationSpec {
  AllocationMode mode = AllocationMode::uniform;
  Fractions fractions;  // explicit_fractions
  // reciprocal: 1/f for r, M, zeta, m; f_W tied to f_m, f_exp is the residual
  double inv_r = 0, inv_M = 0, inv_zeta = 0, inv_m = 0;
  // Optional 1/f_exp to use for the QSP degree in place of the residual.
  std::optional<double> inv_exp;
  bool operator==(const AllocationSpec&) const = default;
};

struct Overrides {
  std::optional<int> n_g;
  std::optional<int> n_M;
  std::optional<int> n_gamma;
  bool operator==(const Overrides&) const = default;
};

// Published figures a builtin is compared against; never used as inputs.
struct ReferenceValues {
  double toffolis_per_fs = 0;
  double toffolis_per_walk = 0;
  int qubits_total = 0;
  int qubits_ancilla = 0;
  double one_norm = 0;
  bool operator==(const ReferenceValues&) const = default;
};

struct ReactionSpec {
  std::string name;
  std::vector<std::pair<std::string, int>> composition;
  int net_charge = 0;
  double temperature = 300.0;  // kelvin
  double box_width = 22.0;     // angstrom
  double time = 1.0;           // femtoseconds
  double epsilon = 1e-2;
  int n_sigma = 3;
  bool gamma_saturation = true;
  bool spectral_shift = true;
  PrepChoice prep_strategy = PrepChoice::auto_select;
  DataLoader data_loader = DataLoader::qrom;
  AllocationSpec allocation;
  Overrides overrides;
  std::optional<ReferenceValues> reference;

  bool operator==(const ReactionSpec&) const = default;
};

ReactionSpec load_reaction(const nlohmann::json& doc, const ElementDb& db = ElementDb::builtin());
ReactionSpec load_reaction_text(const std::string& text, const ElementDb& db = ElementDb::builtin());
nlohmann::json to_json(const ReactionSpec& spec);

std::vector<std::string> builtin_names();
ReactionSpec builtin_reaction(const std::string& name);

struct BreakdownItem {
  std::string component;
  std::int64_t toffolis = 0;
};

struct EstimateReport {
  ReactionSpec spec;
  int eta = 0;
  int eta_e = 0;
  int n_g = 0;
  int n_M = 0;
  int n_gamma = 0;
  double gamma = 1.0;
  // What the derivation alone would have chosen (echoed even when overridden).
  int derived_n_g = 0;
  int derived_n_gamma = 0;
  int derived_n_M = 0;
  std::map<std::string, std::string> provenance;

  NormBundle norms;
  double delta_angstrom = 0.0;
  Fractions fractions;
  ErrorBudget budget;
  double eps_exp_used = 0.0;
  QspPlan qsp;
  int n_R = 0;
  PrepStrategy prep_strategy = PrepStrategy::symmetric;

  std::int64_t toffolis_per_walk = 0;
  u128 toffolis_total = 0;
  double toffolis_per_fs = 0.0;
  QubitTally qubits;
  std::vector<BreakdownItem> breakdown;        // adds to toffolis_per_walk
  std::vector<BreakdownItem> arithmetic_steps; // unshifted sign-circuit steps, informational
  std::int64_t kinetic_constant_delta = 0;     // proof build-up minus statement
};

EstimateReport estimate(const ReactionSpec& spec);
// Concurrent batch; results in input order.
std::vector<EstimateReport> estimate_all(const std::vector<ReactionSpec>& specs);
// Cost of a spec under an explicit allocation, for the optimizer.
u128 cost_with_fractions(const ReactionSpec& spec, const Fractions& f);
OptimizationResult optimize(const ReactionSpec& spec, const OptimizerOptions& opts = {});

enum class Format { json, csv, markdown };
Format parse_format(const std::string& s);
std::string render(const std::vector<EstimateReport>& reports, Format format);
nlohmann::json report_to_json(const EstimateReport& r);

}  // namespace pbo
