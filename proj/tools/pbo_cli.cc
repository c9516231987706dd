// Command-line front end. Exit codes: 0 ok, 1 bad input or usage,
// 2 a verification check failed, 3 internal inconsistency or anything else.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "pbo/errors.h"
#include "pbo/interface.h"
#include "pbo/lcu_oracle.h"
#include "pbo/reversible_sim.h"
#include "pbo/units.h"

using namespace pbo;
using nlohmann::json;

namespace {

std::vector<ReactionSpec> resolve_specs(const std::string& what) {
  if (what == "all") {
    std::vector<ReactionSpec> out;
    for (const auto& n : builtin_names()) out.push_back(builtin_reaction(n));
    return out;
  }
  for (const auto& n : builtin_names())
    if (n == what) return {builtin_reaction(n)};
  std::ifstream in(what);
  if (!in) throw ValidationError("'" + what + "' is neither a built-in reaction nor a readable file");
  std::stringstream ss;
  ss << in.rdbuf();
  return {load_reaction_text(ss.str())};
}

int verify_lcu(int n_g, int n_M, bool shifted, std::int64_t gamma_sq, bool rows_out) {
  std::vector<SweepRow> rows;
  const SweepSummary s = sweep({n_g, n_M, 1.0, gamma_sq, shifted}, rows_out ? &rows : nullptr);
  if (rows_out) {
    std::printf("x,M,approx,target,error,bound\n");
    for (const auto& r : rows)
      std::printf("%llu,%lld,%.17e,%.17e,%.17e,%.17e\n", static_cast<unsigned long long>(r.x),
                  static_cast<long long>(r.M), r.approx, r.target, r.error, r.bound);
  }
  std::fprintf(stderr, "points=%llu violations=%llu max_error*M*delta=%.6f radius=%.6f\n",
               static_cast<unsigned long long>(s.points),
               static_cast<unsigned long long>(s.violations), s.max_error_constant,
               s.spectral_radius());
  if (s.violations) throw VerificationError("truncation bound violated");
  return 0;
}

int verify_circuits(int max_bits) {
  struct Row {
    const char* name;
    Circuit c;
  };
  json out = json::array();
  for (int n = 2; n <= max_bits; ++n) {
    std::vector<Row> rows = {{"Abs", build_abs(n)},
                             {"AbsDiff", build_abs_diff(n)},
                             {"IsEq", build_is_eq(n)},
                             {"Mult", build_mult(n, n)},
                             {"SubPow2", build_sub_pow2(n, n / 2)}};
    for (const auto& r : rows)
      out.push_back({{"circuit", r.name},
                     {"n", n},
                     {"measured", r.c.toffoli_count()},
                     {"lemma", r.c.lemma_toffolis}});
  }
  // Semantics, exhaustively on the smallest widths.
  for (int n = 2; n <= std::min(max_bits, 6); ++n) {
    const Circuit abs = build_abs(n);
    for (std::int64_t a = -(1 << (n - 1)); a < (1 << (n - 1)); ++a)
      if (run(abs, {{"a", a}}).values.at("a") != std::abs(a))
        throw VerificationError("Abs fails at n=" + std::to_string(n) + " a=" + std::to_string(a));
    const Circuit m = build_mult(n, n);
    for (std::int64_t a = 0; a < (1 << n); ++a)
      for (std::int64_t b = 0; b < (1 << n); ++b)
        if (run(m, {{"a", a}, {"b", b}}).values.at("prod") != a * b)
          throw VerificationError("Mult fails at n=" + std::to_string(n));
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int verify_amp(int n) {
  const AmpReport r = amp_identity_check(n);
  std::printf("n=%d checked=%llu amp_failures=%zu square_failures=%zu max_walk_error=%.3e\n", n,
              static_cast<unsigned long long>(r.checked), r.amp_failures.size(),
              r.square_failures.size(), r.max_walk_error);
  if (!r.passed()) throw VerificationError("amplitude identities failed");
  return 0;
}

int grid(const std::string& what, double temperature) {
  const ElementDb& db = ElementDb::builtin();
  json out = json::array();
  auto one = [&](const Element& e) {
    const double nuc = nuclear_grid_spacing(units::amu_to_au(e.mass_amu), temperature);
    const double ele = electronic_grid_spacing(e.atomic_number);
    out.push_back({{"element", e.symbol},
                   {"nuclear_spacing_angstrom", units::bohr_to_angstrom(nuc)},
                   {"electronic_spacing_angstrom", units::bohr_to_angstrom(ele)}});
  };
  if (db.contains(what)) {
    one(db.find(what));
  } else {
    const ReactionSpec s = resolve_specs(what).front();
    for (const auto& [sym, n] : s.composition) one(db.find(sym));
    const ParticleSet p = particles_from_composition(s.composition, s.net_charge);
    const double d = minimum_spacing(p, s.temperature);
    const double L = units::angstrom_to_bohr(s.box_width);
    out.push_back({{"reaction", s.name},
                   {"temperature", s.temperature},
                   {"minimum_spacing_angstrom", units::bohr_to_angstrom(d)},
                   {"required_n_g", required_ng(L, d)}});
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

int gamma(const std::string& what) {
  const ReactionSpec s = resolve_specs(what).front();
  const EstimateReport r = estimate(s);
  const double d = min_nuclear_distance({s.temperature, s.n_sigma});
  const GridSpec g(units::angstrom_to_bohr(s.box_width), r.n_g);
  const SaturationSpec sat = gamma_spec(d, g);
  json out = {{"reaction", s.name},
              {"min_nuclear_distance_angstrom", units::bohr_to_angstrom(d)},
              {"delta_angstrom", units::bohr_to_angstrom(g.delta())},
              {"n_gamma_derived", sat.n_gamma},
              {"n_gamma_used", r.n_gamma},
              {"effective_min_distance_angstrom", units::bohr_to_angstrom(sat.effective_min_distance)},
              {"lambda_V", r.norms.lambda_V},
              {"lambda_V_gamma", r.norms.lambda_V_gamma}};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int optimize_cmd(const std::string& what, std::uint64_t seed) {
  json out = json::array();
  for (const auto& s : resolve_specs(what)) {
    OptimizerOptions o;
    o.seed = seed;
    const OptimizationResult r = optimize(s, o);
    out.push_back({{"reaction", s.name},
                   {"uniform_toffolis", to_string_u128(r.uniform_cost)},
                   {"optimized_toffolis", to_string_u128(r.best_cost)},
                   {"relative_gain", 1.0 - to_double(r.best_cost) / to_double(r.uniform_cost)},
                   {"fractions",
                    {{"f_r", r.best.r},
                     {"f_exp", r.best.exp},
                     {"f_M", r.best.M},
                     {"f_zeta", r.best.zeta},
                     {"f_m", r.best.m},
                     {"f_W", r.best.W}}},
                   {"evaluations", r.evaluations},
                   {"fell_back_to_uniform", r.fell_back_to_uniform}});
  }
  std::cout << out.dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resource estimates and checks for grid-based pre-Born-Oppenheimer dynamics"};
  app.require_subcommand(1);

  std::string target = "all", fmt = "json";
  auto* est = app.add_subcommand("estimate", "Cost a reaction (built-in name, JSON file, or all)");
  est->add_option("target", target, "Built-in name, spec file, or 'all'");
  est->add_option("--format", fmt, "json, csv or markdown")->check(CLI::IsMember({"json", "csv", "markdown", "md"}));

  auto* rep = app.add_subcommand("report", "Table of every built-in reaction");
  rep->add_option("--format", fmt, "json, csv or markdown")->check(CLI::IsMember({"json", "csv", "markdown", "md"}));

  auto* ver = app.add_subcommand("verify", "Brute-force checks");
  ver->require_subcommand(1);
  int n_g = 4, n_M = 8, bits = 6, amp_n = 10;
  std::int64_t gamma_sq = 1;
  bool shifted = false, rows = false;
  auto* vl = ver->add_subcommand("lcu", "Sweep the alternating-sign LCU against its kernel");
  vl->add_option("--n-g", n_g)->check(CLI::Range(1, 8));
  vl->add_option("--n-M", n_M)->check(CLI::Range(1, 20));
  vl->add_option("--gamma-sq", gamma_sq);
  vl->add_flag("--shifted", shifted);
  vl->add_flag("--csv", rows, "Print every sweep point as CSV");
  auto* vc = ver->add_subcommand("circuits", "Measured vs quoted Toffoli counts");
  vc->add_option("--max-bits", bits)->check(CLI::Range(2, 16));
  auto* va = ver->add_subcommand("amp", "Amplitude and square identities");
  va->add_option("--n", amp_n)->check(CLI::Range(2, 12));

  std::string what;
  double temperature = 300;
  auto* gr = app.add_subcommand("grid", "Grid spacings for an element or reaction");
  gr->add_option("what", what)->required();
  gr->add_option("--temperature", temperature, "Kelvin, used for single elements");

  auto* ga = app.add_subcommand("gamma", "Saturation parameters for a reaction");
  ga->add_option("what", what)->required();

  std::uint64_t seed = 7;
  auto* op = app.add_subcommand("optimize", "Search the error allocation");
  op->add_option("target", target);
  op->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);
  try {
    if (*est) {
      std::cout << render(estimate_all(resolve_specs(target)), parse_format(fmt));
      return 0;
    }
    if (*rep) {
      std::cout << render(estimate_all(resolve_specs("all")), parse_format(fmt));
      return 0;
    }
    if (*vl) return verify_lcu(n_g, n_M, shifted, gamma_sq, rows);
    if (*vc) return verify_circuits(bits);
    if (*va) return verify_amp(amp_n);
    if (*gr) return grid(what, temperature);
    if (*ga) return gamma(what);
    if (*op) return optimize_cmd(target, seed);
  } catch (const ValidationError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const VerificationError& e) {
    std::fprintf(stderr, "verification failed: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 3;
  }
  return 0;
}
