#include "pbo/interface.h"

#include <cmath>
#include <cstdio>
#include <future>
#include <sstream>

#include "pbo/errors.h"
#include "pbo/units.h"

namespace pbo {

using nlohmann::json;

namespace {

const char* prep_choice_name(PrepChoice p) {
  switch (p) {
    case PrepChoice::auto_select: return "auto";
    case PrepChoice::symmetric: return "symmetric";
    case PrepChoice::amplitude_amplified: return "amplitude_amplified";
  }
  return "?";
}

PrepChoice parse_prep_choice(const std::string& s) {
  if (s == "auto") return PrepChoice::auto_select;
  if (s == "symmetric") return PrepChoice::symmetric;
  if (s == "amplitude_amplified") return PrepChoice::amplitude_amplified;
  throw ValidationError("unknown prep_strategy: " + s);
}

const char* allocation_name(AllocationMode m) {
  switch (m) {
    case AllocationMode::uniform: return "uniform";
    case AllocationMode::optimized: return "optimized";
    case AllocationMode::explicit_fractions: return "explicit";
    case AllocationMode::reciprocal: return "reciprocal";
  }
  return "?";
}

AllocationMode parse_allocation(const std::string& s) {
  if (s == "uniform") return AllocationMode::uniform;
  if (s == "optimized") return AllocationMode::optimized;
  if (s == "explicit") return AllocationMode::explicit_fractions;
  if (s == "reciprocal") return AllocationMode::reciprocal;
  throw ValidationError("unknown allocation mode: " + s);
}

template <typename T>
T get_or(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ValidationError(std::string("field ") + key + ": " + e.what());
  }
}

std::optional<int> opt_int(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  if (!j.at(key).is_number_integer()) throw ValidationError(std::string(key) + " must be an integer");
  return j.at(key).get<int>();
}

json fractions_json(const Fractions& f) {
  return {{"f_r", f.r}, {"f_exp", f.exp}, {"f_M", f.M}, {"f_zeta", f.zeta}, {"f_m", f.m}, {"f_W", f.W}};
}

std::string sci(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17e", v);
  return buf;
}

}  // namespace

ReactionSpec load_reaction(const json& doc, const ElementDb& db) {
  if (!doc.is_object()) throw ValidationError("reaction document must be a JSON object");
  const int schema = get_or<int>(doc, "schema", kSchemaVersion);
  if (schema != kSchemaVersion)
    throw ValidationError("unsupported schema version " + std::to_string(schema));
  ReactionSpec s;
  s.name = get_or<std::string>(doc, "name", "");
  if (s.name.empty()) throw ValidationError("reaction needs a name");
  if (!doc.contains("composition") || !doc.at("composition").is_array())
    throw ValidationError("composition must be a list");
  for (const auto& item : doc.at("composition")) {
    const std::string el = get_or<std::string>(item, "element", "");
    const int count = get_or<int>(item, "count", 0);
    if (!db.contains(el)) throw ValidationError("unknown element: " + el);
    if (count < 1) throw ValidationError("element counts must be >= 1 (" + el + ")");
    s.composition.emplace_back(el, count);
  }
  if (s.composition.empty()) throw ValidationError("composition is empty");
  s.net_charge = get_or<int>(doc, "net_charge", 0);
  s.temperature = get_or<double>(doc, "temperature", s.temperature);
  s.box_width = get_or<double>(doc, "box_width", s.box_width);
  s.time = get_or<double>(doc, "time", s.time);
  s.epsilon = get_or<double>(doc, "epsilon", s.epsilon);
  s.n_sigma = get_or<int>(doc, "n_sigma", s.n_sigma);
  if (!(s.temperature > 0.0)) throw ValidationError("temperature must be positive (kelvin)");
  if (!(s.box_width > 0.0)) throw ValidationError("box_width must be positive");
  if (!(s.time > 0.0)) throw ValidationError("time must be positive");
  if (!(s.epsilon > 0.0 && s.epsilon < 1.0)) throw ValidationError("epsilon must lie in (0, 1)");
  if (s.n_sigma < 0 || s.n_sigma > 6) throw ValidationError("n_sigma must lie in [0, 6]");

  const json opts = doc.value("options", json::object());
  s.gamma_saturation = get_or<bool>(opts, "gamma_saturation", true);
  s.spectral_shift = get_or<bool>(opts, "spectral_shift", true);
  s.prep_strategy = parse_prep_choice(get_or<std::string>(opts, "prep_strategy", "auto"));
  const std::string loader = get_or<std::string>(opts, "data_loader", "qrom");
  if (loader == "qrom")
    s.data_loader = DataLoader::qrom;
  else if (loader == "qroam")
    s.data_loader = DataLoader::qroam;
  else
    throw ValidationError("unknown data_loader: " + loader);

  const json alloc = opts.value("allocation", json{{"mode", "uniform"}});
  s.allocation.mode = parse_allocation(get_or<std::string>(alloc, "mode", "uniform"));
  if (s.allocation.mode == AllocationMode::explicit_fractions) {
    Fractions& f = s.allocation.fractions;
    f.r = get_or<double>(alloc, "f_r", 0);
    f.exp = get_or<double>(alloc, "f_exp", 0);
    f.M = get_or<double>(alloc, "f_M", 0);
    f.zeta = get_or<double>(alloc, "f_zeta", 0);
    f.m = get_or<double>(alloc, "f_m", 0);
    f.W = get_or<double>(alloc, "f_W", 0);
    for (double v : {f.r, f.exp, f.M, f.zeta, f.m, f.W})
      if (!(v > 0.0)) throw ValidationError("explicit fractions must all be positive");
    if (std::abs(f.sum() - 1.0) > 1e-12) throw ValidationError("explicit fractions must sum to 1");
  } else if (s.allocation.mode == AllocationMode::reciprocal) {
    s.allocation.inv_r = get_or<double>(alloc, "inv_r", 0);
    s.allocation.inv_M = get_or<double>(alloc, "inv_M", 0);
    s.allocation.inv_zeta = get_or<double>(alloc, "inv_zeta", 0);
    s.allocation.inv_m = get_or<double>(alloc, "inv_m", 0);
    if (alloc.contains("inv_exp")) s.allocation.inv_exp = get_or<double>(alloc, "inv_exp", 0);
    for (double v : {s.allocation.inv_r, s.allocation.inv_M, s.allocation.inv_zeta,
                     s.allocation.inv_m, s.allocation.inv_exp.value_or(1.0)})
      if (!(v > 0.0)) throw ValidationError("reciprocal fractions must be positive");
  }

  const json ov = opts.value("overrides", json::object());
  s.overrides.n_g = opt_int(ov, "n_g");
  s.overrides.n_M = opt_int(ov, "n_M");
  s.overrides.n_gamma = opt_int(ov, "n_gamma");
  if (s.overrides.n_g && (*s.overrides.n_g < 2 || *s.overrides.n_g > 30))
    throw ValidationError("override n_g must lie in [2, 30]");
  if (s.overrides.n_M && (*s.overrides.n_M < 2 || *s.overrides.n_M > 62))
    throw ValidationError("override n_M must lie in [2, 62]");
  if (s.overrides.n_gamma && (*s.overrides.n_gamma < 0 || *s.overrides.n_gamma > 40))
    throw ValidationError("override n_gamma must lie in [0, 40]");

  if (doc.contains("reference")) {
    const json& r = doc.at("reference");
    ReferenceValues ref;
    ref.toffolis_per_fs = get_or<double>(r, "toffolis_per_fs", 0);
    ref.toffolis_per_walk = get_or<double>(r, "toffolis_per_walk", 0);
    ref.qubits_total = get_or<int>(r, "qubits_total", 0);
    ref.qubits_ancilla = get_or<int>(r, "qubits_ancilla", 0);
    ref.one_norm = get_or<double>(r, "one_norm", 0);
    s.reference = ref;
  }
  // Fail early on compositions that cannot form a particle set.
  particles_from_composition(s.composition, s.net_charge, db);
  return s;
}

ReactionSpec load_reaction_text(const std::string& text, const ElementDb& db) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  return load_reaction(doc, db);
}

json to_json(const ReactionSpec& s) {
  json comp = json::array();
  for (const auto& [el, n] : s.composition) comp.push_back({{"element", el}, {"count", n}});
  json alloc = {{"mode", allocation_name(s.allocation.mode)}};
  if (s.allocation.mode == AllocationMode::explicit_fractions) {
    alloc.update(fractions_json(s.allocation.fractions));
  } else if (s.allocation.mode == AllocationMode::reciprocal) {
    alloc["inv_r"] = s.allocation.inv_r;
    alloc["inv_M"] = s.allocation.inv_M;
    alloc["inv_zeta"] = s.allocation.inv_zeta;
    alloc["inv_m"] = s.allocation.inv_m;
    if (s.allocation.inv_exp) alloc["inv_exp"] = *s.allocation.inv_exp;
  }
  json ov = json::object();
  if (s.overrides.n_g) ov["n_g"] = *s.overrides.n_g;
  if (s.overrides.n_M) ov["n_M"] = *s.overrides.n_M;
  if (s.overrides.n_gamma) ov["n_gamma"] = *s.overrides.n_gamma;
  json doc = {
      {"schema", kSchemaVersion},
      {"name", s.name},
      {"composition", comp},
      {"net_charge", s.net_charge},
      {"temperature", s.temperature},
      {"box_width", s.box_width},
      {"time", s.time},
      {"epsilon", s.epsilon},
      {"n_sigma", s.n_sigma},
      {"options",
       {{"gamma_saturation", s.gamma_saturation},
        {"spectral_shift", s.spectral_shift},
        {"prep_strategy", prep_choice_name(s.prep_strategy)},
        {"data_loader", to_string(s.data_loader)},
        {"allocation", alloc},
        {"overrides", ov}}},
  };
  if (s.reference) {
    const auto& r = *s.reference;
    doc["reference"] = {{"toffolis_per_fs", r.toffolis_per_fs},
                        {"toffolis_per_walk", r.toffolis_per_walk},
                        {"qubits_total", r.qubits_total},
                        {"qubits_ancilla", r.qubits_ancilla},
                        {"one_norm", r.one_norm}};
  }
  return doc;
}

namespace {

struct Builtin {
  const char* name;
  std::vector<std::pair<std::string, int>> composition;
  double L, T_celsius;
  int n_g, n_gamma, n_M;
  double inv_r, inv_exp, inv_M, inv_zeta, inv_m;
  ReferenceValues ref;
};

const std::vector<Builtin>& builtins() {
  static const std::vector<Builtin> table = {
      {"NH3+BF3", {{"N", 1}, {"H", 3}, {"B", 1}, {"F", 3}}, 22, 30, 7, 3, 24,
       51.13, 25.93, 1.64, 3.20, 56.57, {8.72e9, 8.2e3, 1362, 312, 1.88e4}},
      {"2NO2", {{"N", 2}, {"O", 4}}, 22, 30, 7, 3, 24,
       158.64, 1.73, 3.08, 12.18, 130.02, {1.05e10, 8.6e3, 1419, 327, 2.15e4}},
      {"C2H4+O2", {{"C", 2}, {"H", 4}, {"O", 2}}, 22, 1500, 9, 7, 23,
       89.89, 42.15, 1.19, 10.31, 40.70, {7.07e10, 8.5e3, 1453, 373, 1.46e5}},
      {"C2H4+O3", {{"C", 2}, {"H", 4}, {"O", 3}}, 22, -90, 7, 3, 23,
       28.39, 257.08, 1.09, 25.87, 144.65, {8.05e9, 8.1e3, 1341, 312, 1.76e4}},
      {"C23H20N3O", {{"C", 23}, {"H", 20}, {"N", 3}, {"O", 1}}, 44, 30, 8, 3, 30,
       83.45, 12.95, 1.38, 5.92, 61.28, {2.73e11, 2.2e4, 6198, 582, 2.16e5}},
  };
  return table;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& b : builtins()) out.push_back(b.name);
  return out;
}

ReactionSpec builtin_reaction(const std::string& name) {
  for (const auto& b : builtins()) {
    if (name != b.name) continue;
    ReactionSpec s;
    s.name = b.name;
    s.composition = b.composition;
    s.temperature = units::celsius_to_kelvin(b.T_celsius);
    s.box_width = b.L;
    s.time = 1.0;
    s.epsilon = 1e-2;
    s.data_loader = DataLoader::qroam;
    s.allocation.mode = AllocationMode::reciprocal;
    s.allocation.inv_r = b.inv_r;
    s.allocation.inv_exp = b.inv_exp;
    s.allocation.inv_M = b.inv_M;
    s.allocation.inv_zeta = b.inv_zeta;
    s.allocation.inv_m = b.inv_m;
    s.overrides = {b.n_g, b.n_M, b.n_gamma};
    s.reference = b.ref;
    return s;
  }
  throw ValidationError("no built-in reaction named " + name);
}

namespace {

struct Context {
  ParticleSet particles;
  GridSpec grid;
  SaturationSpec saturation;
  NormBundle norms;
  int derived_n_g = 0;
  int derived_n_gamma = 0;
  std::map<std::string, std::string> provenance;
};

Context make_context(const ReactionSpec& s) {
  ParticleSet p = particles_from_composition(s.composition, s.net_charge);
  const double L = units::angstrom_to_bohr(s.box_width);
  const int derived_ng = required_ng(L, minimum_spacing(p, s.temperature));
  const int n_g = s.overrides.n_g.value_or(derived_ng);
  GridSpec grid(L, n_g);
  std::map<std::string, std::string> prov;
  prov["n_g"] = s.overrides.n_g ? "override" : "derived";

  int derived_ngamma = 0;
  SaturationSpec sat;
  if (s.gamma_saturation) {
    try {
      derived_ngamma = gamma_spec(min_nuclear_distance({s.temperature, s.n_sigma}), grid).n_gamma;
    } catch (const DomainError&) {
      derived_ngamma = 0;
    }
    sat = saturation_from_n_gamma(s.overrides.n_gamma.value_or(derived_ngamma), grid);
    prov["n_gamma"] = s.overrides.n_gamma ? "override" : "derived";
  } else {
    sat = saturation_from_n_gamma(0, grid);
    prov["n_gamma"] = "disabled";
  }
  NormBundle norms = compute_norms(p, grid, sat, s.spectral_shift, s.gamma_saturation);
  return {std::move(p), grid, sat, norms, derived_ng, derived_ngamma, std::move(prov)};
}

Fractions resolve_fractions(const ReactionSpec& s, const NormBundle& n) {
  switch (s.allocation.mode) {
    case AllocationMode::uniform:
    case AllocationMode::optimized:
      return Fractions::uniform();
    case AllocationMode::explicit_fractions:
      return s.allocation.fractions;
    case AllocationMode::reciprocal:
      if (s.allocation.inv_exp)
        return Fractions::from_reciprocals_normalized(s.allocation.inv_r, *s.allocation.inv_exp,
                                                      s.allocation.inv_M, s.allocation.inv_zeta,
                                                      s.allocation.inv_m, n.lambda_T);
      return Fractions::from_reciprocals(s.allocation.inv_r, s.allocation.inv_M,
                                         s.allocation.inv_zeta, s.allocation.inv_m, n.lambda_T);
  }
  return Fractions::uniform();
}

EstimateReport evaluate(const ReactionSpec& s, const Context& ctx, const Fractions& f) {
  EstimateReport r;
  r.spec = s;
  r.eta = ctx.particles.eta();
  r.eta_e = ctx.particles.eta_e();
  r.n_g = ctx.grid.n_g();
  r.derived_n_g = ctx.derived_n_g;
  r.n_gamma = ctx.saturation.n_gamma;
  r.gamma = ctx.saturation.gamma;
  r.derived_n_gamma = ctx.derived_n_gamma;
  r.provenance = ctx.provenance;
  r.norms = ctx.norms;
  r.delta_angstrom = units::bohr_to_angstrom(ctx.grid.delta());
  r.fractions = f;

  const double t_au = units::fs_to_au(s.time);
  r.budget = allocate(s.epsilon, t_au, ctx.norms, f);
  const ErrorBudget& b = r.budget;
  r.derived_n_M = n_M_from_budget(b, ctx.norms, ctx.grid,
                                  s.spectral_shift ? TruncationBound::shifted : TruncationBound::plain);
  r.n_M = s.overrides.n_M.value_or(r.derived_n_M);
  r.provenance["n_M"] = s.overrides.n_M ? "override" : "derived";
  r.provenance["allocation"] = allocation_name(s.allocation.mode);
  r.provenance["data_loader"] = to_string(s.data_loader);

  PrepOptions po;
  po.loader = s.data_loader;
  const int eta = r.eta;
  switch (s.prep_strategy) {
    case PrepChoice::auto_select: r.prep_strategy = choose_prep(eta, 1, b.eps_zeta, po); break;
    case PrepChoice::symmetric: r.prep_strategy = PrepStrategy::symmetric; break;
    case PrepChoice::amplitude_amplified: r.prep_strategy = PrepStrategy::amplitude_amplified; break;
  }
  r.provenance["prep_strategy"] =
      s.prep_strategy == PrepChoice::auto_select ? "auto" : "requested";
  CostRecord prep_V = prep_cost(r.prep_strategy, eta, 1, b.eps_zeta, po);
  if (s.gamma_saturation) prep_V.toffolis += kGammaFlagSurcharge;
  const CostRecord prep_m = prep_cost(PrepStrategy::alias, eta, 0, b.eps_m, po);
  const int t_rw = rotation_bits(b.eps_W);
  const CostRecord rot_W{t_rw, 0, 0, 0};

  const HamiltonianCost h = block_encoding_cost_H(eta, r.n_g, r.n_M, prep_V, rot_W, prep_m);
  r.toffolis_per_walk = h.total.toffolis;
  r.breakdown = {
      {"swap_network", h.swap_network},
      {"coulomb_arithmetic", h.v_arithmetic},
      {"kinetic_arithmetic", h.kinetic_arithmetic},
      {"closed_form_offset", h.closed_form_offset},
      {"prep_V", h.prep_v},
      {"rotation_W", h.rotation_w},
      {"prep_m", h.prep_m},
  };
  const int g = r.n_g, m = r.n_M;
  auto tof = [](PrimitiveKind k, std::vector<int> p) { return primitive_cost(k, p).toffolis; };
  if (m > g + 1) {
    // The unshifted sign circuit step by step; compute and mirror are both listed.
    r.arithmetic_steps = {
        {"abs_diff", 2 * 3 * tof(PrimitiveKind::AbsDiff, {g})},
        {"sum_of_squares", 2 * tof(PrimitiveKind::SumOfSquares, {g})},
        {"square_m", 2 * tof(PrimitiveKind::Square, {m})},
        {"mult_r2_m2", 2 * tof(PrimitiveKind::Mult, {2 * g + 2, 2 * m})},
        {"inequality", tof(PrimitiveKind::SubPow2, {2 * m + 2 * g + 2, 2 * m})},
        {"phase", 1},
    };
    std::int64_t steps = 0;
    for (const auto& it : r.arithmetic_steps) steps += it.toffolis;
    r.arithmetic_steps.push_back(
        {"stated_total_offset", alternating_sign_cost(g, m, SignVariant::plain).toffolis - steps});
  }
  r.kinetic_constant_delta = kinetic_core(g, KineticConstant::proof_buildup) -
                             kinetic_core(g, KineticConstant::lemma_statement);

  r.n_R = std::max({rotation_bits(b.eps_r), t_rw, rotation_bits(std::min(0.5, b.eps_zeta / 4)),
                    rotation_bits(std::min(0.5, b.eps_m / 4))});
  r.qubits = qubit_tally(eta, g, m, prep_V, r.n_R);
  r.eps_exp_used = b.eps_exp;
  r.qsp = qsp_degree(ctx.norms.alpha_H, t_au, b.eps_exp);
  r.toffolis_total = total_toffoli(r.qsp, r.toffolis_per_walk, r.n_R);
  r.toffolis_per_fs = to_double(r.toffolis_total) / s.time;
  return r;
}

}  // namespace

u128 cost_with_fractions(const ReactionSpec& spec, const Fractions& f) {
  const Context ctx = make_context(spec);
  return evaluate(spec, ctx, f).toffolis_total;
}

OptimizationResult optimize(const ReactionSpec& spec, const OptimizerOptions& opts) {
  const Context ctx = make_context(spec);
  AllocationCost cost = [&](const Fractions& f) { return evaluate(spec, ctx, f).toffolis_total; };
  return optimize_allocation(cost, ctx.norms.lambda_T, opts);
}

EstimateReport estimate(const ReactionSpec& spec) {
  const Context ctx = make_context(spec);
  Fractions f = resolve_fractions(spec, ctx.norms);
  if (spec.allocation.mode == AllocationMode::optimized) {
    AllocationCost cost = [&](const Fractions& fr) { return evaluate(spec, ctx, fr).toffolis_total; };
    f = optimize_allocation(cost, ctx.norms.lambda_T).best;
  }
  return evaluate(spec, ctx, f);
}

std::vector<EstimateReport> estimate_all(const std::vector<ReactionSpec>& specs) {
  std::vector<std::future<EstimateReport>> jobs;
  for (const auto& s : specs) jobs.push_back(std::async(std::launch::async, estimate, std::cref(s)));
  std::vector<EstimateReport> out;
  for (auto& j : jobs) out.push_back(j.get());
  return out;
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "markdown" || s == "md") return Format::markdown;
  throw ValidationError("unknown format: " + s);
}

json report_to_json(const EstimateReport& r) {
  json bd = json::array();
  for (const auto& it : r.breakdown) bd.push_back({{"component", it.component}, {"toffolis", it.toffolis}});
  json steps = json::array();
  for (const auto& it : r.arithmetic_steps)
    steps.push_back({{"component", it.component}, {"toffolis", it.toffolis}});
  const auto& b = r.budget;
  return {
      {"schema", kSchemaVersion},
      {"spec", to_json(r.spec)},
      {"eta", r.eta},
      {"eta_e", r.eta_e},
      {"n_g", r.n_g},
      {"n_M", r.n_M},
      {"n_gamma", r.n_gamma},
      {"gamma", r.gamma},
      {"derived", {{"n_g", r.derived_n_g}, {"n_gamma", r.derived_n_gamma}, {"n_M", r.derived_n_M}}},
      {"provenance", r.provenance},
      {"delta_angstrom", r.delta_angstrom},
      {"norms",
       {{"lambda_V", r.norms.lambda_V},
        {"lambda_V_gamma", r.norms.lambda_V_gamma},
        {"lambda_T", r.norms.lambda_T},
        {"alpha_V", r.norms.alpha_V},
        {"alpha_T", r.norms.alpha_T},
        {"alpha_H", r.norms.alpha_H}}},
      {"allocation", fractions_json(r.fractions)},
      {"errors",
       {{"eps_r", b.eps_r},
        {"eps_exp", b.eps_exp},
        {"eps_M", b.eps_M},
        {"eps_zeta", b.eps_zeta},
        {"eps_m", b.eps_m},
        {"eps_W", b.eps_W}}},
      {"qsp", {{"degree", r.qsp.degree}, {"queries", r.qsp.queries}, {"c", r.qsp.c_const}}},
      {"n_R", r.n_R},
      {"prep_strategy", to_string(r.prep_strategy)},
      {"toffolis_per_walk", r.toffolis_per_walk},
      {"toffolis_total", to_string_u128(r.toffolis_total)},
      {"toffolis_per_fs", r.toffolis_per_fs},
      {"qubits", {{"system", r.qubits.system}, {"ancilla", r.qubits.ancilla}, {"total", r.qubits.total}}},
      {"breakdown", bd},
      {"coulomb_arithmetic_steps_unshifted", steps},
      {"kinetic_constant_delta", r.kinetic_constant_delta},
  };
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string breakdown_csv(const std::vector<EstimateReport>& reports) {
  std::ostringstream os;
  os << "reaction,component,toffolis\r\n";
  for (const auto& r : reports) {
    for (const auto& it : r.breakdown)
      os << csv_field(r.spec.name) << ',' << csv_field(it.component) << ',' << it.toffolis << "\r\n";
    os << csv_field(r.spec.name) << ",total," << r.toffolis_per_walk << "\r\n";
  }
  return os.str();
}

std::string pretty(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

}  // namespace

std::string render(const std::vector<EstimateReport>& reports, Format format) {
  switch (format) {
    case Format::json: {
      json arr = json::array();
      for (const auto& r : reports) arr.push_back(report_to_json(r));
      return arr.dump(2) + "\n";
    }
    case Format::csv: {
      std::ostringstream os;
      os << "reaction,eta,eta_e,toffolis_per_fs,toffolis_per_walk,qubits_total,qubits_ancilla,"
            "one_norm,n_g,n_M,n_gamma\r\n";
      for (const auto& r : reports)
        os << csv_field(r.spec.name) << ',' << r.eta << ',' << r.eta_e << ','
           << sci(r.toffolis_per_fs) << ',' << r.toffolis_per_walk << ',' << r.qubits.total << ','
           << r.qubits.ancilla << ',' << sci(r.norms.alpha_H) << ',' << r.n_g << ',' << r.n_M << ','
           << r.n_gamma << "\r\n";
      os << "\r\n" << breakdown_csv(reports);
      return os.str();
    }
    case Format::markdown: {
      std::ostringstream os;
      os << "| Reactants | Number of particles (electrons) | Toffolis per fs | Toffolis per W | "
            "Logical qubits | 1-norm |\n";
      os << "|---|---|---|---|---|---|\n";
      for (const auto& r : reports)
        os << "| " << r.spec.name << " | " << r.eta << " (" << r.eta_e << ") | "
           << pretty(r.toffolis_per_fs) << " | " << pretty(static_cast<double>(r.toffolis_per_walk))
           << " | " << r.qubits.total << " (" << r.qubits.ancilla << ") | "
           << pretty(r.norms.alpha_H) << " |\n";
      os << "\n```csv\n" << breakdown_csv(reports) << "```\n";
      return os.str();
    }
  }
  return {};
}

}  // namespace pbo
