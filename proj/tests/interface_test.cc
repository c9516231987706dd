#include <gtest/gtest.h>

#include <random>

#include "pbo/errors.h"
#include "pbo/interface.h"

using namespace pbo;
using nlohmann::json;

namespace {

const char* kMinimal = R"({
  "schema": 1, "name": "water",
  "composition": [{"element": "O", "count": 1}, {"element": "H", "count": 2}],
  "temperature": 300, "box_width": 12
})";

}  // namespace

TEST(Load, DefaultsFromMinimalDocument) {
  const ReactionSpec s = load_reaction_text(kMinimal);
  EXPECT_EQ(s.name, "water");
  EXPECT_EQ(s.time, 1.0);
  EXPECT_EQ(s.epsilon, 1e-2);
  EXPECT_TRUE(s.gamma_saturation);
  EXPECT_TRUE(s.spectral_shift);
  EXPECT_EQ(s.allocation.mode, AllocationMode::uniform);
  EXPECT_FALSE(s.overrides.n_g.has_value());
}

TEST(Load, RejectsBadDocuments) {
  auto with = [](const std::string& key, json v) {
    json d = json::parse(kMinimal);
    d[key] = v;
    return d;
  };
  EXPECT_THROW(load_reaction_text("{"), ValidationError);
  EXPECT_THROW(load_reaction(with("schema", 2)), ValidationError);
  EXPECT_THROW(load_reaction(with("temperature", -4)), ValidationError);
  EXPECT_THROW(load_reaction(with("epsilon", 2)), ValidationError);
  EXPECT_THROW(load_reaction(with("composition", json::array())), ValidationError);
  EXPECT_THROW(load_reaction(with("composition", json::parse(R"([{"element":"Zz","count":1}])"))),
               ValidationError);
  EXPECT_THROW(load_reaction(with("options", json::parse(R"({"prep_strategy":"magic"})"))),
               ValidationError);
  EXPECT_THROW(load_reaction(with("options", json::parse(R"({"overrides":{"n_g":40}})"))),
               ValidationError);
  EXPECT_THROW(load_reaction(with("options", json::parse(
                                              R"({"allocation":{"mode":"explicit","f_r":0.5}})"))),
               ValidationError);
  EXPECT_THROW(load_reaction(with("temperature", "hot")), ValidationError);
}

TEST(Load, RoundTripsBuiltinsAndRandomSpecs) {
  for (const auto& name : builtin_names()) {
    const ReactionSpec s = builtin_reaction(name);
    EXPECT_EQ(load_reaction(to_json(s)), s) << name;
    EXPECT_EQ(load_reaction_text(to_json(s).dump()), s) << name;
  }
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.1, 1.0);
  const char* elems[] = {"H", "C", "N", "O", "F", "Cl"};
  for (int i = 0; i < 200; ++i) {
    ReactionSpec s;
    s.name = "r" + std::to_string(i);
    for (int k = 0; k < 1 + static_cast<int>(rng() % 3); ++k)
      s.composition.emplace_back(elems[(i + k) % 6], 1 + static_cast<int>(rng() % 4));
    s.temperature = 100 + 1000 * u(rng);
    s.box_width = 10 + 30 * u(rng);
    s.time = u(rng);
    s.epsilon = u(rng) * 1e-3;
    s.n_sigma = static_cast<int>(rng() % 7);
    s.gamma_saturation = rng() % 2;
    s.spectral_shift = rng() % 2;
    s.prep_strategy = static_cast<PrepChoice>(rng() % 3);
    s.data_loader = rng() % 2 ? DataLoader::qrom : DataLoader::qroam;
    if (rng() % 2) {
      s.allocation.mode = AllocationMode::reciprocal;
      s.allocation.inv_r = 10 + 50 * u(rng);
      s.allocation.inv_M = 2 + 5 * u(rng);
      s.allocation.inv_zeta = 5 + 5 * u(rng);
      s.allocation.inv_m = 20 + 40 * u(rng);
      if (rng() % 2) s.allocation.inv_exp = 1 + 10 * u(rng);
    }
    if (rng() % 2) s.overrides.n_g = 5 + static_cast<int>(rng() % 4);
    ASSERT_EQ(load_reaction(to_json(s)), s) << to_json(s).dump();
  }
}

TEST(Builtins, ParticleCounts) {
  const std::map<std::string, std::pair<int, int>> expect = {
      {"NH3+BF3", {50, 42}}, {"2NO2", {52, 46}}, {"C2H4+O2", {40, 32}},
      {"C2H4+O3", {49, 40}}, {"C23H20N3O", {234, 187}}};
  for (const auto& [name, counts] : expect) {
    const EstimateReport r = estimate(builtin_reaction(name));
    EXPECT_EQ(r.eta, counts.first) << name;
    EXPECT_EQ(r.eta_e, counts.second) << name;
  }
  EXPECT_THROW(builtin_reaction("nope"), ValidationError);
}

TEST(Estimate, InternalConsistency) {
  for (const auto& name : builtin_names()) {
    const EstimateReport r = estimate(builtin_reaction(name));
    std::int64_t sum = 0;
    for (const auto& b : r.breakdown) sum += b.toffolis;
    EXPECT_EQ(sum, r.toffolis_per_walk) << name;
    std::int64_t steps = 0;
    for (const auto& b : r.arithmetic_steps) steps += b.toffolis;
    EXPECT_EQ(steps, alternating_sign_cost(r.n_g, r.n_M, SignVariant::plain).toffolis);
    EXPECT_EQ(r.arithmetic_steps.back().toffolis, 2);  // stated total minus rebuilt steps
    EXPECT_EQ(r.kinetic_constant_delta, 2 * r.n_g - 1);
    EXPECT_EQ(r.qubits.system, 3LL * r.n_g * r.eta);
    EXPECT_NEAR(r.budget.reassembled_total(r.norms), r.spec.epsilon, 1e-14);
    EXPECT_DOUBLE_EQ(r.toffolis_per_fs, to_double(r.toffolis_total) / r.spec.time);
    EXPECT_EQ(r.provenance.at("n_g"), "override");
  }
}

TEST(Estimate, DeterministicAndConcurrentMatchesSerial) {
  std::vector<ReactionSpec> specs;
  for (const auto& n : builtin_names()) specs.push_back(builtin_reaction(n));
  const auto a = estimate_all(specs);
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const EstimateReport b = estimate(specs[i]);
    EXPECT_EQ(a[i].toffolis_total, b.toffolis_total);
    EXPECT_EQ(report_to_json(a[i]), report_to_json(b));
  }
}

TEST(Estimate, TighterEpsilonCostsMore) {
  ReactionSpec s = load_reaction_text(kMinimal);
  u128 last = 0;
  for (double eps : {1e-1, 1e-2, 1e-4, 1e-8, 1e-11}) {
    s.epsilon = eps;
    const EstimateReport r = estimate(s);
    EXPECT_GE(r.toffolis_total, last);
    last = r.toffolis_total;
    EXPECT_EQ(r.provenance.at("n_M"), "derived");
  }
}

TEST(Estimate, OptimizedAllocationNotWorseThanUniform) {
  ReactionSpec s = load_reaction_text(kMinimal);
  const EstimateReport u = estimate(s);
  s.allocation.mode = AllocationMode::optimized;
  const EstimateReport o = estimate(s);
  EXPECT_LE(o.toffolis_total, u.toffolis_total);
  EXPECT_EQ(cost_with_fractions(s, Fractions::uniform()), u.toffolis_total);
}

TEST(Render, Formats) {
  const std::vector<EstimateReport> rs = {estimate(builtin_reaction("2NO2"))};
  const std::string md = render(rs, Format::markdown);
  EXPECT_NE(md.find("| Reactants | Number of particles (electrons) | Toffolis per fs"),
            std::string::npos);
  EXPECT_NE(md.find("| 2NO2 | 52 (46) |"), std::string::npos);
  const std::string csv = render(rs, Format::csv);
  EXPECT_EQ(csv.rfind("reaction,eta,", 0), 0u);
  const json j = json::parse(render(rs, Format::json));
  EXPECT_EQ(j.size(), 1u);
  EXPECT_EQ(j[0]["eta"], 52);
  EXPECT_EQ(j[0]["schema"], kSchemaVersion);
  EXPECT_EQ(parse_format("md"), Format::markdown);
  EXPECT_THROW(parse_format("xml"), ValidationError);
}

TEST(Render, CsvQuotesAwkwardNames) {
  ReactionSpec s = load_reaction_text(kMinimal);
  s.name = "water, \"wet\"";
  const std::string csv = render({estimate(s)}, Format::csv);
  EXPECT_NE(csv.find("\"water, \"\"wet\"\"\""), std::string::npos);
}
