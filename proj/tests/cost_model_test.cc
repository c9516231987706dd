#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "pbo/cost_model.h"
#include "pbo/errors.h"

using namespace pbo;

TEST(CostRecord, Composition) {
  const CostRecord a{10, 3, 2, 5}, b{4, 7, 1, 2};
  EXPECT_EQ(a.then(b), (CostRecord{14, 7, 3, 5}));
  EXPECT_EQ(a.alongside(b), (CostRecord{14, 10, 3, 7}));
  EXPECT_EQ(a.times(3), (CostRecord{30, 3, 6, 5}));
  EXPECT_EQ(a.times(0), CostRecord{});
  EXPECT_THROW(a.times(-1), UsageError);
  const CostRecord c{1, 1, 1, 9};
  EXPECT_EQ(a.then(b).then(c), a.then(b.then(c)));
  EXPECT_EQ(a.alongside(b), b.alongside(a));
}

TEST(Primitives, ArityAndWidthChecks) {
  for (PrimitiveKind k : all_primitive_kinds()) {
    std::vector<int> bad(primitive_arity(k) + 1, 4);
    EXPECT_THROW(primitive_cost(k, bad), UsageError) << to_string(k);
    std::vector<int> zero(primitive_arity(k), 0);
    EXPECT_THROW(primitive_cost(k, zero), UsageError) << to_string(k);
  }
  EXPECT_THROW(primitive_cost(PrimitiveKind::SubPow2, {4, 4}), UsageError);
  EXPECT_THROW(primitive_cost(PrimitiveKind::Mult, {5, 4}), UsageError);
}

TEST(Primitives, QuotedCounts) {
  for (int n = 2; n <= 20; ++n) {
    EXPECT_EQ(primitive_cost(PrimitiveKind::Abs, {n}).toffolis, n - 1);
    EXPECT_EQ(primitive_cost(PrimitiveKind::AbsDiff, {n}).toffolis, 2 * n);
    EXPECT_EQ(primitive_cost(PrimitiveKind::IsEq, {n}).toffolis, n - 1);
    EXPECT_EQ(primitive_cost(PrimitiveKind::Square, {n}).toffolis, n * n - 2);
    EXPECT_EQ(primitive_cost(PrimitiveKind::SumOfSquares, {n}).toffolis, 3 * n * n - n - 1);
    EXPECT_EQ(primitive_cost(PrimitiveKind::QFT, {n}).toffolis, n * (n + 1));
    EXPECT_EQ(primitive_cost(PrimitiveKind::Rotation, {n}).toffolis, n);
    EXPECT_EQ(primitive_cost(PrimitiveKind::PrepW, {n}).toffolis, n + 1);
    for (int k = 0; k < n; ++k)
      EXPECT_EQ(primitive_cost(PrimitiveKind::SubPow2, {n, k}).toffolis, n - k - 1);
  }
  EXPECT_EQ(primitive_cost(PrimitiveKind::Mult, {16, 48}).toffolis, 16 * 48 + 96 + 16 + 3);
}

TEST(Primitives, MonotoneInWidth) {
  for (PrimitiveKind k : all_primitive_kinds()) {
    if (primitive_arity(k) != 1) continue;
    for (int n = 2; n < 30; ++n)
      EXPECT_LE(primitive_cost(k, {n}).toffolis, primitive_cost(k, {n + 1}).toffolis)
          << to_string(k);
  }
}

TEST(Rotation, BitsOfPrecision) {
  EXPECT_EQ(rotation_bits(M_PI / 1024), 10);
  EXPECT_EQ(rotation_bits(M_PI / 1000), 10);
  EXPECT_EQ(rotation_bits(1e-10), 35);
  EXPECT_THROW(rotation_bits(0), UsageError);
  EXPECT_EQ(ceil_log2(1), 0);
  EXPECT_EQ(ceil_log2(50), 6);
  EXPECT_EQ(ceil_log2(64), 6);
}

TEST(SwapNetwork, ClosedFormAndComposition) {
  // 50 registers of 7 bits: 2 * dims * 49 * 8 - 4 * dims.
  EXPECT_EQ(primitive_cost(PrimitiveKind::Swap2D, {50, 7}).toffolis, 2 * 2 * 49 * 8 - 8);
  EXPECT_EQ(primitive_cost(PrimitiveKind::Swap1D, {50, 7}).toffolis, 2 * 49 * 8 - 4);
  EXPECT_EQ(primitive_cost(PrimitiveKind::Swap1D, {4, 3}).temp_carry, 0);
  EXPECT_EQ(primitive_cost(PrimitiveKind::Swap1D, {12, 3}).temp_carry, 4);
  const CostRecord inner{100, 2, 3, 40}, prep{30, 5, 6, 7};
  const CostRecord s = swap_network_cost(2, 50, 7, inner, prep);
  EXPECT_EQ(s.toffolis, 2 * 30 + 100 + 2 * 2 * 49 * 8 - 8);
  EXPECT_EQ(s.temp_carry, 40);
  EXPECT_THROW(swap_network_cost(3, 5, 2, {}, {}), UsageError);
}

TEST(AlternatingSign, VariantsAndPrecondition) {
  EXPECT_EQ(alternating_sign_cost(7, 24, SignVariant::plain).toffolis, 3294);
  EXPECT_EQ(alternating_sign_cost(7, 24, SignVariant::gamma).toffolis, 3297);
  EXPECT_EQ(alternating_sign_cost(7, 24, SignVariant::shifted_gamma).toffolis, 3568);
  try {
    alternating_sign_cost(7, 8, SignVariant::plain);
    FAIL() << "expected UsageError";
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("n_M > n_g + 1"), std::string::npos);
  }
}

TEST(AlternatingSign, StepwiseRederivationIsTwoBelowStatedTotal) {
  // Rebuild the plain sign circuit from its primitives: three coordinate
  // differences, the sum of squares, m^2, r^2 m^2, each computed and mirrored,
  // then one comparison with 2^(2 n_M) and a single phase Toffoli. The printed
  // total charges two more Toffolis than this sum for every (n_g, n_M).
  for (int g = 3; g <= 10; ++g)
    for (int m = g + 2; m <= 40; ++m) {
      auto t = [](PrimitiveKind k, std::vector<int> p) { return primitive_cost(k, p).toffolis; };
      const std::int64_t forward = 3 * t(PrimitiveKind::AbsDiff, {g}) +
                                   t(PrimitiveKind::SumOfSquares, {g}) +
                                   t(PrimitiveKind::Square, {m}) +
                                   t(PrimitiveKind::Mult, {2 * g + 2, 2 * m});
      const std::int64_t steps =
          2 * forward + t(PrimitiveKind::SubPow2, {2 * m + 2 * g + 2, 2 * m}) + 1;
      EXPECT_EQ(alternating_sign_cost(g, m, SignVariant::plain).toffolis - steps, 2)
          << "g=" << g << " m=" << m;
    }
}

TEST(Prep, StrategiesAndLoaders) {
  for (int K : {8, 40, 50, 52, 234}) {
    for (double eps : {1e-3, 1e-6, 1e-9}) {
      const auto qrom = prep_cost(PrepStrategy::alias, K, 1, eps);
      const auto qroam = prep_cost(PrepStrategy::alias, K, 1, eps, {true, DataLoader::qroam});
      EXPECT_LE(qroam.toffolis, qrom.toffolis);
      const auto unc = prep_cost(PrepStrategy::alias, K, 1, eps, {false, DataLoader::qrom});
      EXPECT_LT(unc.toffolis, qrom.toffolis);
      // Tighter precision never gets cheaper.
      EXPECT_LE(prep_cost(PrepStrategy::alias, K, 1, eps).toffolis,
                prep_cost(PrepStrategy::alias, K, 1, eps / 10).toffolis);
      const auto sym = prep_cost(PrepStrategy::symmetric, K, 1, eps);
      const auto aa = prep_cost(PrepStrategy::amplitude_amplified, K, 1, eps);
      const PrepStrategy pick = choose_prep(K, 1, eps);
      EXPECT_EQ(prep_cost(pick, K, 1, eps).toffolis, std::min(sym.toffolis, aa.toffolis));
    }
  }
}

TEST(Prep, AliasFormulaByHand) {
  // K = 50 = 2 * 25: k_K = 1, l_K = 5; aleph = ceil(log2(2 / (50 * 1e-3))) = 6;
  // index bits 6, no flags: data width b = 12, QROM 49.
  // Rotation 2 * ceil(log2(4 pi / 1e-3)) = 2 * 14.
  const PrepDetail d = prep_detail(PrepStrategy::alias, 50, 0, 1e-3, {false, DataLoader::qrom});
  EXPECT_EQ(d.aleph, 6);
  EXPECT_EQ(d.load_toffolis, 49);
  EXPECT_EQ(d.cost.toffolis, 6 + 0 + 10 + 49 + 28 + 6);
  const PrepDetail c = prep_detail(PrepStrategy::alias, 50, 0, 1e-3, {true, DataLoader::qrom});
  EXPECT_EQ(c.cost.toffolis - d.cost.toffolis, 5 + 1 + 6 + 1);
}

TEST(Hamiltonian, ClosedFormCore) {
  // 4 * 49 * 22 swaps + shifted sign 3568 + kinetic 193 + 2 n_g, summed by hand.
  EXPECT_EQ(hamiltonian_closed_form(50, 7, 24), 4312 + 3568 + 193 + 14);
  EXPECT_EQ(hamiltonian_closed_form(50, 7, 24), 8087);
  const CostRecord pv{100, 0, 20, 0}, tr{30, 0, 0, 0}, tm{50, 0, 5, 0};
  const HamiltonianCost h = block_encoding_cost_H(50, 7, 24, pv, tr, tm);
  EXPECT_EQ(h.total.toffolis, 8087 + 200 + 60 + 100);
  EXPECT_EQ(h.swap_network + h.v_arithmetic + h.kinetic_arithmetic + h.closed_form_offset +
                h.prep_v + h.rotation_w + h.prep_m,
            h.total.toffolis);
  EXPECT_EQ(h.closed_form_offset, 14);
  EXPECT_THROW(block_encoding_cost_H(50, 7, 8, pv, tr, tm), UsageError);
}

TEST(Hamiltonian, ClosedFormGrowsWithEveryParameter) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> e(2, 400), g(2, 12);
  for (int i = 0; i < 1000; ++i) {
    const int eta = e(rng), ng = g(rng), nm = ng + 2 + i % 20;
    const auto base = hamiltonian_closed_form(eta, ng, nm);
    EXPECT_LT(base, hamiltonian_closed_form(eta + 1, ng, nm));
    EXPECT_LT(base, hamiltonian_closed_form(eta, ng + 1, nm));
    EXPECT_LT(base, hamiltonian_closed_form(eta, ng, nm + 1));
  }
}

TEST(Potential, BlockEncodingOffsets) {
  const CostRecord prep{200, 0, 30, 4};
  const auto plain = block_encoding_cost_V(50, 7, 24, SignVariant::plain, prep);
  const auto shifted = block_encoding_cost_V(50, 7, 24, SignVariant::shifted_gamma, prep);
  EXPECT_EQ(plain.toffolis, 400 + 4312 + 3294 - 8);
  EXPECT_EQ(shifted.toffolis, 400 + 4312 + 3568);
  EXPECT_EQ(plain.be_qubits, 24 + 12);
  EXPECT_EQ(n_V(50, 24), 36);
}

TEST(Kinetic, ConstantConventions) {
  for (int g = 2; g < 20; ++g)
    EXPECT_EQ(kinetic_core(g, KineticConstant::proof_buildup) -
                  kinetic_core(g, KineticConstant::lemma_statement),
              2 * g - 1);
  const CostRecord pm{40, 0, 10, 3};
  const auto fused = block_encoding_cost_T(50, 7, 1e-6, 1e-6, pm, true);
  const auto unfused = block_encoding_cost_T(50, 7, 1e-6, 1e-6, pm, false);
  EXPECT_EQ(fused.toffolis, 193 + 2 * rotation_bits(1e-6) + 80);
  EXPECT_EQ(unfused.toffolis - fused.toffolis, 2 * 49 * 22 - 4);
  EXPECT_EQ(fused.be_qubits, 6 + 7 + 4);
}

TEST(Qubits, SystemRegisterIsExact) {
  const CostRecord pv{0, 0, 30, 0};
  const QubitTally q = qubit_tally(50, 7, 24, pv, 33);
  EXPECT_EQ(q.system, 1050);
  EXPECT_EQ(q.ancilla, n_H(50, 24) + n_H_temp(7, 24, pv) + 33 + 2);
  EXPECT_EQ(n_H(50, 24), 39);
  EXPECT_EQ(q.total, q.system + q.ancilla);
}
