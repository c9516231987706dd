#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pbo {

struct CostRecord {
  std::int64_t toffolis = 0;
  std::int64_t be_qubits = 0;      // must read zero for the block-encoding
  std::int64_t junk_ancillas = 0;  // kept alive until the mirrored pass
  std::int64_t temp_carry = 0;     // peak transient ancillas

  // One after the other, transient carries reused.
  CostRecord then(const CostRecord& o) const;
  // Side by side, nothing shared.
  CostRecord alongside(const CostRecord& o) const;
  CostRecord times(std::int64_t k) const;  // k sequential copies

  bool operator==(const CostRecord&) const = default;
};

enum class PrimitiveKind {
  Abs,
  AbsDiff,
  IsEq,
  Square,
  SumOfSquares,
  Mult,
  SubPow2,
  CSub,
  AmpBE,
  WalkSquare,
  Rotation,
  PrepW,
  QFT,
  Swap1D,
  Swap2D,
  AlternatingSign,
};

const char* to_string(PrimitiveKind k);
std::vector<PrimitiveKind> all_primitive_kinds();
std::size_t primitive_arity(PrimitiveKind k);

// Parameter lists:
//   Abs/AbsDiff/IsEq/Square/SumOfSquares/AmpBE/WalkSquare/QFT/CSub: {n}
//   Mult: {n_a, n_b} with n_a <= n_b;  SubPow2: {n, k}
//   Rotation/PrepW: {n_R};  Swap1D/Swap2D: {K, n};  AlternatingSign: {n_g, n_M}
CostRecord primitive_cost(PrimitiveKind kind, const std::vector<int>& params);

int ceil_log2(std::int64_t x);  // 0 for x <= 1
int rotation_bits(double eps);  // ceil(log2(pi/eps))

CostRecord swap_network_cost(int dims, int K, int n, const CostRecord& inner,
                             const CostRecord& prep);

enum class SignVariant { plain, gamma, shifted_gamma };
const char* to_string(SignVariant v);

CostRecord alternating_sign_cost(int n_g, int n_M, SignVariant variant);

enum class PrepStrategy { alias, symmetric, amplitude_amplified };
enum class DataLoader { qrom, qroam };
const char* to_string(PrepStrategy s);
const char* to_string(DataLoader d);

struct PrepOptions {
  bool controlled = true;
  DataLoader loader = DataLoader::qrom;
};

struct PrepDetail {
  CostRecord cost;
  PrepStrategy strategy = PrepStrategy::alias;
  std::int64_t entries = 0;       // coefficients actually loaded
  int aleph = 0;
  std::int64_t data_bits = 0;     // b
  std::int64_t load_toffolis = 0; // Q(K, b)
  int qroam_log_block = 0;        // lambda, 0 for plain QROM
  std::int64_t dirty_ancillas = 0;
  std::int64_t inner_alias_toffolis = 0;  // T_zeta for amplitude amplification
};

PrepDetail prep_detail(PrepStrategy strategy, int K, int n_flags, double eps,
                       PrepOptions opts = {});
CostRecord prep_cost(PrepStrategy strategy, int K, int n_flags, double eps,
                     PrepOptions opts = {});
// Cheaper of symmetric and amplitude-amplified for the pair-charge state.
PrepStrategy choose_prep(int eta, int n_flags, double eps, PrepOptions opts = {});

// Nuclear-pair flag surcharge on PREP_V when the saturation is switched on.
inline constexpr int kGammaFlagSurcharge = 2;

CostRecord block_encoding_cost_V(int eta, int n_g, int n_M, SignVariant variant,
                                 const CostRecord& prep);
int n_V(int eta, int n_M);

enum class KineticConstant { lemma_statement, proof_buildup };

CostRecord block_encoding_cost_T(int eta, int n_g, double eps_W, double eps_m,
                                 const CostRecord& prep_m, bool fused_swaps,
                                 KineticConstant constant = KineticConstant::lemma_statement);
std::int64_t kinetic_core(int n_g, KineticConstant constant);

struct HamiltonianCost {
  CostRecord total;
  std::int64_t closed_form = 0;  // everything except prep and rotation terms
  // Parts; they add to total.toffolis.
  std::int64_t swap_network = 0;
  std::int64_t v_arithmetic = 0;
  std::int64_t kinetic_arithmetic = 0;
  std::int64_t closed_form_offset = 0;
  std::int64_t prep_v = 0;
  std::int64_t rotation_w = 0;
  std::int64_t prep_m = 0;
};

HamiltonianCost block_encoding_cost_H(int eta, int n_g, int n_M, const CostRecord& prep_V,
                                      const CostRecord& T_R, const CostRecord& T_m);
std::int64_t hamiltonian_closed_form(int eta, int n_g, int n_M);
int n_H(int eta, int n_M);
std::int64_t n_H_temp(int n_g, int n_M, const CostRecord& prep_V);

struct QubitTally {
  std::int64_t system = 0;
  std::int64_t ancilla = 0;
  std::int64_t total = 0;
};

inline constexpr int kQspControlQubits = 2;

QubitTally qubit_tally(int eta, int n_g, int n_M, const CostRecord& prep_V, int n_R);

}  // namespace pbo
