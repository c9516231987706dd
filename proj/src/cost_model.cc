#include "pbo/cost_model.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pbo/errors.h"

namespace pbo {

CostRecord CostRecord::then(const CostRecord& o) const {
  return {toffolis + o.toffolis, std::max(be_qubits, o.be_qubits), junk_ancillas + o.junk_ancillas,
          std::max(temp_carry, o.temp_carry)};
}

CostRecord CostRecord::alongside(const CostRecord& o) const {
  return {toffolis + o.toffolis, be_qubits + o.be_qubits, junk_ancillas + o.junk_ancillas,
          temp_carry + o.temp_carry};
}

CostRecord CostRecord::times(std::int64_t k) const {
  if (k < 0) throw UsageError("repetition count must be non-negative");
  if (k == 0) return {};
  return {toffolis * k, be_qubits, junk_ancillas * k, temp_carry};
}

int ceil_log2(std::int64_t x) {
  int b = 0;
  while (x > 1 && (std::int64_t{1} << b) < x) ++b;
  return b;
}

int rotation_bits(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw UsageError("rotation precision must lie in (0, 1)");
  return static_cast<int>(std::ceil(std::log2(M_PI / eps)));
}

const char* to_string(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::Abs: return "Abs";
    case PrimitiveKind::AbsDiff: return "AbsDiff";
    case PrimitiveKind::IsEq: return "IsEq";
    case PrimitiveKind::Square: return "Square";
    case PrimitiveKind::SumOfSquares: return "SumOfSquares";
    case PrimitiveKind::Mult: return "Mult";
    case PrimitiveKind::SubPow2: return "SubPow2";
    case PrimitiveKind::CSub: return "CSub";
    case PrimitiveKind::AmpBE: return "AmpBE";
    case PrimitiveKind::WalkSquare: return "WalkSquare";
    case PrimitiveKind::Rotation: return "Rotation";
    case PrimitiveKind::PrepW: return "PrepW";
    case PrimitiveKind::QFT: return "QFT";
    case PrimitiveKind::Swap1D: return "Swap1D";
    case PrimitiveKind::Swap2D: return "Swap2D";
    case PrimitiveKind::AlternatingSign: return "AlternatingSign";
  }
  throw UsageError("unknown primitive kind");
}

std::vector<PrimitiveKind> all_primitive_kinds() {
  return {PrimitiveKind::Abs,       PrimitiveKind::AbsDiff,   PrimitiveKind::IsEq,
          PrimitiveKind::Square,    PrimitiveKind::SumOfSquares, PrimitiveKind::Mult,
          PrimitiveKind::SubPow2,   PrimitiveKind::CSub,      PrimitiveKind::AmpBE,
          PrimitiveKind::WalkSquare, PrimitiveKind::Rotation, PrimitiveKind::PrepW,
          PrimitiveKind::QFT,       PrimitiveKind::Swap1D,    PrimitiveKind::Swap2D,
          PrimitiveKind::AlternatingSign};
}

std::size_t primitive_arity(PrimitiveKind k) {
  switch (k) {
    case PrimitiveKind::Mult:
    case PrimitiveKind::SubPow2:
    case PrimitiveKind::Swap1D:
    case PrimitiveKind::Swap2D:
    case PrimitiveKind::AlternatingSign:
      return 2;
    default:
      return 1;
  }
}

CostRecord primitive_cost(PrimitiveKind kind, const std::vector<int>& params) {
  if (params.size() != primitive_arity(kind)) {
    throw UsageError(std::string(to_string(kind)) + " expects " +
                     std::to_string(primitive_arity(kind)) + " parameter(s), got " +
                     std::to_string(params.size()));
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    // The shift k of SubPow2 may be zero; everything else is a width.
    const int floor = (kind == PrimitiveKind::SubPow2 && i == 1) ? 0 : 1;
    if (params[i] < floor)
      throw UsageError(std::string(to_string(kind)) + ": parameter out of range");
  }
  const std::int64_t n = params[0];
  switch (kind) {
    case PrimitiveKind::Abs:
      if (n < 2) throw UsageError("Abs needs at least 2 bits");
      return {n - 1, 0, 1, n - 2};
    case PrimitiveKind::AbsDiff:
      return {2 * n, 0, 1, n + 1};
    case PrimitiveKind::IsEq:
      return {n - 1, 0, 1, n - 1};
    case PrimitiveKind::Square:
      if (n < 2) throw UsageError("Square needs at least 2 bits");
      return {n * n - 2, 0, 2 * n, 2 * n + 2};
    case PrimitiveKind::SumOfSquares:
      return {3 * n * n - n - 1, 0, 2 * n + 2, 3 * n * n - n - 1};
    case PrimitiveKind::Mult: {
      const std::int64_t na = params[0], nb = params[1];
      if (na > nb) throw UsageError("Mult expects n_a <= n_b");
      return {na * nb + 2 * nb + na + 3, 0, na + nb, na + nb + 1};
    }
    case PrimitiveKind::SubPow2: {
      const std::int64_t k = params[1];
      if (k >= n) throw UsageError("SubPow2 expects k < n");
      return {n - k - 1, 0, 1, n - k - 1};
    }
    case PrimitiveKind::CSub:
      if (n < 2) throw UsageError("CSub needs at least 2 bits");
      return {n - 1, 0, 3, n - 2};
    case PrimitiveKind::AmpBE:
      return {4 * n - 3, n + 1, 0, 2};
    case PrimitiveKind::WalkSquare:
      return {10 * n - 6, n + 1, 0, n - 1};
    case PrimitiveKind::Rotation:
      return {n, 0, 0, 0};
    case PrimitiveKind::PrepW:
      return {n + 1, 0, 0, 0};
    case PrimitiveKind::QFT:
      return {n * (n + 1), 0, 0, 0};
    case PrimitiveKind::Swap1D:
      return swap_network_cost(1, params[0], params[1], {}, {});
    case PrimitiveKind::Swap2D:
      return swap_network_cost(2, params[0], params[1], {}, {});
    case PrimitiveKind::AlternatingSign:
      return alternating_sign_cost(params[0], params[1], SignVariant::plain);
  }
  throw UsageError("unknown primitive kind");
}

CostRecord swap_network_cost(int dims, int K, int n, const CostRecord& inner,
                             const CostRecord& prep) {
  if (dims != 1 && dims != 2) throw UsageError("swap network dimension must be 1 or 2");
  if (K < 2) throw UsageError("swap network needs at least 2 registers");
  if (n < 1) throw UsageError("swap network register width must be positive");
  const std::int64_t swaps = 2LL * dims * (K - 1) * (1LL + n) - 4LL * dims;
  const std::int64_t unary = K > 4 ? ceil_log2(K - 3) : 0;
  CostRecord r;
  r.toffolis = 2 * prep.toffolis + inner.toffolis + swaps;
  r.be_qubits = prep.be_qubits + inner.be_qubits;
  r.junk_ancillas = prep.junk_ancillas + inner.junk_ancillas;
  r.temp_carry = std::max({inner.temp_carry, prep.temp_carry, unary});
  return r;
}

const char* to_string(SignVariant v) {
  switch (v) {
    case SignVariant::plain: return "plain";
    case SignVariant::gamma: return "gamma";
    case SignVariant::shifted_gamma: return "shifted_gamma";
  }
  return "?";
}

CostRecord alternating_sign_cost(int n_g, int n_M, SignVariant variant) {
  if (n_g < 1) throw UsageError("n_g must be positive");
  if (n_M <= n_g + 1) {
    throw UsageError("alternating-sign circuit assumes n_M > n_g + 1 (got n_g=" +
                     std::to_string(n_g) + ", n_M=" + std::to_string(n_M) + ")");
  }
  const std::int64_t g = n_g, m = n_M;
  const std::int64_t carry = g + 4 + std::max(3 * g * g, 4 * m + 5 * g + 6);
  CostRecord r;
  r.be_qubits = m;
  switch (variant) {
    case SignVariant::plain:
      r.toffolis = 2 * m * m + 8 * m * g + 16 * m + 6 * g * g + 16 * g + 8;
      r.temp_carry = carry;
      break;
    case SignVariant::gamma:
      r.toffolis = 2 * m * m + 8 * m * g + 16 * m + 6 * g * g + 16 * g + 8 + 3;
      r.temp_carry = carry + 3;
      break;
    case SignVariant::shifted_gamma:
      r.toffolis = 6 * g * g + 2 * m * m + 8 * m * g + 36 * g + 20 * m + 46;
      r.temp_carry = std::max(6 * g + 6 * m + 25, 3 * g * g + g + 4);
      break;
  }
  return r;
}

const char* to_string(PrepStrategy s) {
  switch (s) {
    case PrepStrategy::alias: return "alias";
    case PrepStrategy::symmetric: return "symmetric";
    case PrepStrategy::amplitude_amplified: return "amplitude_amplified";
  }
  return "?";
}

const char* to_string(DataLoader d) { return d == DataLoader::qrom ? "qrom" : "qroam"; }

namespace {

int two_adic(std::int64_t K) {
  int k = 0;
  while (K > 0 && (K & 1) == 0) {
    K >>= 1;
    ++k;
  }
  return k;
}

struct Load {
  std::int64_t toffolis = 0;
  std::int64_t carry = 0;
  int lambda = 0;
  std::int64_t dirty = 0;
};

Load data_load(std::int64_t K, std::int64_t b, DataLoader loader) {
  Load best;
  if (K <= 1) return best;
  best.toffolis = K - 1;
  best.carry = std::max(0, ceil_log2(K) - 1);
  if (loader == DataLoader::qroam) {
    for (int lam = 1; (std::int64_t{1} << lam) <= K; ++lam) {
      const std::int64_t blk = std::int64_t{1} << lam;
      const std::int64_t rows = (K + blk - 1) / blk;
      const std::int64_t t = rows + b * (blk - 1);
      if (t < best.toffolis) {
        best.toffolis = t;
        best.carry = std::max(0, ceil_log2(rows) - 1);
        best.lambda = lam;
        best.dirty = b * (blk - 1);
      }
    }
  }
  return best;
}

int aleph_for(std::int64_t K, double eps) {
  const double a = std::ceil(std::log2(2.0 / (static_cast<double>(K) * eps)));
  return std::max(1, static_cast<int>(a));
}

void check_eps(double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) throw UsageError("preparation error must lie in (0, 1)");
}

// Coherent alias sampling over K entries, each carrying `alt_bits` of alternate
// index plus n_F flag bits.
PrepDetail alias_core(std::int64_t K, int alt_bits, int n_flags, double eps, const PrepOptions& o) {
  const int k_K = two_adic(K);
  const int l_K = ceil_log2(K >> k_K);
  const int aleph = aleph_for(K, eps);
  const std::int64_t b = 2LL * n_flags + aleph + alt_bits;
  const Load q = data_load(K, b, o.loader);
  const std::int64_t t_rot = static_cast<std::int64_t>(std::ceil(std::log2(4.0 * M_PI / eps)));
  const int ctrl = o.controlled ? 1 : 0;

  PrepDetail d;
  d.entries = K;
  d.aleph = aleph;
  d.data_bits = b;
  d.load_toffolis = q.toffolis;
  d.qroam_log_block = q.lambda;
  d.dirty_ancillas = q.dirty;
  d.cost.toffolis = alt_bits + n_flags + 2LL * l_K + q.toffolis + 2 * t_rot + aleph +
                    (o.controlled ? static_cast<std::int64_t>(l_K) + k_K + aleph + 1 : 0);
  d.cost.be_qubits = alt_bits + n_flags;
  d.cost.junk_ancillas = alt_bits + 2LL * aleph + n_flags + 1;
  d.cost.temp_carry = std::max<std::int64_t>({l_K - 1 + ctrl, q.carry, aleph - 1, 0});
  return d;
}

}  // namespace

PrepDetail prep_detail(PrepStrategy strategy, int K, int n_flags, double eps, PrepOptions opts) {
  if (K < 1) throw UsageError("preparation needs at least one coefficient");
  if (n_flags < 0) throw UsageError("flag count must be non-negative");
  check_eps(eps);
  switch (strategy) {
    case PrepStrategy::alias: {
      PrepDetail d = alias_core(K, ceil_log2(K), n_flags, eps, opts);
      d.strategy = strategy;
      return d;
    }
    case PrepStrategy::symmetric: {
      // Load only the upper triangle; a coherent coin then swaps j and k.
      const std::int64_t S = static_cast<std::int64_t>(K) * (K + 1) / 2;
      const int b_eta = ceil_log2(K);
      PrepDetail d = alias_core(S, 2 * b_eta, n_flags, eps, opts);
      // alias_core charged the index register as its own output; here the
      // output is the (j, k) pair and the triangle index becomes junk.
      const int b_S = ceil_log2(S);
      d.cost.toffolis += b_eta + (opts.controlled ? 1 : 0);
      d.cost.be_qubits = 2LL * b_eta + n_flags;
      d.cost.junk_ancillas = b_S + 2LL * b_eta + 2LL * d.aleph + n_flags + 2;
      d.strategy = strategy;
      return d;
    }
    case PrepStrategy::amplitude_amplified: {
      const int b_eta = ceil_log2(K);
      PrepOptions inner = opts;
      inner.controlled = true;
      PrepDetail zeta = alias_core(K, b_eta, 1, eps, inner);
      const std::int64_t t_zeta = zeta.cost.toffolis + 1;
      const std::int64_t t_rot = rotation_bits(eps);
      PrepDetail d = zeta;
      d.strategy = strategy;
      d.inner_alias_toffolis = t_zeta;
      d.cost.toffolis = 6 * t_zeta + 2LL * b_eta + 16 + 5 * t_rot;
      d.cost.be_qubits = 2LL * b_eta + 2;
      d.cost.junk_ancillas = 2 * zeta.cost.junk_ancillas + 4;
      d.cost.temp_carry = std::max<std::int64_t>({zeta.cost.temp_carry, b_eta - 1, 2LL * b_eta + 7});
      return d;
    }
  }
  throw UsageError("unknown preparation strategy");
}

CostRecord prep_cost(PrepStrategy strategy, int K, int n_flags, double eps, PrepOptions opts) {
  return prep_detail(strategy, K, n_flags, eps, opts).cost;
}

PrepStrategy choose_prep(int eta, int n_flags, double eps, PrepOptions opts) {
  const auto sym = prep_cost(PrepStrategy::symmetric, eta, n_flags, eps, opts);
  const auto aa = prep_cost(PrepStrategy::amplitude_amplified, eta, n_flags, eps, opts);
  return aa.toffolis < sym.toffolis ? PrepStrategy::amplitude_amplified : PrepStrategy::symmetric;
}

int n_V(int eta, int n_M) { return n_M + 2 * ceil_log2(eta); }

CostRecord block_encoding_cost_V(int eta, int n_g, int n_M, SignVariant variant,
                                 const CostRecord& prep) {
  if (eta < 2) throw UsageError("potential needs at least two particles");
  const CostRecord sign = alternating_sign_cost(n_g, n_M, variant);
  const std::int64_t swaps = 4LL * (eta - 1) * (1LL + 3LL * n_g);
  CostRecord r;
  r.toffolis = 2 * prep.toffolis + swaps + sign.toffolis;
  if (variant != SignVariant::shifted_gamma) r.toffolis -= 8;
  r.be_qubits = n_V(eta, n_M);
  r.junk_ancillas = prep.junk_ancillas;
  const std::int64_t unary = eta > 4 ? ceil_log2(eta - 3) : 0;
  r.temp_carry = std::max({sign.temp_carry + prep.junk_ancillas, prep.temp_carry, unary});
  return r;
}

std::int64_t kinetic_core(int n_g, KineticConstant constant) {
  const std::int64_t g = n_g;
  return constant == KineticConstant::lemma_statement ? 2 * g * g + 14 * g - 3
                                                      : 2 * g * g + 16 * g - 4;
}

CostRecord block_encoding_cost_T(int eta, int n_g, double eps_W, double eps_m,
                                 const CostRecord& prep_m, bool fused_swaps,
                                 KineticConstant constant) {
  if (eta < 2) throw UsageError("kinetic term needs at least two particles");
  if (n_g < 1) throw UsageError("n_g must be positive");
  check_eps(eps_W);
  check_eps(eps_m);
  const int t_rw = rotation_bits(eps_W);
  CostRecord r;
  r.toffolis = kinetic_core(n_g, constant) + 2LL * t_rw + 2 * prep_m.toffolis;
  if (!fused_swaps) r.toffolis += 2LL * (eta - 1) * (1LL + 3LL * n_g) - 4;
  r.be_qubits = ceil_log2(eta) + n_g + 4;
  r.junk_ancillas = prep_m.junk_ancillas;
  r.temp_carry = ceil_log2(eta) + n_g - 1 + prep_m.temp_carry;
  return r;
}

std::int64_t hamiltonian_closed_form(int eta, int n_g, int n_M) {
  const std::int64_t e = eta, g = n_g, m = n_M;
  return 12 * e * g + 4 * e + 2 * m * m + 8 * g * g + 8 * m * g + 40 * g + 20 * m + 39;
}

int n_H(int eta, int n_M) { return n_M + 2 * ceil_log2(eta) + 3; }

std::int64_t n_H_temp(int n_g, int n_M, const CostRecord& prep_V) {
  const std::int64_t g = n_g, m = n_M;
  return g + 4 + std::max(3 * g * g, 4 * m + 5 * g + 6) + prep_V.junk_ancillas;
}

HamiltonianCost block_encoding_cost_H(int eta, int n_g, int n_M, const CostRecord& prep_V,
                                      const CostRecord& T_R, const CostRecord& T_m) {
  if (eta < 2) throw UsageError("Hamiltonian needs at least two particles");
  if (n_M <= n_g + 1) {
    throw UsageError("alternating-sign circuit assumes n_M > n_g + 1");
  }
  HamiltonianCost h;
  h.swap_network = 4LL * (eta - 1) * (1LL + 3LL * n_g);
  h.v_arithmetic = alternating_sign_cost(n_g, n_M, SignVariant::shifted_gamma).toffolis;
  h.kinetic_arithmetic = kinetic_core(n_g, KineticConstant::lemma_statement);
  h.closed_form = hamiltonian_closed_form(eta, n_g, n_M);
  // The printed closed form carries 2 n_g more than its own ingredients.
  h.closed_form_offset = h.closed_form - h.swap_network - h.v_arithmetic - h.kinetic_arithmetic;
  h.prep_v = 2 * prep_V.toffolis;
  h.rotation_w = 2 * T_R.toffolis;
  h.prep_m = 2 * T_m.toffolis;
  h.total.toffolis = h.closed_form + h.prep_v + h.rotation_w + h.prep_m;
  h.total.be_qubits = n_H(eta, n_M);
  h.total.junk_ancillas = prep_V.junk_ancillas + T_m.junk_ancillas;
  h.total.temp_carry = n_H_temp(n_g, n_M, prep_V);
  return h;
}

QubitTally qubit_tally(int eta, int n_g, int n_M, const CostRecord& prep_V, int n_R) {
  QubitTally q;
  q.system = 3LL * n_g * eta;
  // n_H_temp already counts the prep junk, so it is not added again.
  q.ancilla = n_H(eta, n_M) + n_H_temp(n_g, n_M, prep_V) + n_R + kQspControlQubits;
  q.total = q.system + q.ancilla;
  return q;
}

}  // namespace pbo
