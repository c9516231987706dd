#include "pbo/lcu_oracle.h"

#include <algorithm>
#include <array>
#include <cmath>

#include "pbo/errors.h"

namespace pbo {

namespace {

using u128 = unsigned __int128;

bool is_pow2(std::uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

int alternating(std::uint64_t m) { return (m & 1) ? -1 : 1; }

}  // namespace

double LcuParams::gamma() const { return std::sqrt(static_cast<double>(gamma_sq)); }

void LcuParams::validate() const {
  if (n_g < 1 || n_g > 20) throw UsageError("n_g must lie in [1, 20]");
  if (n_M < 1 || n_M > 30) throw UsageError("n_M must lie in [1, 30]");
  if (!(delta > 0.0)) throw UsageError("delta must be positive");
  if (gamma_sq < 1 || !is_pow2(static_cast<std::uint64_t>(gamma_sq)))
    throw UsageError("Gamma^2 must be a power of two");
}

double saturated_kernel(double r, double delta) { return saturated_kernel(r, delta, 1.0); }

double saturated_kernel(double r, double delta, double gamma) {
  if (!(delta > 0.0) || !(gamma >= 1.0)) throw UsageError("kernel needs delta > 0, gamma >= 1");
  if (r < 0.0) throw UsageError("distance must be non-negative");
  const double cut = gamma * delta;
  return r > cut ? 1.0 / r : 1.0 / cut;
}

int u_m(std::uint64_t x, std::uint64_t m, std::uint64_t M) { return u_m_nuc(x, m, M, 1); }

int u_m_nuc(std::uint64_t x, std::uint64_t m, std::uint64_t M, std::uint64_t gamma_sq) {
  const u128 lhs = u128{m} * m * x;
  const u128 rhs = u128{gamma_sq} * M * M;
  return lhs < rhs ? 1 : alternating(m);
}

int v_m(std::uint64_t x, std::uint64_t m, std::uint64_t M) { return v_m_nuc(x, m, M, 1); }

int v_m_nuc(std::uint64_t x, std::uint64_t m, std::uint64_t M, std::uint64_t gamma_sq) {
  if (2 * m < M) {
    const u128 rhs = u128{4} * gamma_sq * M * M;
    if (u128{x} <= u128{4} * gamma_sq) {
      const u128 s = 2 * u128{m} + M;
      if (u128{x} * s * s < rhs) return 1;
    } else {
      const u128 d = u128{M} - 2 * u128{m};
      if (u128{x} * d * d > rhs) return -1;
    }
  }
  return alternating(m);
}

double alternating_sum_sq(std::uint64_t x, const LcuParams& p) {
  const std::uint64_t M = p.M();
  std::int64_t s = 0;
  for (std::uint64_t m = 0; m < M; ++m) s += u_m_nuc(x, m, M, p.gamma_sq);
  return static_cast<double>(s) / (2.0 * p.gamma() * static_cast<double>(M) * p.delta);
}

double alternating_sum(std::uint64_t q, const LcuParams& p) { return alternating_sum_sq(q * q, p); }

double alternating_target_sq(std::uint64_t x, const LcuParams& p) {
  return 0.5 * saturated_kernel(std::sqrt(static_cast<double>(x)) * p.delta, p.delta, p.gamma());
}

double shifted_sum_sq(std::uint64_t x, const LcuParams& p) {
  const std::uint64_t M = p.M();
  std::int64_t s = 0;
  for (std::uint64_t m = 0; m < M; ++m) s += v_m_nuc(x, m, M, p.gamma_sq);
  return static_cast<double>(s) / (2.0 * p.gamma() * static_cast<double>(M) * p.delta);
}

double shifted_sum(std::uint64_t q, const LcuParams& p) { return shifted_sum_sq(q * q, p); }

double shifted_target_sq(std::uint64_t x, const LcuParams& p) {
  return alternating_target_sq(x, p) - 1.0 / (4.0 * p.gamma() * p.delta);
}

std::int64_t active_terms(const LcuParams& p) { return p.shifted ? p.M() / 2 : p.M(); }

double SweepSummary::spectral_radius() const {
  return std::max(std::abs(max_value), std::abs(min_value));
}

SweepSummary sweep(const LcuParams& p, std::vector<SweepRow>* rows) {
  p.validate();
  SweepSummary out;
  out.n_g = p.n_g;
  out.M = p.M();
  out.shifted = p.shifted;
  const double md = static_cast<double>(p.M()) * p.delta;
  const double bound = p.shifted ? 3.0 / md : 3.0 / (2.0 * md);
  const std::uint64_t x_max = 3ULL << (2 * p.n_g);
  out.max_value = -INFINITY;
  out.min_value = INFINITY;
  for (std::uint64_t x = 0; x <= x_max; ++x) {
    const double approx = p.shifted ? shifted_sum_sq(x, p) : alternating_sum_sq(x, p);
    const double target = p.shifted ? shifted_target_sq(x, p) : alternating_target_sq(x, p);
    const double err = std::abs(approx - target);
    ++out.points;
    if (err > bound) ++out.violations;
    out.max_error = std::max(out.max_error, err);
    out.max_value = std::max(out.max_value, approx);
    out.min_value = std::min(out.min_value, approx);
    if (rows) rows->push_back({x, p.M(), approx, target, err, bound});
  }
  out.max_error_constant = out.max_error * md;
  return out;
}

AmpReport amp_identity_check(int n) {
  if (n < 2 || n > 12) throw UsageError("amp_identity_check needs 2 <= n <= 12");
  AmpReport rep;
  rep.n = n;
  const std::int64_t half = std::int64_t{1} << (n - 1);
  for (std::int64_t a = -half; a < half; ++a) {
    const auto bits = static_cast<std::uint64_t>(a) & ((std::uint64_t{1} << n) - 1);
    const int s = static_cast<int>((bits >> (n - 1)) & 1);
    // k_0 = 1 and k_1 = -(-1)^bit average to the bit itself.
    auto pair_sum = [](int bit) { return 1 - (bit ? -1 : 1); };
    std::int64_t numer = 0;  // twice the LCU sum, before the overall sign
    for (int j = 0; j < n - 1; ++j) {
      const int flipped = static_cast<int>((bits >> j) & 1) ^ s;
      numer += (std::int64_t{1} << j) * pair_sum(flipped);
    }
    numer += pair_sum(s);  // the +1 of the one's complement
    if ((s ? -numer : numer) != 2 * a) rep.amp_failures.push_back(a);

    // Qubitized walk on the 2x2 invariant block of amplitude x.
    const double x = static_cast<double>(a) / static_cast<double>(half);
    const double y = std::sqrt(std::max(0.0, 1.0 - x * x));
    const std::array<double, 4> w{x, y, -y, x};
    const double w2 = w[0] * w[0] + w[1] * w[2];
    const double err = std::abs(w2 - (2.0 * x * x - 1.0));
    rep.max_walk_error = std::max(rep.max_walk_error, err);
    // Against T2 evaluated exactly in integers, scaled by 4^(n-1).
    const double t2 = static_cast<double>(2 * a * a - half * half) /
                      static_cast<double>(half * half);
    if (err > 1e-12 || std::abs(w2 - t2) > 1e-12) rep.square_failures.push_back(a);
    ++rep.checked;
  }
  return rep;
}

double aa_success_probability(const ParticleSet& p, double gamma) {
  if (p.eta_e() < 1) throw DomainError("amplitude amplification needs at least one electron");
  if (!(gamma >= 1.0)) throw UsageError("gamma must be >= 1");
  const auto z = p.charges();
  const int eta = p.eta();
  double lz = 0.0;
  for (int v : z) lz += std::abs(v);
  const double lv = lambda_V_gamma(p, gamma);
  if (lz == 0.0 || lv == 0.0) throw DomainError("zero-norm charge vector");
  double overlap = 0.0;
  for (int i = 0; i < eta; ++i)
    for (int j = 0; j < eta; ++j) {
      if (i == j) continue;
      const double w = std::abs(static_cast<double>(z[i]) * z[j]);
      const double g = (p.is_nucleus(i) && p.is_nucleus(j)) ? 1.0 / gamma : 1.0;
      overlap += w * std::sqrt(g);
    }
  overlap /= lz * std::sqrt(lv);
  return overlap * overlap;
}

}  // namespace pbo
