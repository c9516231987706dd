#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pbo/system_model.h"

namespace pbo {

struct LcuParams {
  int n_g = 3;
  int n_M = 8;
  double delta = 1.0;          // bohr
  std::int64_t gamma_sq = 1;   // Gamma^2, a power of two
  bool shifted = false;

  std::int64_t M() const { return std::int64_t{1} << n_M; }
  double gamma() const;
  void validate() const;
};

// 1/r above delta, 1/delta at and below it.
double saturated_kernel(double r, double delta);
// Same with the saturation radius stretched to gamma * delta.
double saturated_kernel(double r, double delta, double gamma);

// Sign of term m for squared distance x: +1 when m^2 x < M^2, else (-1)^m.
int u_m(std::uint64_t x, std::uint64_t m, std::uint64_t M);
// Saturated version: +1 when m^2 x < Gamma^2 M^2.
int u_m_nuc(std::uint64_t x, std::uint64_t m, std::uint64_t M, std::uint64_t gamma_sq);

// Spectrally shifted sign. Only m < M/2 can carry a non-alternating sign:
//   +1 when x <= 4 Gamma^2 and x (2m + M)^2 < 4 Gamma^2 M^2
//   -1 when x >  4 Gamma^2 and x (M - 2m)^2 > 4 Gamma^2 M^2
//   (-1)^m otherwise.
int v_m(std::uint64_t x, std::uint64_t m, std::uint64_t M);
int v_m_nuc(std::uint64_t x, std::uint64_t m, std::uint64_t M, std::uint64_t gamma_sq);

// (1 / (2 Gamma M delta)) sum_m u_m over squared distance x; approximates
// S_Gamma(sqrt(x) delta) / 2.
double alternating_sum_sq(std::uint64_t x, const LcuParams& p);
double alternating_sum(std::uint64_t q, const LcuParams& p);
double alternating_target_sq(std::uint64_t x, const LcuParams& p);

// (1 / (2 Gamma M delta)) sum_m v_m; approximates
// S_Gamma(sqrt(x) delta) / 2 - 1 / (4 Gamma delta).
double shifted_sum_sq(std::uint64_t x, const LcuParams& p);
double shifted_sum(std::uint64_t q, const LcuParams& p);
double shifted_target_sq(std::uint64_t x, const LcuParams& p);

// Terms m whose sign is not a pure (-1)^m for some x; the rest cancel in pairs
// and can be dropped from the LCU, so this sets the effective 1-norm.
std::int64_t active_terms(const LcuParams& p);

struct SweepRow {
  std::uint64_t x = 0;  // squared grid distance
  std::int64_t M = 0;
  double approx = 0.0;
  double target = 0.0;
  double error = 0.0;
  double bound = 0.0;
};

struct SweepSummary {
  int n_g = 0;
  std::int64_t M = 0;
  bool shifted = false;
  std::uint64_t points = 0;
  std::uint64_t violations = 0;
  double max_error = 0.0;
  double max_error_constant = 0.0;  // max_error * M * delta
  double max_value = 0.0;
  double min_value = 0.0;
  double spectral_radius() const;  // max |value|
};

// Sweeps every squared distance 0 .. 3 (2^n_g - 1)^2 ... up to 3 * 4^n_g,
// i.e. every value a pair of n_g-bit grid points can produce and more.
// Bound: 3 / (2 M delta) plain, 3 / (M delta) shifted.
SweepSummary sweep(const LcuParams& p, std::vector<SweepRow>* rows = nullptr);

struct AmpReport {
  int n = 0;
  std::uint64_t checked = 0;
  std::vector<std::int64_t> amp_failures;
  std::vector<std::int64_t> square_failures;
  double max_walk_error = 0.0;
  bool passed() const { return amp_failures.empty() && square_failures.empty(); }
};

// Brute-force check of the amplitude LCU for every n-bit two's-complement a
// and of the walk-square identity at normalization 2^(n-1).
AmpReport amp_identity_check(int n);

// |<target(Gamma)|product>|^2 for the pair-charge state built from two copies
// of the single-particle charge state.
double aa_success_probability(const ParticleSet& p, double gamma);

}  // namespace pbo
