#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "pbo/system_model.h"

namespace pbo {

using u128 = unsigned __int128;
std::string to_string_u128(u128 v);
double to_double(u128 v);

struct Fractions {
  double r = 1.0 / 6;
  double exp = 1.0 / 6;
  double M = 1.0 / 6;
  double zeta = 1.0 / 6;
  double m = 1.0 / 6;
  double W = 1.0 / 6;

  double sum() const { return r + exp + M + zeta + m + W; }
  bool operator==(const Fractions&) const = default;
  static Fractions uniform() { return {}; }
  // Table-style reciprocals with f_W tied to f_m and f_exp left as the residual.
  static Fractions from_reciprocals(double inv_r, double inv_M, double inv_zeta, double inv_m,
                                    double lambda_T);
  // Same, but with f_exp given too; all six are then rescaled to sum to one.
  static Fractions from_reciprocals_normalized(double inv_r, double inv_exp, double inv_M,
                                               double inv_zeta, double inv_m, double lambda_T);
};

// f_W = f_m (lambda_T - 1) / lambda_T, which is eps_W = ((lambda_T - 1) / lambda_T^2) eps_m.
double tied_W_ratio(double lambda_T);

struct ErrorBudget {
  double epsilon = 0.0;
  double t = 0.0;  // atomic units
  Fractions f;
  double eps_r = 0.0;
  double eps_exp = 0.0;
  double eps_M = 0.0;
  double eps_zeta = 0.0;
  double eps_m = 0.0;
  double eps_W = 0.0;

  // t * eps_H + eps_exp reassembled from the component errors.
  double reassembled_total(const NormBundle& n) const;
};

ErrorBudget allocate(double epsilon, double t, const NormBundle& norms, const Fractions& f);

enum class TruncationBound { plain, shifted };

// Smallest n_M whose per-pair truncation error fits eps_M, floored at n_g + 2.
int n_M_from_budget(const ErrorBudget& b, const NormBundle& norms, const GridSpec& grid,
                    TruncationBound variant, std::string* diagnostic = nullptr);

inline constexpr double kQspC = 1.4776200971061435;  // 4 / (sqrt(2 pi) e^(1/13))
double qsp_constant();

struct QspPlan {
  std::int64_t degree = 0;
  std::int64_t queries = 0;
  double c_const = 0.0;
};

QspPlan qsp_degree(double alpha, double t, double eps_exp);

// One phase-gradient register of n_R bits, prepared once.
std::int64_t phase_gradient_cost(int n_R);

u128 total_toffoli(const QspPlan& plan, std::int64_t walk_toffolis, int n_R);

using AllocationCost = std::function<u128(const Fractions&)>;

struct OptimizerOptions {
  std::uint64_t seed = 7;
  int restarts = 3;
  int max_iterations = 400;
};

struct OptimizationResult {
  Fractions best;
  u128 best_cost = 0;
  u128 uniform_cost = 0;
  int evaluations = 0;
  bool fell_back_to_uniform = false;
};

// Minimizes cost over the four free fractions (r, M, zeta, m) with f_W tied to
// f_m and f_exp taking the remainder. Never returns anything worse than uniform.
OptimizationResult optimize_allocation(const AllocationCost& cost, double lambda_T,
                                       const OptimizerOptions& opts = {});

}  // namespace pbo
