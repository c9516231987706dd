#include "pbo/evolution.h"

#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <future>
#include <limits>
#include <random>
#include <vector>

#include "pbo/errors.h"

namespace pbo {

std::string to_string_u128(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
    v /= 10;
  }
  return {s.rbegin(), s.rend()};
}

double to_double(u128 v) { return static_cast<double>(v); }

double tied_W_ratio(double lambda_T) {
  if (!(lambda_T > 1.0)) throw UsageError("tying eps_W to eps_m needs lambda_T > 1");
  return (lambda_T - 1.0) / lambda_T;
}

Fractions Fractions::from_reciprocals(double inv_r, double inv_M, double inv_zeta, double inv_m,
                                      double lambda_T) {
  for (double v : {inv_r, inv_M, inv_zeta, inv_m})
    if (!(v > 0.0)) throw UsageError("reciprocal fractions must be positive");
  Fractions f;
  f.r = 1.0 / inv_r;
  f.M = 1.0 / inv_M;
  f.zeta = 1.0 / inv_zeta;
  f.m = 1.0 / inv_m;
  f.W = f.m * tied_W_ratio(lambda_T);
  f.exp = 1.0 - (f.r + f.M + f.zeta + f.m + f.W);
  if (!(f.exp > 0.0)) throw ValidationError("fractions leave no room for the QSP truncation error");
  return f;
}

Fractions Fractions::from_reciprocals_normalized(double inv_r, double inv_exp, double inv_M,
                                                double inv_zeta, double inv_m, double lambda_T) {
  if (!(inv_exp > 0.0)) throw UsageError("reciprocal fractions must be positive");
  Fractions f;
  f.r = 1.0 / inv_r;
  f.exp = 1.0 / inv_exp;
  f.M = 1.0 / inv_M;
  f.zeta = 1.0 / inv_zeta;
  f.m = 1.0 / inv_m;
  f.W = f.m * tied_W_ratio(lambda_T);
  for (double v : {inv_r, inv_M, inv_zeta, inv_m})
    if (!(v > 0.0)) throw UsageError("reciprocal fractions must be positive");
  const double s = f.sum();
  for (double* v : {&f.r, &f.exp, &f.M, &f.zeta, &f.m, &f.W}) *v /= s;
  return f;
}

double ErrorBudget::reassembled_total(const NormBundle& n) const {
  const double aH = n.alpha_H, aV = n.alpha_V, aT = n.alpha_T;
  const double lam = n.lambda_used();
  return t * (aH * eps_r + (aV / aH) * (eps_zeta / (2.0 * n.delta) + lam * eps_M) +
              (aT * aT / aH) * (eps_W + eps_m / n.lambda_T)) +
         eps_exp;
}

ErrorBudget allocate(double epsilon, double t, const NormBundle& n, const Fractions& f) {
  if (!(epsilon > 0.0) || !(epsilon < 1.0)) throw UsageError("epsilon must lie in (0, 1)");
  if (!(t > 0.0)) throw UsageError("evolution time must be positive");
  for (double v : {f.r, f.exp, f.M, f.zeta, f.m, f.W})
    if (!(v > 0.0)) throw UsageError("every error fraction must be positive");
  if (std::abs(f.sum() - 1.0) > 1e-12) throw UsageError("error fractions must sum to 1");
  if (!(n.alpha_H > 0.0) || !(n.alpha_V > 0.0) || !(n.alpha_T > 0.0) || !(n.delta > 0.0))
    throw UsageError("norm bundle is incomplete");
  const double aH = n.alpha_H, aV = n.alpha_V, aT = n.alpha_T, lam = n.lambda_used();
  ErrorBudget b;
  b.epsilon = epsilon;
  b.t = t;
  b.f = f;
  b.eps_r = epsilon * f.r / (t * aH);
  b.eps_exp = epsilon * f.exp;
  b.eps_M = epsilon * f.M * aH / (t * lam * aV);
  b.eps_zeta = epsilon * f.zeta * 2.0 * aH * n.delta / (t * aV);
  b.eps_m = epsilon * f.m * aH * n.lambda_T / (t * aT * aT);
  b.eps_W = epsilon * f.W * aH / (t * aT * aT);
  if (b.reassembled_total(n) > epsilon * (1.0 + 1e-12))
    throw InconsistencyError("error budget exceeds the total allowance");
  return b;
}

int n_M_from_budget(const ErrorBudget& b, const NormBundle&, const GridSpec& grid,
                    TruncationBound variant, std::string* diagnostic) {
  if (!(b.eps_M > 0.0)) throw UsageError("budget allocates no truncation error");
  const double delta = grid.delta();
  const double need = variant == TruncationBound::plain ? 3.0 / (2.0 * delta * b.eps_M)
                                                        : 1.0 / (delta * b.eps_M);
  int n = grid.n_g() + 2;
  while (n < 64 && std::ldexp(1.0, n) < need) ++n;
  if (n == 64 && diagnostic) *diagnostic = "n_M capped at 64";
  return n;
}

double qsp_constant() { return 4.0 / (std::sqrt(2.0 * M_PI) * std::exp(1.0 / 13.0)); }

QspPlan qsp_degree(double alpha, double t, double eps_exp) {
  if (!(alpha > 0.0)) throw UsageError("alpha must be positive");
  if (!(t >= 0.0)) throw UsageError("time must be non-negative");
  if (!(eps_exp > 0.0) || !(eps_exp < 1.0)) throw UsageError("eps_exp must lie in (0, 1)");
  const long double c = 4.0L / (std::sqrt(2.0L * static_cast<long double>(M_PI)) *
                                std::exp(1.0L / 13.0L));
  const long double e = std::exp(1.0L);
  const long double v = e / 2.0L * alpha * t + std::log(2.0L * c / eps_exp);
  QspPlan p;
  p.degree = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(v)));
  p.queries = p.degree + 2;
  p.c_const = static_cast<double>(c);
  return p;
}

std::int64_t phase_gradient_cost(int n_R) {
  if (n_R < 0) throw UsageError("phase gradient width must be non-negative");
  return static_cast<std::int64_t>(n_R) * n_R;
}

u128 total_toffoli(const QspPlan& plan, std::int64_t walk_toffolis, int n_R) {
  if (plan.degree < 0 || walk_toffolis < 0) throw UsageError("negative cost");
  return u128(static_cast<std::uint64_t>(plan.degree)) * static_cast<std::uint64_t>(walk_toffolis) +
         static_cast<std::uint64_t>(phase_gradient_cost(n_R));
}

namespace {

Fractions from_logs(const std::array<double, 4>& x, double w_ratio) {
  std::array<double, 4> w;
  for (int i = 0; i < 4; ++i) w[i] = std::exp(std::clamp(x[i], -30.0, 30.0));
  const double z = w[0] + w[1] + w[2] + w[3] * (1.0 + w_ratio) + 1.0;
  Fractions f;
  f.r = w[0] / z;
  f.M = w[1] / z;
  f.zeta = w[2] / z;
  f.m = w[3] / z;
  f.W = f.m * w_ratio;
  f.exp = 1.0 / z;
  return f;
}

struct Problem {
  const AllocationCost* cost;
  double w_ratio;
  int evaluations = 0;
};

double objective(const gsl_vector* v, void* params) {
  auto* p = static_cast<Problem*>(params);
  std::array<double, 4> x;
  for (int i = 0; i < 4; ++i) x[i] = gsl_vector_get(v, i);
  ++p->evaluations;
  try {
    return std::log(to_double((*p->cost)(from_logs(x, p->w_ratio))));
  } catch (const std::exception&) {
    return std::numeric_limits<double>::max();
  }
}

struct Run {
  Fractions f;
  u128 cost = 0;
  int evaluations = 0;
  bool ok = false;
};

Run nelder_mead(const AllocationCost& cost, double w_ratio, std::array<double, 4> start,
                int max_iter) {
  Problem prob{&cost, w_ratio};
  gsl_multimin_function fn{&objective, 4, &prob};
  gsl_vector* x = gsl_vector_alloc(4);
  gsl_vector* step = gsl_vector_alloc(4);
  for (int i = 0; i < 4; ++i) {
    gsl_vector_set(x, i, start[i]);
    gsl_vector_set(step, i, 0.7);
  }
  gsl_multimin_fminimizer* s =
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 4);
  Run out;
  if (gsl_multimin_fminimizer_set(s, &fn, x, step) == GSL_SUCCESS) {
    for (int it = 0; it < max_iter; ++it) {
      if (gsl_multimin_fminimizer_iterate(s) != GSL_SUCCESS) break;
      if (gsl_multimin_test_size(gsl_multimin_fminimizer_size(s), 1e-4) == GSL_SUCCESS) break;
    }
    std::array<double, 4> best;
    for (int i = 0; i < 4; ++i) best[i] = gsl_vector_get(s->x, i);
    out.f = from_logs(best, w_ratio);
    try {
      out.cost = cost(out.f);
      out.ok = true;
    } catch (const std::exception&) {
    }
  }
  out.evaluations = prob.evaluations;
  gsl_multimin_fminimizer_free(s);
  gsl_vector_free(x);
  gsl_vector_free(step);
  return out;
}

}  // namespace

OptimizationResult optimize_allocation(const AllocationCost& cost, double lambda_T,
                                       const OptimizerOptions& opts) {
  const double w_ratio = tied_W_ratio(lambda_T);
  OptimizationResult res;
  res.best = Fractions::uniform();
  res.uniform_cost = cost(res.best);
  res.best_cost = res.uniform_cost;
  res.fell_back_to_uniform = true;

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> jitter(0.0, 1.0);
  std::vector<std::array<double, 4>> starts;
  starts.push_back({0, 0, 0, 0});
  for (int k = 1; k < std::max(1, opts.restarts); ++k) {
    std::array<double, 4> s;
    for (double& v : s) v = jitter(rng);
    starts.push_back(s);
  }
  std::vector<std::future<Run>> runs;
  for (const auto& s : starts)
    runs.push_back(std::async(std::launch::async, nelder_mead, std::cref(cost), w_ratio, s,
                              opts.max_iterations));
  for (auto& fut : runs) {
    Run r = fut.get();
    res.evaluations += r.evaluations;
    if (r.ok && r.cost < res.best_cost) {
      res.best_cost = r.cost;
      res.best = r.f;
      res.fell_back_to_uniform = false;
    }
  }
  return res;
}

}  // namespace pbo
