#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <cmath>
#include <random>

#include "pbo/errors.h"
#include "pbo/evolution.h"
#include "pbo/units.h"

using namespace pbo;
using Dec = boost::multiprecision::cpp_dec_float_50;

namespace {

NormBundle sample_norms() {
  const ParticleSet p = particles_from_composition({{"N", 1}, {"H", 3}, {"B", 1}, {"F", 3}});
  const GridSpec g(units::angstrom_to_bohr(22), 7);
  return compute_norms(p, g, saturation_from_n_gamma(3, g), true);
}

std::int64_t degree_oracle(double alpha, double t, double eps) {
  using boost::multiprecision::ceil;
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::sqrt;
  const Dec pi = boost::math::constants::pi<Dec>();
  const Dec c = Dec(4) / (sqrt(2 * pi) * exp(Dec(1) / 13));
  const Dec v = exp(Dec(1)) / 2 * Dec(alpha) * Dec(t) + log(2 * c / Dec(eps));
  return ceil(v).convert_to<std::int64_t>();
}

}  // namespace

TEST(Qsp, ConstantValue) {
  EXPECT_NEAR(qsp_constant(), 1.4776200971061435, 1e-15);
  EXPECT_NEAR(kQspC, qsp_constant(), 1e-15);
}

TEST(Qsp, DegreeAgainstHighPrecision) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> la(0.0, 7.0), le(-12.0, -1.0), lt(-1.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const double alpha = std::pow(10.0, la(rng)), t = std::pow(10.0, lt(rng));
    const double eps = std::pow(10.0, le(rng));
    const QspPlan p = qsp_degree(alpha, t, eps);
    EXPECT_EQ(p.degree, std::max<std::int64_t>(1, degree_oracle(alpha, t, eps)))
        << alpha << ' ' << t << ' ' << eps;
    EXPECT_EQ(p.queries, p.degree + 2);
  }
}

TEST(Qsp, MonotoneInEveryArgument) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.1, 10.0);
  for (int i = 0; i < 500; ++i) {
    const double a = u(rng) * 1e3, t = u(rng), e = u(rng) * 1e-4;
    const auto d = qsp_degree(a, t, e).degree;
    EXPECT_LE(d, qsp_degree(a * 1.5, t, e).degree);
    EXPECT_LE(d, qsp_degree(a, t * 1.5, e).degree);
    EXPECT_LE(d, qsp_degree(a, t, e / 3).degree);
  }
  EXPECT_THROW(qsp_degree(0, 1, 0.1), UsageError);
  EXPECT_THROW(qsp_degree(1, 1, 0), UsageError);
}

TEST(Qsp, TotalIncludesOnePhaseGradient) {
  const QspPlan p{1000, 1002, kQspC};
  EXPECT_EQ(to_double(total_toffoli(p, 8000, 33)), 1000.0 * 8000 + 33 * 33);
  // Degrees past 2^63 / walk cost still fit.
  const QspPlan big{std::int64_t{1} << 40, 0, kQspC};
  EXPECT_EQ(to_string_u128(total_toffoli(big, std::int64_t{1} << 40, 0)),
            "1208925819614629174706176");
}

TEST(Budget, ReassemblesToEpsilon) {
  const NormBundle n = sample_norms();
  const double t = units::fs_to_au(1.0);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.05, 1.0);
  for (int i = 0; i < 200; ++i) {
    Fractions f{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
    const double s = f.sum();
    for (double* v : {&f.r, &f.exp, &f.M, &f.zeta, &f.m, &f.W}) *v /= s;
    const ErrorBudget b = allocate(1e-2, t, n, f);
    EXPECT_NEAR(b.reassembled_total(n), 1e-2, 1e-14);
  }
  Fractions bad = Fractions::uniform();
  bad.r += 0.1;
  EXPECT_THROW(allocate(1e-2, t, n, bad), UsageError);
  EXPECT_THROW(allocate(0, t, n, Fractions::uniform()), UsageError);
}

TEST(Budget, ReciprocalFractions) {
  const double lt = 42.01;
  const Fractions f = Fractions::from_reciprocals(51.13, 1.64, 3.20, 56.57, lt);
  EXPECT_NEAR(f.sum(), 1.0, 1e-15);
  EXPECT_NEAR(f.W, f.m * (lt - 1) / lt, 1e-15);
  EXPECT_NEAR(f.r, 1 / 51.13, 1e-15);
  const Fractions g = Fractions::from_reciprocals_normalized(28.39, 257.08, 1.09, 25.87, 144.65, lt);
  EXPECT_NEAR(g.sum(), 1.0, 1e-15);
  EXPECT_NEAR(g.W / g.m, (lt - 1) / lt, 1e-12);
  EXPECT_NEAR(g.r / g.zeta, 25.87 / 28.39, 1e-12);
  // Row 4 of the table over-commits once f_W is tied, so the residual form refuses it.
  EXPECT_THROW(Fractions::from_reciprocals(28.39, 1.09, 25.87, 144.65, lt), ValidationError);
  EXPECT_THROW(tied_W_ratio(1.0), UsageError);
}

TEST(Truncation, SmallestSufficientRegister) {
  const NormBundle n = sample_norms();
  const GridSpec g(units::angstrom_to_bohr(22), 7);
  ErrorBudget b;
  for (double eps : {1e-3, 1e-6, 1e-9, 1e-12}) {
    b.eps_M = eps;
    const int plain = n_M_from_budget(b, n, g, TruncationBound::plain);
    const int shifted = n_M_from_budget(b, n, g, TruncationBound::shifted);
    EXPECT_GE(plain, g.n_g() + 2);
    for (auto [nm, c] : {std::pair{plain, 1.5}, std::pair{shifted, 1.0}}) {
      const double bound = c / (std::ldexp(1.0, nm) * g.delta());
      EXPECT_LE(bound, eps);
      if (nm > g.n_g() + 2) EXPECT_GT(c / (std::ldexp(1.0, nm - 1) * g.delta()), eps);
    }
  }
  b.eps_M = 1e-30;
  std::string diag;
  EXPECT_EQ(n_M_from_budget(b, n, g, TruncationBound::plain, &diag), 64);
  EXPECT_FALSE(diag.empty());
}

TEST(Optimizer, NeverWorseThanUniformAndDeterministic) {
  // Synthetic separable cost: logarithmic in each error, like every real term.
  const AllocationCost cost = [](const Fractions& f) {
    const double v = 1e6 * (3 * std::log2(1 / f.r) + std::log2(1 / f.M) + 2 * std::log2(1 / f.zeta) +
                            std::log2(1 / f.m) + 5 * std::log2(1 / f.exp));
    return static_cast<u128>(v);
  };
  const OptimizationResult a = optimize_allocation(cost, 40.0);
  const OptimizationResult b = optimize_allocation(cost, 40.0);
  EXPECT_LE(a.best_cost, a.uniform_cost);
  EXPECT_EQ(a.best_cost, b.best_cost);
  EXPECT_NEAR(a.best.sum(), 1.0, 1e-12);
  EXPECT_NEAR(a.best.W / a.best.m, 39.0 / 40.0, 1e-9);
  EXPECT_GT(a.evaluations, 0);
  // Heavier weights pull more of the budget.
  EXPECT_GT(a.best.exp, a.best.M);
  EXPECT_GT(a.best.r, a.best.M);
}

TEST(Optimizer, FlatCostFallsBackToUniform) {
  const AllocationCost flat = [](const Fractions&) { return static_cast<u128>(1000); };
  const OptimizationResult r = optimize_allocation(flat, 40.0);
  EXPECT_EQ(r.best_cost, r.uniform_cost);
}
