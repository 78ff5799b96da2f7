#include <gtest/gtest.h>

#include <cmath>

#include "eqdiv/analysis.hpp"
#include "eqdiv/error.hpp"
#include "eqdiv/solver.hpp"
#include "test_support.hpp"

using namespace eqdiv;
using namespace eqdiv::testing;

TEST(ValuationMatrix, Examples) {
  const auto uni = uniform_players(2);
  const auto m = valuation_matrix(uni, CutVector({0.5}), Permutation::identity(2));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) EXPECT_NEAR(m(i, j), 0.5, 1e-15);

  const auto dis = disjoint_pair();
  const auto d = valuation_matrix(dis, CutVector({0.5}), Permutation::identity(2));
  EXPECT_NEAR(d(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(d(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(d(1, 0), 0.0, 1e-15);
  EXPECT_NEAR(d(1, 1), 1.0, 1e-15);

  const auto one = valuation_matrix(uniform_players(1), CutVector{}, Permutation::identity(1));
  EXPECT_EQ(one(0, 0), 1.0);
}

TEST(ValuationMatrix, DimensionMismatch) {
  const auto uni = uniform_players(3);
  EXPECT_THROW(valuation_matrix(uni, CutVector({0.5}), Permutation::identity(3)), Error);
  EXPECT_THROW(valuation_matrix(uni, CutVector({0.3, 0.6}), Permutation::identity(2)), Error);
}

TEST(FairnessReport, UniformHalves) {
  const auto vm = valuation_matrix(uniform_players(2), CutVector({0.5}), Permutation::identity(2));
  const auto r = fairness_report(vm, Permutation::identity(2));
  EXPECT_NEAR(r.equitable_gap, 0.0, 1e-15);
  EXPECT_TRUE(r.equitable_ok);
  EXPECT_TRUE(r.proportional_ok);
  EXPECT_TRUE(r.envy_free_ok);
  EXPECT_NEAR(r.exact_gap, 0.0, 1e-15);
  EXPECT_TRUE(r.exact_ok);
}

TEST(FairnessReport, DisjointSupports) {
  const auto vm = valuation_matrix(disjoint_pair(), CutVector({0.5}), Permutation::identity(2));
  const auto r = fairness_report(vm, Permutation::identity(2));
  EXPECT_NEAR(r.own_values[0], 1.0, 1e-15);
  EXPECT_NEAR(r.own_values[1], 1.0, 1e-15);
  EXPECT_TRUE(r.equitable_ok);
  EXPECT_TRUE(r.proportional_ok);
  EXPECT_TRUE(r.envy_free_ok);
  EXPECT_NEAR(r.exact_gap, 0.5, 1e-15);
  EXPECT_FALSE(r.exact_ok);
}

TEST(FairnessReport, SwappedOwnershipUsesInverse) {
  // Piece 0 goes to player 1 and piece 1 to player 0: everyone gets nothing.
  const Permutation swap({1, 0});
  const auto vm = valuation_matrix(disjoint_pair(), CutVector({0.5}), swap);
  const auto r = fairness_report(vm, swap);
  EXPECT_NEAR(r.own_values[0], 0.0, 1e-15);
  EXPECT_NEAR(r.own_values[1], 0.0, 1e-15);
  EXPECT_TRUE(r.equitable_ok);
  EXPECT_FALSE(r.proportional_ok);
  EXPECT_NEAR(r.worst_envy, 1.0, 1e-15);
  EXPECT_FALSE(r.envy_free_ok);
}

TEST(FairnessReport, GoldenRatioIsEquitableNotProportional) {
  const Instance inst({ramp(), Density::uniform()});
  const auto sol = solve_equitable(inst);
  const auto vm = valuation_matrix(inst.densities(), sol.cuts, inst.sigma());
  const auto r = fairness_report(vm, inst.sigma());
  EXPECT_LE(r.equitable_gap, 1e-9);
  EXPECT_NEAR(r.own_values[0], 0.3819660113, 1e-9);
  EXPECT_FALSE(r.proportional_ok);
  EXPECT_NEAR(r.proportional_margin, 0.3819660113 - 0.5, 1e-9);
}

TEST(FairnessReport, UnequalCutsFlagPlayer) {
  const auto vm = valuation_matrix(uniform_players(2), CutVector({0.25}), Permutation::identity(2));
  const auto r = fairness_report(vm, Permutation::identity(2));
  EXPECT_NEAR(r.equitable_gap, 0.5, 1e-15);
  EXPECT_LT(r.proportional_margins[0], 0.0);
  EXPECT_GT(r.proportional_margins[1], 0.0);
  EXPECT_FALSE(r.proportional_ok);
}

TEST(AnalysisProperties, RowStochastic) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Instance inst = random_instance(seed, 2 + seed % 5);
    const auto sol = solve_equitable(inst);
    const auto vm = valuation_matrix(inst.densities(), sol.cuts, inst.sigma());
    for (std::size_t i = 0; i < vm.size(); ++i) {
      double sum = 0.0;
      for (const double x : vm.row(i)) {
        EXPECT_GE(x, 0.0);
        EXPECT_LE(x, 1.0);
        sum += x;
      }
      EXPECT_NEAR(sum, 1.0, 1e-10);
    }
    if (sol.status == SolveStatus::Converged) {
      EXPECT_LE(fairness_report(vm, inst.sigma()).equitable_gap, 1e-9);
    }
  }
}

TEST(AnalysisProperties, ExactnessImpliesTheRest) {
  // Identical players cut at their common n-quantiles: an exact division.
  const double tol = 1e-9;
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const std::size_t n = 2 + seed % 5;
    const Density d = random_instance(seed, 1).density(0);
    std::vector<double> cuts;
    for (std::size_t k = 1; k < n; ++k) cuts.push_back(d.lower_quantile(double(k) / double(n)));
    std::vector<Density> same(n, d);
    const auto vm = valuation_matrix(same, CutVector(cuts), Permutation::identity(n));
    const auto r = fairness_report(vm, Permutation::identity(n), tol);
    ASSERT_LE(r.exact_gap, tol);
    EXPECT_LE(r.equitable_gap, 2 * tol);
    EXPECT_GE(r.proportional_margin, -2 * tol);
    EXPECT_LE(r.worst_envy, 2 * tol);
  }
}
