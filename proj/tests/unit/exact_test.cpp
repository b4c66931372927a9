#include "assoc60/exact.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "assoc60/dual_solver.hpp"
#include "assoc60/lp_simplex.hpp"
#include "oracles.hpp"

namespace assoc60 {
namespace {

TEST(Simplex, TextbookProblem) {
  // min -x1 - x2  s.t.  x1 + 2 x2 <= 4,  3 x1 + x2 <= 6.
  StandardFormLp lp;
  lp.A.resize(2, 4);
  lp.A << 1, 2, 1, 0,
          3, 1, 0, 1;
  lp.b.resize(2);
  lp.b << 4, 6;
  lp.c.resize(4);
  lp.c << -1, -1, 0, 0;
  const auto sol = solve_standard_form(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.x(0), 1.6, 1e-12);
  EXPECT_NEAR(sol.x(1), 1.2, 1e-12);
  EXPECT_NEAR(sol.objective, -2.8, 1e-12);
  EXPECT_NEAR(sol.y(0), -0.4, 1e-12);
  EXPECT_NEAR(sol.y(1), -0.2, 1e-12);
  const auto res = check_optimality(lp, sol);
  EXPECT_LE(res.complementarity, 1e-12);
  EXPECT_LE(res.objective_gap, 1e-12);
}

TEST(Simplex, NegativeRightHandSideAndRedundantRow) {
  // -x1 - x2 = -2 stated twice, min x1 + 3 x2.
  StandardFormLp lp;
  lp.A.resize(2, 2);
  lp.A << -1, -1,
          -1, -1;
  lp.b.resize(2);
  lp.b << -2, -2;
  lp.c.resize(2);
  lp.c << 1, 3;
  const auto sol = solve_standard_form(lp);
  ASSERT_EQ(sol.status, LpStatus::kOptimal);
  EXPECT_NEAR(sol.x(0), 2.0, 1e-12);
  EXPECT_NEAR(sol.objective, 2.0, 1e-12);
  const auto res = check_optimality(lp, sol);
  EXPECT_LE(res.primal, 1e-12);
  EXPECT_LE(res.dual, 1e-12);
  EXPECT_LE(res.objective_gap, 1e-12);
}

TEST(Simplex, DetectsInfeasibleAndUnbounded) {
  StandardFormLp infeasible;
  infeasible.A.resize(1, 2);
  infeasible.A << 1, 1;
  infeasible.b.resize(1);
  infeasible.b << -1;
  infeasible.c = Eigen::VectorXd::Zero(2);
  EXPECT_EQ(solve_standard_form(infeasible).status, LpStatus::kInfeasible);

  StandardFormLp unbounded;
  unbounded.A.resize(1, 2);
  unbounded.A << 1, -1;
  unbounded.b.resize(1);
  unbounded.b << 0;
  unbounded.c.resize(2);
  unbounded.c << -1, 0;
  EXPECT_EQ(solve_standard_form(unbounded).status, LpStatus::kUnbounded);
}

TEST(Milp, EnumerationMatchesIndependentBruteForce) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const auto inst = testing::random_instance(rng, 3, 6);
    const auto r = solve_milp_enumerate(inst);
    EXPECT_NEAR(r.optimal_value, testing::brute_force_optimum(inst), 1e-12);
    EXPECT_DOUBLE_EQ(make_assignment(inst, r.assignment.ap_of_client).objective,
                     r.optimal_value);
    EXPECT_DOUBLE_EQ(static_cast<double>(r.nodes_explored),
                     inst.assignment_space_size(1e18));
  }
}

TEST(Milp, BranchAndBoundMatchesEnumeration) {
  std::mt19937_64 rng(1234);
  std::uniform_int_distribution<std::size_t> n_dist(2, 5), m_dist(4, 14);
  int checked = 0;
  while (checked < 100) {
    const auto inst = testing::random_instance(rng, n_dist(rng), m_dist(rng));
    if (inst.assignment_space_size(1e18) > 1e5) continue;
    const auto e = solve_milp_enumerate(inst);
    const auto b = solve_milp_branch_and_bound(inst);
    ASSERT_EQ(e.optimal_value, b.optimal_value) << "instance " << checked;
    EXPECT_DOUBLE_EQ(make_assignment(inst, b.assignment.ap_of_client).objective,
                     b.optimal_value);
    ++checked;
  }
}

TEST(Milp, BranchAndBoundSolvesLargerInstances) {
  std::mt19937_64 rng(9);
  const auto inst = testing::random_instance(rng, 5, 40);
  ASSERT_GT(inst.assignment_space_size(1e18), 1e6);
  const auto b = solve_milp_exact(inst);
  const double relax = solve_lp_relaxation(inst).optimal_value;
  EXPECT_GE(b.optimal_value, relax - 1e-9);
  EXPECT_LE(b.optimal_value - relax, duality_gap_bound(inst));
  const auto daa = run_daa(inst, {.max_iters = 500});
  EXPECT_LE(b.optimal_value, daa.primal_value);
}

TEST(Milp, BudgetExhaustionCarriesIncumbent) {
  std::mt19937_64 rng(9);
  const auto inst = testing::random_instance(rng, 4, 20, 0.9);
  try {
    solve_milp_enumerate(inst, 10);
    FAIL() << "expected BudgetExhaustedError";
  } catch (const BudgetExhaustedError& e) {
    EXPECT_EQ(e.incumbent().ap_of_client.size(), inst.num_clients());
    EXPECT_GE(e.nodes(), 10u);
  }
}

TEST(Milp, ExampleFixtures) {
  EXPECT_DOUBLE_EQ(solve_milp_exact(example1_instance(3, 0.5)).optimal_value, 0.5);
  EXPECT_DOUBLE_EQ(solve_milp_exact(example1_instance(8, 0.5)).optimal_value, 0.5);
  const std::vector<double> b{0.3};
  EXPECT_NEAR(solve_milp_exact(example2_instance(2, b, 2, 0.1)).optimal_value, 0.5,
              1e-15);
}

TEST(Relaxation, LayoutOfTheEpigraphLp) {
  const auto inst = example1_instance(3, 0.5);
  const auto lp = relaxation_lp(inst);
  // 1 + 5 pairs + 3 slacks columns; 3 AP rows + 3 client rows.
  EXPECT_EQ(lp.A.cols(), 9);
  EXPECT_EQ(lp.A.rows(), 6);
  EXPECT_EQ(lp.c(0), 1.0);
  EXPECT_EQ(lp.c.tail(8).cwiseAbs().sum(), 0.0);
}

TEST(Relaxation, MatchesTwoApDualOracle) {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_instance(rng, 2, 4 + trial % 10);
    const auto r = solve_lp_relaxation(inst);
    EXPECT_NEAR(r.optimal_value, testing::two_ap_dual_optimum(inst), 1e-9);
  }
}

TEST(Relaxation, PricesAreOptimalDualMultipliers) {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 4;
    const auto inst = testing::random_instance(rng, n, 6 + trial % 10);
    const auto r = solve_lp_relaxation(inst);
    EXPECT_LE(r.residuals.complementarity, 1e-8);
    EXPECT_LE(r.residuals.primal, 1e-9);
    EXPECT_LE(r.residuals.dual, 1e-9);
    EXPECT_LE(r.residuals.objective_gap, 1e-9);
    ASSERT_EQ(r.prices.size(), n);
    double sum = 0.0;
    for (double p : r.prices) {
      EXPECT_GE(p, -1e-12);
      sum += p;
    }
    EXPECT_NEAR(sum, 1.0, 1e-9);
    EXPECT_NEAR(dual_value(inst, r.prices), r.optimal_value, 1e-9);
    // Fractional association: each client row sums to one.
    for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
      double row = 0.0;
      for (const auto& e : r.x.row(j)) {
        EXPECT_TRUE(inst.is_candidate(e.ap, j));
        row += e.value;
      }
      EXPECT_NEAR(row, 1.0, 1e-9);
    }
  }
}

TEST(Relaxation, TheoremOneCertificate) {
  std::mt19937_64 rng(57);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto inst = testing::random_instance(rng, n, 5 + trial % 8);
    const double p_star = solve_milp_exact(inst).optimal_value;
    const double relax = solve_lp_relaxation(inst).optimal_value;
    EXPECT_GE(p_star - relax, -1e-9);
    EXPECT_LE(p_star - relax, duality_gap_bound(inst));
  }
}

TEST(Relaxation, ExamplesHaveNoGap) {
  EXPECT_NEAR(solve_lp_relaxation(example1_instance(3, 0.5)).optimal_value, 0.5, 1e-9);
  EXPECT_NEAR(solve_lp_relaxation(example1_instance(8, 0.5)).optimal_value, 0.5, 1e-9);
  const std::vector<double> b{0.3};
  EXPECT_NEAR(solve_lp_relaxation(example2_instance(2, b, 2, 0.1)).optimal_value, 0.5,
              1e-9);
}

}  // namespace
}  // namespace assoc60
