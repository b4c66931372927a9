#include "assoc60/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include <gtest/gtest.h>

#include "assoc60/exact.hpp"
#include "oracles.hpp"

namespace assoc60 {
namespace {

// Two clients, two APs: rows (0.4, 0.6) and (0.5, 0.5).
Instance two_by_two() {
  PairTable b(2);
  b.set(0, 0, 0.4);
  b.set(1, 0, 0.6);
  b.set(0, 1, 0.5);
  b.set(1, 1, 0.5);
  return Instance::from_betas(2, std::vector<double>(2, 1.0), b);
}

double norm2(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

TEST(Subproblem, CheapestPricedUtilizationWins) {
  const auto inst = two_by_two();
  const std::vector<double> half{0.5, 0.5};
  EXPECT_EQ(client_subproblem(inst, half, 0), 0u);
  const std::vector<double> vertex{0.0, 1.0};
  EXPECT_EQ(client_subproblem(inst, vertex, 0), 0u);
  const std::vector<double> other{1.0, 0.0};
  EXPECT_EQ(client_subproblem(inst, other, 0), 1u);
}

TEST(Subproblem, TiesGoToSmallestIndex) {
  const auto inst = two_by_two();
  const std::vector<double> half{0.5, 0.5};
  EXPECT_EQ(client_subproblem(inst, half, 1), 0u);
  const std::vector<double> zero_tie{0.0, 0.0};
  EXPECT_EQ(client_subproblem(inst, zero_tie, 1), 0u);
}

TEST(Subproblem, ChoiceInvariantUnderPriceScaling) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> scale(0.01, 100.0);
  for (int trial = 0; trial < 50; ++trial) {
    const auto inst = testing::random_instance(rng, 4, 12);
    const auto prices = testing::random_simplex_point(rng, 4);
    const double c = trial == 0 ? 2.0 : scale(rng);
    std::vector<double> scaled(prices);
    for (auto& p : scaled) p *= c;
    const auto base = solve_subproblems(inst, prices);
    const auto scaled_choice = solve_subproblems(inst, scaled);
    if (c == 2.0) {
      EXPECT_EQ(base, scaled_choice);  // exact in floating point
    } else {
      // A general scale can flip exact ties only through rounding.
      for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
        if (base[j] != scaled_choice[j]) {
          EXPECT_NEAR(inst.beta(base[j], j) * prices[base[j]],
                      inst.beta(scaled_choice[j], j) * prices[scaled_choice[j]],
                      1e-14);
        }
      }
    }
  }
}

TEST(DualValue, SumOfPerClientMinima) {
  const auto inst = two_by_two();
  const std::vector<double> half{0.5, 0.5};
  EXPECT_NEAR(dual_value(inst, half), 0.45, 1e-15);

  PairTable b(1);
  b.set(0, 0, 0.5);
  const auto single = Instance::from_betas(1, std::vector<double>{1.0}, b);
  const std::vector<double> one{1.0};
  EXPECT_DOUBLE_EQ(dual_value(single, one), 0.5);
}

TEST(DualValue, VertexPricesChargeOnlyPinnedClients) {
  // Example 1 with m = 4: only client 0 is pinned (to AP 0).
  const auto inst = example1_instance(4, 0.5);
  for (ApIndex i = 0; i < 4; ++i) {
    std::vector<double> e(4, 0.0);
    e[i] = 1.0;
    EXPECT_DOUBLE_EQ(dual_value(inst, e), i == 0 ? 0.5 : 0.0);
  }
}

TEST(DualValue, WeakDualityAgainstBruteForce) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const auto inst = testing::random_instance(rng, n, 5 + trial % 6);
    const double p_star = testing::brute_force_optimum(inst);
    for (int s = 0; s < 50; ++s) {
      const auto lambda = testing::random_simplex_point(rng, n);
      EXPECT_LE(dual_value(inst, lambda), p_star + 1e-12);
    }
  }
}

TEST(Subgradient, NegatedPerApUtilization) {
  const auto inst = example1_instance(3, 0.3, std::vector<double>{0.2, 0.9});
  const std::vector<ApIndex> a{0, 0, 1};
  const auto u = subgradient(inst, a);
  ASSERT_EQ(u.size(), 3u);
  EXPECT_DOUBLE_EQ(u[0], -0.5);
  EXPECT_DOUBLE_EQ(u[1], -0.9);
  EXPECT_DOUBLE_EQ(u[2], 0.0);
  const auto loads = ap_loads(inst, a);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_DOUBLE_EQ(-u[i], loads[i]);
}

TEST(Projection, Examples) {
  const std::vector<double> on{0.2, 0.3, 0.5};
  const auto p = project_simplex(on);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(p[i], on[i], 1e-15);
  EXPECT_EQ(project_simplex(std::vector<double>{0.6, 0.6}), (std::vector<double>{0.5, 0.5}));
  const auto q = project_simplex(std::vector<double>{1.2, -0.2});
  EXPECT_NEAR(q[0], 1.0, 1e-15);
  EXPECT_EQ(q[1], 0.0);
}

TEST(Projection, KktIdempotentNonexpansive) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> dim(1, 12);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = dim(rng);
    std::vector<double> v(n), w(n);
    const double spread = (trial % 3 == 0) ? 10.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      v[i] = spread * g(rng);
      w[i] = spread * g(rng);
    }
    const auto pv = project_simplex(v);
    const auto pw = project_simplex(w);
    double sum = 0.0;
    for (double x : pv) {
      ASSERT_GE(x, 0.0);
      sum += x;
    }
    ASSERT_NEAR(sum, 1.0, 1e-9);
    const auto ppv = project_simplex(pv);
    ASSERT_LE(norm2(ppv, pv), 1e-12);
    ASSERT_LE(norm2(pv, pw), norm2(v, w) + 1e-12);
    for (int s = 0; s < 3; ++s) {
      const auto y = testing::random_simplex_point(rng, n);
      double inner = 0.0;
      for (std::size_t i = 0; i < n; ++i) inner += (v[i] - pv[i]) * (y[i] - pv[i]);
      ASSERT_LE(inner, 1e-9);
    }
  }
}

TEST(Daa, SingleClientConvergesImmediately) {
  PairTable b(1);
  b.set(0, 0, 0.37);
  const auto inst = Instance::from_betas(1, std::vector<double>{1.0}, b);
  const auto r = run_daa(inst, {.max_iters = 5, .step_scale = 1.0, .trace = true});
  EXPECT_DOUBLE_EQ(r.primal_value, 0.37);
  EXPECT_DOUBLE_EQ(r.dual_value, 0.37);
  EXPECT_EQ(r.best_primal_iteration, 1u);
  EXPECT_DOUBLE_EQ(r.trace.front().g_best, 0.37);
  EXPECT_EQ(r.gap_certificate, 0.0);
}

TEST(Daa, PinnedClientPrimalIsExactFromTheStart) {
  PairTable b(1);
  b.set(1, 0, 0.37);
  const auto inst = Instance::from_betas(3, std::vector<double>{1.0}, b);
  const auto r = run_daa(inst, {.max_iters = 3000});
  EXPECT_DOUBLE_EQ(r.primal_value, 0.37);
  EXPECT_EQ(r.best_primal_iteration, 1u);
  EXPECT_NEAR(r.dual_value, 0.37, 1e-3);
}

TEST(Daa, ExampleOneReachesStrongDuality) {
  const auto inst = example1_instance(3, 0.5);
  const auto r = run_daa(inst, {.max_iters = 2000});
  EXPECT_NEAR(r.dual_value, 0.5, 1e-3);
  EXPECT_NEAR(r.primal_value, 0.5, 1e-3);
  EXPECT_EQ(r.iterations_run, 2000u);
}

TEST(Daa, TracesAreMonotoneAndBracketOptimum) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 30; ++trial) {
    const auto inst = testing::random_instance(rng, 2, 6);
    const double p_star = testing::brute_force_optimum(inst);
    std::size_t seen = 0;
    double last_g = -1.0;
    double last_p = 2.0 * static_cast<double>(inst.num_clients());
    const auto r = run_daa(inst, {.max_iters = 300}, [&](const IterationView& v) {
      ++seen;
      EXPECT_EQ(v.k, seen);
      double sum = 0.0;
      for (double x : v.prices) {
        EXPECT_GE(x, 0.0);
        sum += x;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
      EXPECT_GE(v.g_best, last_g);
      EXPECT_LE(v.p_best, last_p);
      EXPECT_LE(v.g_best, p_star + 1e-12);
      EXPECT_GE(v.p_best, p_star - 1e-12);
      EXPECT_LE(v.g_lambda, v.g_best);
      EXPECT_GE(v.t_k, v.p_best);
      last_g = v.g_best;
      last_p = v.p_best;
    });
    EXPECT_EQ(seen, 300u);
    EXPECT_GE(r.gap_certificate, 0.0);
    EXPECT_DOUBLE_EQ(r.assignment.objective, r.primal_value);
    EXPECT_DOUBLE_EQ(make_assignment(inst, r.assignment.ap_of_client).objective,
                     r.primal_value);
  }
}

TEST(Daa, TraceCsvHasOneRowPerIteration) {
  const auto inst = two_by_two();
  const auto r = run_daa(inst, {.max_iters = 4, .trace = true});
  ASSERT_EQ(r.trace.size(), 4u);
  std::ostringstream out;
  write_trace_csv(out, r.trace);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,g_lambda,t_k,g_best,p_best");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 4);
}

TEST(Distributed, BitwiseEqualToCentralized) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> n_dist(2, 6), m_dist(3, 30);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = n_dist(rng);
    const std::size_t m = m_dist(rng);
    const auto inst = testing::random_instance(rng, n, m, 0.6);
    const DaaOptions opts{.max_iters = 200, .step_scale = 0.5 + 0.1 * (trial % 10),
                          .trace = true};
    const auto central = run_daa(inst, opts);
    const auto dist = run_daa_distributed(inst, opts);
    ASSERT_EQ(central.trace.size(), dist.report.trace.size());
    for (std::size_t k = 0; k < central.trace.size(); ++k) {
      ASSERT_EQ(central.trace[k].prices, dist.report.trace[k].prices) << "k=" << k;
      ASSERT_EQ(central.trace[k].t_k, dist.report.trace[k].t_k);
      ASSERT_NEAR(central.trace[k].g_lambda, dist.report.trace[k].g_lambda, 1e-12);
    }
    EXPECT_EQ(central.final_prices, dist.report.final_prices);
    EXPECT_EQ(central.assignment.ap_of_client, dist.report.assignment.ap_of_client);
    EXPECT_EQ(central.primal_value, dist.report.primal_value);
    EXPECT_EQ(dist.messages.price_broadcasts, 200 * n);
    EXPECT_EQ(dist.messages.client_signals, 200 * m);
  }
}

TEST(Distributed, MessagesScaleLinearlyInIterations) {
  const std::vector<double> b{0.3};
  const auto inst = example2_instance(2, b, 2, 0.1);
  const auto one = run_daa_distributed(inst, {.max_iters = 1});
  EXPECT_EQ(one.messages.client_signals, inst.num_clients());
  EXPECT_EQ(one.messages.price_broadcasts, inst.num_aps());
  const auto ten = run_daa_distributed(inst, {.max_iters = 10});
  EXPECT_EQ(ten.messages.client_signals, 10 * one.messages.client_signals);
  EXPECT_EQ(ten.messages.price_broadcasts, 10 * one.messages.price_broadcasts);
  EXPECT_EQ(ten.messages.coordination, 10 * one.messages.coordination);
}

TEST(Bounds, ConvergenceBoundFormula) {
  const auto inst = two_by_two();
  // loads when everything is on its AP: AP0 0.9, AP1 1.1.
  const double g2 = 0.9 * 0.9 + 1.1 * 1.1;
  EXPECT_NEAR(subgradient_norm_bound(inst), std::sqrt(g2), 1e-15);
  const double pi2 = std::numbers::pi * std::numbers::pi;
  const double expected1 = (1.0 + 0.25 * g2 * pi2 / 12.0) / 0.5;
  EXPECT_NEAR(convergence_bound(inst, 0.5, 1), expected1, 1e-12);
  const double expected3 = (1.0 + g2 * pi2 / 12.0) / (1.0 + 0.5 + 1.0 / 3.0);
  EXPECT_NEAR(convergence_bound(inst, 1.0, 3), expected3, 1e-12);
  for (std::size_t k = 1; k < 100; ++k) {
    EXPECT_LT(convergence_bound(inst, 1.0, k + 1), convergence_bound(inst, 1.0, k));
  }
}

TEST(Bounds, DoublingUtilizationDoublesG) {
  PairTable small(3), big(3);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.05, 0.5);
  for (ClientIndex j = 0; j < 3; ++j) {
    for (ApIndex i = 0; i < 2; ++i) {
      const double v = u(rng);
      small.set(i, j, v);
      big.set(i, j, 2.0 * v);
    }
  }
  const std::vector<double> q(3, 1.0);
  const auto a = Instance::from_betas(2, q, small);
  const auto b = Instance::from_betas(2, q, big);
  EXPECT_NEAR(subgradient_norm_bound(b), 2.0 * subgradient_norm_bound(a), 1e-14);
}

TEST(Bounds, DualityGapBoundArithmetic) {
  PairTable b(2);
  for (ClientIndex j = 0; j < 2; ++j) {
    b.set(0, j, 1.0);
    b.set(1, j, 1.0);
  }
  const auto inst = Instance::from_betas(2, std::vector<double>(2, 1.0), b);
  EXPECT_DOUBLE_EQ(duality_gap_bound(inst), 6.0);
}

TEST(Bounds, CertificatesHoldAgainstOracles) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto inst = testing::random_instance(rng, n, 6 + trial % 5);
    const double p_star = testing::brute_force_optimum(inst);
    const double d_star = solve_lp_relaxation(inst).optimal_value;
    EXPECT_LE(p_star - d_star, duality_gap_bound(inst) + 1e-12);
    EXPECT_GE(p_star - d_star, -1e-9);
    run_daa(inst, {.max_iters = 500}, [&](const IterationView& v) {
      EXPECT_LE(d_star - v.g_best, convergence_bound(inst, 1.0, v.k) + 1e-12)
          << "k=" << v.k;
    });
  }
}

}  // namespace
}  // namespace assoc60
