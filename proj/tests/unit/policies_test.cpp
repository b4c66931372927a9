#include "assoc60/policies.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "assoc60/channel.hpp"
#include "assoc60/dual_solver.hpp"
#include "assoc60/error.hpp"
#include "oracles.hpp"

namespace assoc60 {
namespace {

Instance mixed_instance() {
  // client 0: {0, 1}; client 1: {0, 1, 2}; client 2: {2}.
  PairTable b(3);
  b.set(0, 0, 0.2);
  b.set(1, 0, 0.3);
  b.set(0, 1, 0.1);
  b.set(1, 1, 0.1);
  b.set(2, 1, 0.1);
  b.set(2, 2, 0.4);
  return Instance::from_betas(3, std::vector<double>(3, 1.0), b);
}

TEST(RandomPolicy, PinnedClientsIgnoreSeed) {
  const auto inst = example1_instance(1, 0.5);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(random_policy(inst, seed).ap_of_client, std::vector<ApIndex>{0});
  }
}

TEST(RandomPolicy, DeterministicPerSeed) {
  const auto inst = mixed_instance();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = random_policy(inst, seed);
    EXPECT_EQ(a.ap_of_client, random_policy(inst, seed).ap_of_client);
    EXPECT_DOUBLE_EQ(a.objective, objective_value(inst, a));
    EXPECT_EQ(a.ap_of_client[2], 2u);
  }
}

TEST(RandomPolicy, MarginalsAreUniform) {
  const auto inst = mixed_instance();
  constexpr int kSeeds = 100000;
  int first_on_zero = 0;
  std::array<int, 3> second{};
  for (int s = 0; s < kSeeds; ++s) {
    const auto a = random_policy(inst, static_cast<std::uint64_t>(s));
    first_on_zero += a.ap_of_client[0] == 0 ? 1 : 0;
    ++second[a.ap_of_client[1]];
  }
  EXPECT_NEAR(first_on_zero / static_cast<double>(kSeeds), 0.5, 0.01);
  // Chi-square with 2 degrees of freedom; 13.82 is the 0.999 quantile.
  const double expected = kSeeds / 3.0;
  double chi2 = 0.0;
  for (int c : second) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 13.82);
}

TEST(RssiPolicy, TiesGoToSmallestIndex) {
  const auto inst = mixed_instance();
  PairTable power(3);
  power.set(0, 0, 1.0);
  power.set(1, 0, 1.0);
  power.set(0, 1, 2.0);
  power.set(1, 1, 3.0);
  power.set(2, 1, 3.0);
  power.set(2, 2, 0.5);
  const auto a = rssi_policy(inst, power);
  EXPECT_EQ(a.ap_of_client, (std::vector<ApIndex>{0, 1, 2}));
}

TEST(RssiPolicy, MissingPowerIsRejected) {
  const auto inst = mixed_instance();
  PairTable power(3);
  power.set(0, 0, 1.0);
  EXPECT_THROW(rssi_policy(inst, power), DomainError);
}

struct Scenario {
  Instance inst;
  PairTable power;
};

// APs at x = 0 and x = 4; every client sits within the cell of both.
Scenario clustered(const std::vector<Point>& clients, double demand) {
  const ChannelParams ch;
  const double r = cell_radius(ch, 10.0);
  const std::vector<Point> aps{{0.0, 0.0}, {4.0, 0.0}};
  const auto topo = Topology::make(aps, clients, r);
  PairTable rates(clients.size()), power(clients.size());
  for (ClientIndex j = 0; j < clients.size(); ++j) {
    for (ApIndex i : topo.candidates_of(j)) {
      const auto link = realize_link(ch, distance(aps[i], clients[j]), 1.0);
      rates.set(i, j, link.rate);
      power.set(i, j, ch.tx_power * link.gain);
    }
  }
  const std::vector<double> q(clients.size(), demand);
  return {Instance::build(topo, q, rates), std::move(power)};
}

TEST(RssiPolicy, NearerApWinsWithEqualFading) {
  const auto s = clustered({{3.0, 0.5}}, 1e8);
  EXPECT_EQ(rssi_policy(s.inst, s.power).ap_of_client[0], 1u);
}

TEST(RssiPolicy, LoadBlindOnAClusteredCell) {
  std::vector<Point> clients;
  for (int k = 0; k < 10; ++k) clients.push_back({1.1 + 0.04 * k, 0.1 * (k % 3)});
  const auto s = clustered(clients, 3e8);
  const auto a = rssi_policy(s.inst, s.power);
  double on_zero = 0.0;
  for (ClientIndex j = 0; j < 10; ++j) {
    EXPECT_EQ(a.ap_of_client[j], 0u);
    on_zero += s.inst.beta(0, j);
  }
  EXPECT_NEAR(a.objective, on_zero, 1e-15);
  const double p_star = testing::brute_force_optimum(s.inst);
  EXPECT_LT(p_star, 0.7 * a.objective);
  const auto daa = run_daa(s.inst, {.max_iters = 1000});
  EXPECT_LT(daa.primal_value, a.objective);
}

TEST(Jain, Examples) {
  EXPECT_DOUBLE_EQ(jain_index(std::vector<double>{0.3, 0.3, 0.3}).index, 1.0);
  EXPECT_DOUBLE_EQ(jain_index(std::vector<double>{0.7, 0, 0, 0, 0}).index, 0.2);
  EXPECT_NEAR(jain_index(std::vector<double>{0.4, 0.6}).index, 0.9615384615384615, 1e-15);
  const auto zero = jain_index(std::vector<double>{0.0, 0.0});
  EXPECT_TRUE(zero.degenerate);
  EXPECT_EQ(zero.index, 1.0);
  EXPECT_FALSE(jain_index(std::vector<double>{0.0, 0.1}).degenerate);
}

TEST(Jain, BoundsAndPermutationInvariance) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> y(1 + trial % 8);
    for (auto& v : y) v = u(rng);
    const double idx = jain_index(y).index;
    const double n = static_cast<double>(y.size());
    double s = 0.0, s2 = 0.0;
    for (double v : y) {
      s += v;
      s2 += v * v;
    }
    EXPECT_NEAR(idx, s * s / (n * s2), 1e-12);
    EXPECT_GE(idx, 1.0 / n - 1e-15);
    EXPECT_LE(idx, 1.0 + 1e-15);
    std::shuffle(y.begin(), y.end(), rng);
    EXPECT_NEAR(jain_index(y).index, idx, 1e-14);
  }
}

TEST(Jain, FromAssignmentUsesPerApLoads) {
  const auto inst = mixed_instance();
  const auto a = make_assignment(inst, {0, 1, 2});
  const auto f = jain_index(inst, a);
  ASSERT_EQ(f.per_ap_load.size(), 3u);
  EXPECT_DOUBLE_EQ(f.per_ap_load[0], 0.2);
  EXPECT_DOUBLE_EQ(f.per_ap_load[1], 0.1);
  EXPECT_DOUBLE_EQ(f.per_ap_load[2], 0.4);
}

TEST(Objective, MaxLoadMatchesSubgradientNorm) {
  const auto inst = mixed_instance();
  const auto a = make_assignment(inst, {1, 1, 2});
  EXPECT_DOUBLE_EQ(objective_value(inst, a), 0.4);
  const auto u = subgradient(inst, a.ap_of_client);
  double inf_norm = 0.0;
  for (double v : u) inf_norm = std::max(inf_norm, std::abs(v));
  EXPECT_DOUBLE_EQ(objective_value(inst, a), inf_norm);

  PairTable b(3);
  for (ClientIndex j = 0; j < 3; ++j) b.set(0, j, 0.1 * (j + 1));
  const auto single = Instance::from_betas(1, std::vector<double>(3, 1.0), b);
  EXPECT_NEAR(objective_value(single, make_assignment(single, {0, 0, 0})), 0.6, 1e-15);
}

}  // namespace
}  // namespace assoc60
