#pragma once

#include <cstddef>
#include <vector>

#include "assoc60/error.hpp"
#include "assoc60/instance.hpp"
#include "assoc60/lp_simplex.hpp"
#include "assoc60/pair_table.hpp"

namespace assoc60 {

struct ExactResult {
  double optimal_value = 0.0;  // p*
  Assignment assignment;
  std::size_t nodes_explored = 0;
};

// Raised when a MILP search exceeds its node budget. Carries the best
// assignment found so far.
class BudgetExhaustedError : public Error {
 public:
  BudgetExhaustedError(Assignment incumbent, std::size_t nodes)
      : Error("MILP node budget exhausted after " + std::to_string(nodes) +
              " nodes"),
        incumbent_(std::move(incumbent)),
        nodes_(nodes) {}
  const Assignment& incumbent() const noexcept { return incumbent_; }
  std::size_t nodes() const noexcept { return nodes_; }

 private:
  Assignment incumbent_;
  std::size_t nodes_;
};

inline constexpr std::size_t kDefaultNodeBudget = 50'000'000;
inline constexpr double kEnumerationLimit = 1e6;

// Visits every assignment in lexicographic order of candidate positions.
ExactResult solve_milp_enumerate(const Instance& inst,
                                 std::size_t budget = kDefaultNodeBudget);

// Depth-first branch and bound. Single-candidate clients are placed first,
// the rest are branched in descending min_{i} beta_ij order. Nodes are cut by
// the partial max load, an averaging bound, and a Lagrangian bound priced at
// the root LP multipliers.
ExactResult solve_milp_branch_and_bound(const Instance& inst,
                                        std::size_t budget = kDefaultNodeBudget);

// Enumeration when prod |N_j| <= kEnumerationLimit, branch and bound above.
ExactResult solve_milp_exact(const Instance& inst,
                             std::size_t budget = kDefaultNodeBudget);

struct RelaxationResult {
  double optimal_value = 0.0;  // p*_relax
  PairTable x;                 // fractional association on candidate pairs
  std::vector<double> prices;  // optimal multipliers of the AP load rows
  std::size_t pivots = 0;
  OptimalityResiduals residuals;
};

// The epigraph LP: min t s.t. sum_j beta_ij x_ij <= t, sum_i x_ij = 1,
// 0 <= x_ij <= 1, in standard form. Variable order: t, then x in
// (client, candidate) order, then one slack per AP.
StandardFormLp relaxation_lp(const Instance& inst);

RelaxationResult solve_lp_relaxation(const Instance& inst);

}  // namespace assoc60
