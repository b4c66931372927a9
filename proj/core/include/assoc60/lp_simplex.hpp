#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace assoc60 {

// minimize c'x  subject to  A x = b,  x >= 0.
struct StandardFormLp {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kPivotLimit };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Eigen::VectorXd x;
  Eigen::VectorXd y;  // row duals: A'y <= c at optimality
  double objective = 0.0;
  std::size_t pivots = 0;
};

struct SimplexOptions {
  double tolerance = 1e-9;  // reduced-cost and ratio-test tolerance
  std::size_t max_pivots = 1'000'000;
};

// Dense two-phase tableau simplex with Bland's rule. Rows with b < 0 are
// negated internally. Redundant equality rows are detected at the end of
// phase one and dropped.
LpSolution solve_standard_form(const StandardFormLp& lp,
                               const SimplexOptions& opts = {});

struct OptimalityResiduals {
  double primal = 0.0;          // max |Ax - b| and max(-x)
  double dual = 0.0;            // max(A'y - c)
  double complementarity = 0.0; // max |x_k (c - A'y)_k|
  double objective_gap = 0.0;   // |c'x - b'y|
};

OptimalityResiduals check_optimality(const StandardFormLp& lp,
                                     const LpSolution& sol);

}  // namespace assoc60
