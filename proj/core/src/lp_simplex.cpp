#include "assoc60/lp_simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "assoc60/error.hpp"

namespace assoc60 {
namespace {

// Constraint rows 0..m-1, objective (reduced-cost) row m, rhs in the last
// column. The objective row stores d_j = c_j - c_B' B^-1 a_j and -z.
struct Tableau {
  Eigen::MatrixXd t;
  std::vector<Eigen::Index> basis;

  Eigen::Index rows() const { return t.rows() - 1; }
  Eigen::Index rhs() const { return t.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index c) {
    t.row(r) /= t(r, c);
    for (Eigen::Index i = 0; i < t.rows(); ++i) {
      if (i != r && t(i, c) != 0.0) {
        t.row(i) -= t(i, c) * t.row(r);
      }
    }
    t(r, c) = 1.0;
    basis[static_cast<std::size_t>(r)] = c;
  }
};

enum class Phase { kOptimal, kUnbounded, kPivotLimit };

// Bland's rule: lowest-index improving column, ratio ties to the lowest basic
// variable index.
Phase iterate(Tableau& tab, Eigen::Index n_enterable, const SimplexOptions& opts,
              std::size_t& pivots) {
  const Eigen::Index m = tab.rows();
  const Eigen::Index rhs = tab.rhs();
  while (true) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n_enterable; ++j) {
      if (tab.t(m, j) < -opts.tolerance) {
        enter = j;
        break;
      }
    }
    if (enter < 0) return Phase::kOptimal;

    Eigen::Index leave = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < m; ++i) {
      const double a = tab.t(i, enter);
      if (a <= opts.tolerance) continue;
      const double ratio = std::max(tab.t(i, rhs), 0.0) / a;
      if (ratio < best_ratio - opts.tolerance ||
          (ratio <= best_ratio + opts.tolerance && leave >= 0 &&
           tab.basis[static_cast<std::size_t>(i)] <
               tab.basis[static_cast<std::size_t>(leave)])) {
        if (ratio < best_ratio) best_ratio = ratio;
        leave = i;
      }
    }
    if (leave < 0) return Phase::kUnbounded;
    if (pivots >= opts.max_pivots) return Phase::kPivotLimit;
    tab.pivot(leave, enter);
    ++pivots;
  }
}

void load_objective(Tableau& tab, const Eigen::VectorXd& cost) {
  const Eigen::Index m = tab.rows();
  tab.t.row(m).setZero();
  tab.t.row(m).head(cost.size()) = cost.transpose();
  for (Eigen::Index i = 0; i < m; ++i) {
    const Eigen::Index b = tab.basis[static_cast<std::size_t>(i)];
    const double cb = b < cost.size() ? cost(b) : 0.0;
    if (cb != 0.0) tab.t.row(m) -= cb * tab.t.row(i);
  }
}

}  // namespace

LpSolution solve_standard_form(const StandardFormLp& lp,
                               const SimplexOptions& opts) {
  const Eigen::Index m = lp.A.rows();
  const Eigen::Index n = lp.A.cols();
  if (lp.b.size() != m || lp.c.size() != n) {
    throw DomainError("LP dimensions are inconsistent");
  }

  // Columns: n structural, m artificial, rhs.
  Tableau tab;
  tab.t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  std::vector<double> row_sign(static_cast<std::size_t>(m), 1.0);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = lp.b(i) < 0.0 ? -1.0 : 1.0;
    row_sign[static_cast<std::size_t>(i)] = s;
    tab.t.row(i).head(n) = s * lp.A.row(i);
    tab.t(i, n + i) = 1.0;
    tab.t(i, n + m) = s * lp.b(i);
  }
  tab.basis.resize(static_cast<std::size_t>(m));
  for (Eigen::Index i = 0; i < m; ++i) tab.basis[static_cast<std::size_t>(i)] = n + i;

  LpSolution sol;
  // Phase one: minimize the sum of artificials.
  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + m);
  phase1.tail(m).setOnes();
  load_objective(tab, phase1);
  const Phase p1 = iterate(tab, n + m, opts, sol.pivots);
  if (p1 == Phase::kPivotLimit) {
    sol.status = LpStatus::kPivotLimit;
    return sol;
  }
  const double infeasibility = -tab.t(m, n + m);
  const double scale = 1.0 + lp.b.cwiseAbs().maxCoeff();
  if (infeasibility > 1e-7 * scale) {
    sol.status = LpStatus::kInfeasible;
    return sol;
  }

  // Drive remaining artificials out of the basis; drop rows that cannot be
  // pivoted (linearly dependent equalities).
  std::vector<bool> dropped(static_cast<std::size_t>(m), false);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis[static_cast<std::size_t>(i)] < n) continue;
    Eigen::Index col = -1;
    for (Eigen::Index j = 0; j < n; ++j) {
      if (std::abs(tab.t(i, j)) > opts.tolerance) {
        col = j;
        break;
      }
    }
    if (col >= 0) {
      tab.pivot(i, col);
      ++sol.pivots;
    } else {
      dropped[static_cast<std::size_t>(i)] = true;
    }
  }
  if (std::find(dropped.begin(), dropped.end(), true) != dropped.end()) {
    Tableau kept;
    Eigen::Index keep_rows = 0;
    for (bool d : dropped) keep_rows += d ? 0 : 1;
    kept.t.resize(keep_rows + 1, tab.t.cols());
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (dropped[static_cast<std::size_t>(i)]) continue;
      kept.t.row(r++) = tab.t.row(i);
      kept.basis.push_back(tab.basis[static_cast<std::size_t>(i)]);
    }
    kept.t.row(r).setZero();
    tab = std::move(kept);
  }

  // Phase two on the structural columns. Artificial columns keep being
  // updated so that their reduced costs expose the row duals.
  load_objective(tab, lp.c);
  const Phase p2 = iterate(tab, n, opts, sol.pivots);
  if (p2 == Phase::kPivotLimit) {
    sol.status = LpStatus::kPivotLimit;
    return sol;
  }
  if (p2 == Phase::kUnbounded) {
    sol.status = LpStatus::kUnbounded;
    return sol;
  }

  sol.status = LpStatus::kOptimal;
  sol.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < tab.rows(); ++i) {
    const Eigen::Index b = tab.basis[static_cast<std::size_t>(i)];
    if (b < n) sol.x(b) = tab.t(i, tab.rhs());
  }
  // Reduced cost of artificial i is 0 - y_i (in the sign-adjusted rows).
  sol.y = Eigen::VectorXd::Zero(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (dropped[static_cast<std::size_t>(i)]) continue;
    sol.y(i) = -tab.t(tab.rows(), n + i) * row_sign[static_cast<std::size_t>(i)];
  }
  sol.objective = lp.c.dot(sol.x);
  return sol;
}

OptimalityResiduals check_optimality(const StandardFormLp& lp,
                                     const LpSolution& sol) {
  OptimalityResiduals r;
  const Eigen::VectorXd ax = lp.A * sol.x - lp.b;
  r.primal = ax.cwiseAbs().maxCoeff();
  if (sol.x.size() > 0) r.primal = std::max(r.primal, (-sol.x).maxCoeff());
  const Eigen::VectorXd reduced = lp.c - lp.A.transpose() * sol.y;
  r.dual = std::max(0.0, (-reduced).maxCoeff());
  r.complementarity = sol.x.cwiseProduct(reduced).cwiseAbs().maxCoeff();
  r.objective_gap = std::abs(lp.c.dot(sol.x) - lp.b.dot(sol.y));
  return r;
}

}  // namespace assoc60
