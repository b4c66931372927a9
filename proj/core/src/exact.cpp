#include "assoc60/exact.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <vector>

namespace assoc60 {
namespace {

double max_load(const Instance& inst, const std::vector<std::size_t>& pos,
                std::vector<double>& loads) {
  std::fill(loads.begin(), loads.end(), 0.0);
  for (ClientIndex j = 0; j < pos.size(); ++j) {
    const Link& l = inst.links(j)[pos[j]];
    loads[l.ap] += l.beta;
  }
  return *std::max_element(loads.begin(), loads.end());
}

std::vector<ApIndex> to_aps(const Instance& inst,
                            const std::vector<std::size_t>& pos) {
  std::vector<ApIndex> aps(pos.size());
  for (ClientIndex j = 0; j < pos.size(); ++j) aps[j] = inst.links(j)[pos[j]].ap;
  return aps;
}

class BranchAndBound {
 public:
  BranchAndBound(const Instance& inst, std::size_t budget)
      : inst_(inst), budget_(budget), loads_(inst.num_aps(), 0.0) {
    const std::size_t m = inst.num_clients();
    order_.resize(m);
    std::iota(order_.begin(), order_.end(), ClientIndex{0});
    // Pinned clients first (no branching), then descending varrho_j.
    std::stable_sort(order_.begin(), order_.end(),
                     [&](ClientIndex a, ClientIndex b) {
                       const bool pa = inst.links(a).size() == 1;
                       const bool pb = inst.links(b).size() == 1;
                       if (pa != pb) return pa;
                       return inst.min_beta_of(a) > inst.min_beta_of(b);
                     });
    init_prices();
    tail_min_sum_.assign(m + 1, 0.0);
    tail_priced_sum_.assign(m + 1, 0.0);
    for (std::size_t d = m; d-- > 0;) {
      const ClientIndex j = order_[d];
      tail_min_sum_[d] = tail_min_sum_[d + 1] + inst.min_beta_of(j);
      double cheapest = std::numeric_limits<double>::infinity();
      for (const Link& l : inst.links(j)) {
        cheapest = std::min(cheapest, prices_[l.ap] * l.beta);
      }
      tail_priced_sum_[d] = tail_priced_sum_[d + 1] + cheapest;
    }
    current_.assign(m, 0);
    greedy_incumbent();
  }

  ExactResult run() {
    search(0, 0.0, 0.0);
    ExactResult r;
    r.assignment = make_assignment(inst_, best_);
    r.optimal_value = r.assignment.objective;
    r.nodes_explored = nodes_;
    return r;
  }

 private:
  // Assign in branching order to the AP with the smallest resulting load.
  void greedy_incumbent() {
    std::vector<double> loads(inst_.num_aps(), 0.0);
    best_.assign(inst_.num_clients(), 0);
    for (ClientIndex j : order_) {
      const Link* pick = nullptr;
      for (const Link& l : inst_.links(j)) {
        if (pick == nullptr || loads[l.ap] + l.beta < loads[pick->ap] + pick->beta) {
          pick = &l;
        }
      }
      loads[pick->ap] += pick->beta;
      best_[j] = pick->ap;
    }
    best_value_ = *std::max_element(loads.begin(), loads.end());
  }

  // Optimal multipliers of the root relaxation, clamped onto the simplex.
  // Falls back to uniform prices if the LP does not solve cleanly.
  void init_prices() {
    const std::size_t n = inst_.num_aps();
    prices_.assign(n, 1.0 / static_cast<double>(n));
    std::vector<double> p;
    try {
      p = solve_lp_relaxation(inst_).prices;
    } catch (const Error&) {
      return;
    }
    double sum = 0.0;
    for (double& v : p) {
      v = std::max(v, 0.0);
      sum += v;
    }
    if (p.size() != n || !(sum > 0.0)) return;
    for (double& v : p) v /= sum;
    prices_ = std::move(p);
  }

  // Any simplex price vector lower-bounds the max load by the priced total,
  // and the unassigned clients can contribute no less than their cheapest
  // priced utilization. The slack absorbs rounding so no optimum is cut.
  double lagrangian_bound(std::size_t depth) const {
    double priced = tail_priced_sum_[depth];
    for (std::size_t i = 0; i < loads_.size(); ++i) priced += prices_[i] * loads_[i];
    return priced - 1e-12 * (1.0 + priced);
  }

  double lower_bound(std::size_t depth, double cur_max, double total) const {
    const double n = static_cast<double>(inst_.num_aps());
    double lb = std::max(cur_max, (total + tail_min_sum_[depth]) / n);
    lb = std::max(lb, lagrangian_bound(depth));
    for (std::size_t d = depth; d < order_.size() && lb < best_value_; ++d) {
      double cheapest = std::numeric_limits<double>::infinity();
      for (const Link& l : inst_.links(order_[d])) {
        cheapest = std::min(cheapest, loads_[l.ap] + l.beta);
      }
      lb = std::max(lb, cheapest);
    }
    return lb;
  }

  void search(std::size_t depth, double cur_max, double total) {
    if (++nodes_ > budget_) {
      throw BudgetExhaustedError(make_assignment(inst_, best_), nodes_ - 1);
    }
    if (depth == order_.size()) {
      if (cur_max < best_value_) {
        best_value_ = cur_max;
        best_ = current_;
      }
      return;
    }
    if (lower_bound(depth, cur_max, total) >= best_value_) return;

    const ClientIndex j = order_[depth];
    const auto links = inst_.links(j);
    std::vector<std::size_t> branch(links.size());
    std::iota(branch.begin(), branch.end(), std::size_t{0});
    std::stable_sort(branch.begin(), branch.end(),
                     [&](std::size_t a, std::size_t b) {
                       return loads_[links[a].ap] + links[a].beta <
                              loads_[links[b].ap] + links[b].beta;
                     });
    for (std::size_t k : branch) {
      const Link& l = links[k];
      const double saved = loads_[l.ap];
      loads_[l.ap] = saved + l.beta;
      if (loads_[l.ap] < best_value_) {
        current_[j] = l.ap;
        search(depth + 1, std::max(cur_max, loads_[l.ap]), total + l.beta);
      }
      loads_[l.ap] = saved;
    }
  }

  const Instance& inst_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<ClientIndex> order_;
  std::vector<double> tail_min_sum_;
  std::vector<double> tail_priced_sum_;
  std::vector<double> prices_;
  std::vector<double> loads_;
  std::vector<ApIndex> current_;
  std::vector<ApIndex> best_;
  double best_value_ = std::numeric_limits<double>::infinity();
};

}  // namespace

ExactResult solve_milp_enumerate(const Instance& inst, std::size_t budget) {
  const std::size_t m = inst.num_clients();
  std::vector<std::size_t> pos(m, 0);
  std::vector<std::size_t> best_pos(m, 0);
  std::vector<double> loads(inst.num_aps());
  double best = std::numeric_limits<double>::infinity();
  std::size_t visited = 0;
  while (true) {
    if (visited == budget) {
      throw BudgetExhaustedError(make_assignment(inst, to_aps(inst, best_pos)),
                                 visited);
    }
    ++visited;
    const double value = max_load(inst, pos, loads);
    if (value < best) {
      best = value;
      best_pos = pos;
    }
    // Odometer step, client 0 fastest.
    std::size_t j = 0;
    for (; j < m; ++j) {
      if (++pos[j] < inst.links(j).size()) break;
      pos[j] = 0;
    }
    if (j == m) break;
  }
  ExactResult r;
  r.assignment = make_assignment(inst, to_aps(inst, best_pos));
  r.optimal_value = r.assignment.objective;
  r.nodes_explored = visited;
  return r;
}

ExactResult solve_milp_branch_and_bound(const Instance& inst,
                                        std::size_t budget) {
  return BranchAndBound(inst, budget).run();
}

ExactResult solve_milp_exact(const Instance& inst, std::size_t budget) {
  if (inst.assignment_space_size(2 * kEnumerationLimit) <= kEnumerationLimit) {
    return solve_milp_enumerate(inst, budget);
  }
  return solve_milp_branch_and_bound(inst, budget);
}

StandardFormLp relaxation_lp(const Instance& inst) {
  const auto n_aps = static_cast<Eigen::Index>(inst.num_aps());
  const auto m = static_cast<Eigen::Index>(inst.num_clients());
  const auto pairs = static_cast<Eigen::Index>(inst.num_pairs());
  const Eigen::Index cols = 1 + pairs + n_aps;
  StandardFormLp lp;
  lp.A = Eigen::MatrixXd::Zero(n_aps + m, cols);
  lp.b = Eigen::VectorXd::Zero(n_aps + m);
  lp.c = Eigen::VectorXd::Zero(cols);
  lp.c(0) = 1.0;
  // AP rows: sum_j beta_ij x_ij - t + s_i = 0. Client rows: sum_i x_ij = 1.
  // x_ij <= 1 follows from the client rows and x >= 0.
  for (Eigen::Index i = 0; i < n_aps; ++i) {
    lp.A(i, 0) = -1.0;
    lp.A(i, 1 + pairs + i) = 1.0;
  }
  Eigen::Index col = 1;
  for (Eigen::Index j = 0; j < m; ++j) {
    lp.b(n_aps + j) = 1.0;
    for (const Link& l : inst.links(static_cast<ClientIndex>(j))) {
      lp.A(static_cast<Eigen::Index>(l.ap), col) = l.beta;
      lp.A(n_aps + j, col) = 1.0;
      ++col;
    }
  }
  return lp;
}

RelaxationResult solve_lp_relaxation(const Instance& inst) {
  const StandardFormLp lp = relaxation_lp(inst);
  const LpSolution sol = solve_standard_form(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw Error("LP relaxation did not reach optimality");
  }
  RelaxationResult r;
  r.optimal_value = sol.x(0);
  r.pivots = sol.pivots;
  r.residuals = check_optimality(lp, sol);
  r.x = PairTable(inst.num_clients());
  Eigen::Index col = 1;
  for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
    for (const Link& l : inst.links(j)) r.x.set(l.ap, j, sol.x(col++));
  }
  r.prices.resize(inst.num_aps());
  for (ApIndex i = 0; i < inst.num_aps(); ++i) {
    r.prices[i] = -sol.y(static_cast<Eigen::Index>(i));
  }
  return r;
}

}  // namespace assoc60
