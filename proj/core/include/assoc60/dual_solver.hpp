#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "assoc60/instance.hpp"

namespace assoc60 {

// AP whose priced utilization beta_ij * lambda_i is smallest over N_j; ties
// go to the smallest AP index.
ApIndex client_subproblem(const Instance& inst, std::span<const double> prices,
                          ClientIndex j);

// Solves every client subproblem in client order.
std::vector<ApIndex> solve_subproblems(const Instance& inst,
                                       std::span<const double> prices);

// g(lambda) = sum_j min_{i in N_j} beta_ij lambda_i, for lambda on the simplex.
double dual_value(const Instance& inst, std::span<const double> prices);

// u_i = -sum_{j assigned to i} beta_ij, a subgradient of -g.
std::vector<double> subgradient(const Instance& inst,
                                std::span<const ApIndex> ap_of_client);

// Euclidean projection onto {x : sum x = 1, x >= 0} by sort-and-threshold.
std::vector<double> project_simplex(std::span<const double> v);

struct DaaOptions {
  std::size_t max_iters = 1000;
  double step_scale = 1.0;  // a in alpha_k = a / k
  bool trace = false;
};

struct TraceRow {
  std::size_t k;
  double g_lambda;
  double t_k;
  double g_best;
  double p_best;
  std::vector<double> prices;  // lambda^(k)
};

struct SolveReport {
  std::size_t iterations_run = 0;
  double dual_value = 0.0;    // g_best
  double primal_value = 0.0;  // p_best
  Assignment assignment;      // primal point achieving p_best
  double gap_certificate = 0.0;
  std::size_t best_primal_iteration = 0;  // first k at which p_best was hit
  std::vector<double> final_prices;       // lambda^(K+1)
  std::vector<TraceRow> trace;
};

// Snapshot handed to an observer after each DAA iteration.
struct IterationView {
  std::size_t k;
  std::span<const double> prices;       // lambda^(k)
  std::span<const ApIndex> assignment;  // x^(k)
  double g_lambda;
  double t_k;
  double g_best;
  double p_best;
  bool improved_primal;
};

using IterationObserver = std::function<void(const IterationView&)>;

// Projected subgradient ascent on the dual from uniform prices, with primal
// recovery by keeping the best assignment seen. Runs exactly max_iters
// iterations.
SolveReport run_daa(const Instance& inst, const DaaOptions& opts,
                    const IterationObserver& observer = {});

struct MessageCounts {
  std::size_t price_broadcasts = 0;   // one per AP per round
  std::size_t client_signals = 0;     // one per client per round
  std::size_t coordination = 0;       // AP-to-coordinator and back
};

struct DistributedReport {
  SolveReport report;
  MessageCounts messages;
};

// Same iteration staged as explicit protocol rounds between AP and client
// agents. AP 0 acts as the coordinator that performs the projection.
DistributedReport run_daa_distributed(const Instance& inst,
                                      const DaaOptions& opts);

// G = sqrt(sum_i (sum_{j in M_i} beta_ij)^2).
double subgradient_norm_bound(const Instance& inst);

// A-priori bound on d* - g_best^(k):
//   (R^2/2 + a^2 G^2 pi^2/12) / sum_{l<=k} a/l,  R = sqrt(2).
double convergence_bound(const Instance& inst, double step_scale,
                         std::size_t k);

// (N + 1)(varrho + max_j varrho_j).
double duality_gap_bound(const Instance& inst);

// Writes "k,g_lambda,t_k,g_best,p_best" rows.
void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace);

}  // namespace assoc60
