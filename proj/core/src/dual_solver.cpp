#include "assoc60/dual_solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "assoc60/error.hpp"
#include "assoc60/report_io.hpp"

namespace assoc60 {
namespace {

// Position in links(j) of the cheapest priced link. Links are sorted by AP,
// so keeping the first strict minimum breaks ties toward the smallest AP.
std::size_t cheapest_link(std::span<const Link> links,
                          std::span<const double> prices) {
  std::size_t best = 0;
  double best_cost = links[0].beta * prices[links[0].ap];
  for (std::size_t k = 1; k < links.size(); ++k) {
    const double cost = links[k].beta * prices[links[k].ap];
    if (cost < best_cost) {
      best_cost = cost;
      best = k;
    }
  }
  return best;
}

void check_prices(const Instance& inst, std::span<const double> prices) {
  if (prices.size() != inst.num_aps()) {
    throw DomainError("price vector length does not match AP count");
  }
}

struct BestTracker {
  double g_best = -std::numeric_limits<double>::infinity();
  double p_best = std::numeric_limits<double>::infinity();
  std::size_t best_iter = 0;
  std::vector<ApIndex> best_assignment;

  bool offer_primal(double t, std::size_t k,
                    const std::vector<ApIndex>& assignment) {
    if (t < p_best) {
      p_best = t;
      best_iter = k;
      best_assignment = assignment;
      return true;
    }
    return false;
  }
  void offer_dual(double g) { g_best = std::max(g_best, g); }
};

void validate_options(const DaaOptions& opts) {
  if (opts.max_iters < 1) throw DomainError("max_iters must be at least 1");
  if (!(opts.step_scale > 0.0) || !std::isfinite(opts.step_scale)) {
    throw DomainError("step_scale must be positive");
  }
}

SolveReport finish_report(const Instance& inst, const DaaOptions& opts,
                          BestTracker best, std::vector<double> prices,
                          std::vector<TraceRow> trace) {
  SolveReport r;
  r.iterations_run = opts.max_iters;
  r.dual_value = best.g_best;
  r.primal_value = best.p_best;
  r.assignment = make_assignment(inst, std::move(best.best_assignment));
  r.gap_certificate = std::max(0.0, best.p_best - best.g_best);
  r.best_primal_iteration = best.best_iter;
  r.final_prices = std::move(prices);
  r.trace = std::move(trace);
  return r;
}

}  // namespace

ApIndex client_subproblem(const Instance& inst, std::span<const double> prices,
                          ClientIndex j) {
  check_prices(inst, prices);
  const auto links = inst.links(j);
  return links[cheapest_link(links, prices)].ap;
}

std::vector<ApIndex> solve_subproblems(const Instance& inst,
                                       std::span<const double> prices) {
  check_prices(inst, prices);
  std::vector<ApIndex> x(inst.num_clients());
  for (ClientIndex j = 0; j < x.size(); ++j) {
    const auto links = inst.links(j);
    x[j] = links[cheapest_link(links, prices)].ap;
  }
  return x;
}

double dual_value(const Instance& inst, std::span<const double> prices) {
  check_prices(inst, prices);
  double g = 0.0;
  for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
    const auto links = inst.links(j);
    const Link& l = links[cheapest_link(links, prices)];
    g += l.beta * prices[l.ap];
  }
  return g;
}

std::vector<double> subgradient(const Instance& inst,
                                std::span<const ApIndex> ap_of_client) {
  auto u = ap_loads(inst, ap_of_client);
  for (double& v : u) v = -v;
  return u;
}

std::vector<double> project_simplex(std::span<const double> v) {
  if (v.empty()) throw DomainError("cannot project an empty vector");
  for (double e : v) {
    if (!std::isfinite(e)) throw DomainError("projection input must be finite");
  }
  std::vector<double> sorted(v.begin(), v.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t r = 0; r < sorted.size(); ++r) {
    cumulative += sorted[r];
    const double candidate = (cumulative - 1.0) / static_cast<double>(r + 1);
    if (sorted[r] - candidate > 0.0) theta = candidate;
  }
  std::vector<double> x(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) x[i] = std::max(v[i] - theta, 0.0);
  return x;
}

SolveReport run_daa(const Instance& inst, const DaaOptions& opts,
                    const IterationObserver& observer) {
  validate_options(opts);
  const std::size_t n = inst.num_aps();
  const std::size_t m = inst.num_clients();

  std::vector<double> prices(n, 1.0 / static_cast<double>(n));
  std::vector<ApIndex> x(m);
  std::vector<double> load(n);
  std::vector<double> shifted(n);
  std::vector<TraceRow> trace;
  if (opts.trace) trace.reserve(opts.max_iters);
  BestTracker best;

  for (std::size_t k = 1; k <= opts.max_iters; ++k) {
    std::fill(load.begin(), load.end(), 0.0);
    double g = 0.0;
    for (ClientIndex j = 0; j < m; ++j) {
      const auto links = inst.links(j);
      const Link& l = links[cheapest_link(links, prices)];
      x[j] = l.ap;
      load[l.ap] += l.beta;
      g += l.beta * prices[l.ap];
    }
    const double t = *std::max_element(load.begin(), load.end());
    const bool improved = best.offer_primal(t, k, x);
    best.offer_dual(g);

    if (opts.trace) {
      trace.push_back({k, g, t, best.g_best, best.p_best, prices});
    }
    if (observer) {
      observer({k, prices, x, g, t, best.g_best, best.p_best, improved});
    }

    // lambda - alpha_k u with u = -load.
    const double step = opts.step_scale / static_cast<double>(k);
    for (ApIndex i = 0; i < n; ++i) shifted[i] = prices[i] + step * load[i];
    prices = project_simplex(shifted);
  }
  return finish_report(inst, opts, std::move(best), std::move(prices),
                       std::move(trace));
}

// ------------------------------------------------------------ distributed

namespace {

struct ApAgent {
  ApIndex index;
  double price = 0.0;
  std::vector<ClientIndex> signalled;  // arrival order within a round
  double load = 0.0;                   // -u_i
  double priced_load = 0.0;            // lambda_i * load, for the dual value
};

struct ClientAgent {
  ClientIndex index;
  std::vector<double> heard;  // price per candidate link, from broadcasts
  ApIndex choice = 0;
};

}  // namespace

DistributedReport run_daa_distributed(const Instance& inst,
                                      const DaaOptions& opts) {
  validate_options(opts);
  const std::size_t n = inst.num_aps();
  const std::size_t m = inst.num_clients();

  std::vector<ApAgent> aps(n);
  for (ApIndex i = 0; i < n; ++i) {
    aps[i].index = i;
    aps[i].price = 1.0 / static_cast<double>(n);
  }
  std::vector<ClientAgent> clients(m);
  for (ClientIndex j = 0; j < m; ++j) {
    clients[j].index = j;
    clients[j].heard.resize(inst.links(j).size());
  }

  MessageCounts msgs;
  BestTracker best;
  std::vector<TraceRow> trace;
  std::vector<ApIndex> x(m);
  std::vector<double> shifted(n);
  std::vector<double> prices(n);

  for (std::size_t k = 1; k <= opts.max_iters; ++k) {
    // Each AP broadcasts its price to the clients in M_i.
    for (ApAgent& ap : aps) {
      ++msgs.price_broadcasts;
      ap.signalled.clear();
      for (ClientIndex j : inst.clients_of(ap.index)) {
        const auto links = inst.links(j);
        for (std::size_t p = 0; p < links.size(); ++p) {
          if (links[p].ap == ap.index) clients[j].heard[p] = ap.price;
        }
      }
    }
    // Clients solve their local problem and signal only the chosen AP.
    for (ClientAgent& c : clients) {
      const auto links = inst.links(c.index);
      std::size_t pick = 0;
      double pick_cost = links[0].beta * c.heard[0];
      for (std::size_t p = 1; p < links.size(); ++p) {
        const double cost = links[p].beta * c.heard[p];
        if (cost < pick_cost) {
          pick_cost = cost;
          pick = p;
        }
      }
      c.choice = links[pick].ap;
      aps[c.choice].signalled.push_back(c.index);
      ++msgs.client_signals;
    }
    // Each AP accumulates its subgradient entry from the signals it received.
    for (ApAgent& ap : aps) {
      ap.load = 0.0;
      for (ClientIndex j : ap.signalled) ap.load += inst.beta(ap.index, j);
      ap.priced_load = ap.price * ap.load;
    }
    // Coordinator (AP 0) gathers u, recovers the primal point, projects.
    msgs.coordination += n - 1;
    double t = 0.0;
    double g = 0.0;
    for (const ApAgent& ap : aps) {
      t = std::max(t, ap.load);
      g += ap.priced_load;
      prices[ap.index] = ap.price;
      for (ClientIndex j : ap.signalled) x[j] = ap.index;
    }
    best.offer_primal(t, k, x);
    best.offer_dual(g);
    if (opts.trace) trace.push_back({k, g, t, best.g_best, best.p_best, prices});

    const double step = opts.step_scale / static_cast<double>(k);
    for (const ApAgent& ap : aps) {
      shifted[ap.index] = ap.price + step * ap.load;
    }
    const auto next = project_simplex(shifted);
    msgs.coordination += n - 1;
    for (ApAgent& ap : aps) ap.price = next[ap.index];
  }

  for (ApIndex i = 0; i < n; ++i) prices[i] = aps[i].price;
  DistributedReport out;
  out.report = finish_report(inst, opts, std::move(best), std::move(prices),
                             std::move(trace));
  out.messages = msgs;
  return out;
}

// ----------------------------------------------------------------- bounds

double subgradient_norm_bound(const Instance& inst) {
  double sum_sq = 0.0;
  for (ApIndex i = 0; i < inst.num_aps(); ++i) {
    double s = 0.0;
    for (ClientIndex j : inst.clients_of(i)) s += inst.beta(i, j);
    sum_sq += s * s;
  }
  return std::sqrt(sum_sq);
}

double convergence_bound(const Instance& inst, double step_scale,
                         std::size_t k) {
  if (k < 1) throw DomainError("convergence bound needs k >= 1");
  if (!(step_scale > 0.0)) throw DomainError("step_scale must be positive");
  constexpr double kRadiusSq = 2.0;  // diameter of the unit simplex, squared
  const double g = subgradient_norm_bound(inst);
  double step_sum = 0.0;
  for (std::size_t l = 1; l <= k; ++l) step_sum += step_scale / static_cast<double>(l);
  const double numerator =
      kRadiusSq / 2.0 + step_scale * step_scale * g * g *
                            std::numbers::pi * std::numbers::pi / 12.0;
  return numerator / step_sum;
}

double duality_gap_bound(const Instance& inst) {
  double max_client_min = 0.0;
  for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
    max_client_min = std::max(max_client_min, inst.min_beta_of(j));
  }
  return static_cast<double>(inst.num_aps() + 1) *
         (inst.max_beta() + max_client_min);
}

void write_trace_csv(std::ostream& out, std::span<const TraceRow> trace) {
  out << "k,g_lambda,t_k,g_best,p_best\n";
  for (const auto& r : trace) {
    out << r.k << ',' << format_double(r.g_lambda) << ','
        << format_double(r.t_k) << ',' << format_double(r.g_best) << ','
        << format_double(r.p_best) << '\n';
  }
}

}  // namespace assoc60
