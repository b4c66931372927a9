#include "assoc60/sim.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

#include "assoc60/dual_solver.hpp"
#include "assoc60/error.hpp"
#include "assoc60/policies.hpp"
#include "assoc60/rng.hpp"

namespace assoc60 {

void ExperimentConfig::validate() const {
  if (n_aps == 0) throw DomainError("n_aps must be positive");
  if (n_clients == 0) throw DomainError("n_clients must be positive");
  if (slots == 0) throw DomainError("slots must be positive");
  if (daa_iters == 0) throw DomainError("daa_iters must be positive");
  if (!(demand_max > 0.0)) throw DomainError("demand_max must be positive");
  if (!(step_scale > 0.0)) throw DomainError("step_scale must be positive");
  if (!(ap_spacing_factor > 0.0)) {
    throw DomainError("ap_spacing_factor must be positive");
  }
  if (jobs == 0) throw DomainError("jobs must be positive");
  channel.validate();
}

double config_radius(const ExperimentConfig& cfg) {
  return cell_radius(cfg.channel, db_to_linear(cfg.target_snr_db));
}

Topology generate_topology(const ExperimentConfig& cfg, std::uint64_t seed,
                           std::uint64_t slot) {
  constexpr std::size_t kMaxAttempts = 1'000'000;
  const double r = config_radius(cfg);
  const double spacing = cfg.ap_spacing_factor * r;
  // Clients closer than the far-field reference distance are not placed.
  const double min_d = cfg.channel.ref_distance;

  std::vector<Point> aps(cfg.n_aps);
  for (std::size_t i = 0; i < cfg.n_aps; ++i) {
    aps[i] = {static_cast<double>(i) * spacing, 0.0};
  }
  const double x_lo = -r;
  const double x_hi = static_cast<double>(cfg.n_aps - 1) * spacing + r;

  auto rng = make_stream(seed, slot, StreamPurpose::kTopology);
  std::vector<Point> clients;
  clients.reserve(cfg.n_clients);
  std::size_t attempts = 0;
  while (clients.size() < cfg.n_clients) {
    if (++attempts > kMaxAttempts) {
      throw GeometryError("placing client " + std::to_string(clients.size()) +
                          " exceeded " + std::to_string(kMaxAttempts) +
                          " attempts");
    }
    const Point p{x_lo + (x_hi - x_lo) * uniform01(rng),
                  -r + 2.0 * r * uniform01(rng)};
    bool covered = false;
    bool too_close = false;
    for (const Point& a : aps) {
      const double d = distance(a, p);
      covered = covered || d <= r;
      too_close = too_close || d < min_d;
    }
    if (covered && !too_close) {
      clients.push_back(p);
      attempts = 0;
    }
  }
  return Topology::make(std::move(aps), std::move(clients), r);
}

SlotResult run_slot(const ExperimentConfig& cfg, std::size_t slot) {
  SlotResult res;
  res.slot = slot;
  const Topology topo =
      generate_topology(cfg, cfg.seed, cfg.redraw_topology ? slot : 0);

  auto demand_rng = make_stream(cfg.seed, slot, StreamPurpose::kDemand);
  auto fading_rng = make_stream(cfg.seed, slot, StreamPurpose::kFading);
  const std::size_t m = topo.num_clients();
  std::vector<double> demands(m);
  for (double& q : demands) q = cfg.demand_max * uniform_open_closed(demand_rng);

  PairTable rates(m);
  PairTable powers(m);
  const auto aps = topo.ap_positions();
  const auto cl = topo.client_positions();
  for (ClientIndex j = 0; j < m; ++j) {
    for (ApIndex i : topo.candidates_of(j)) {
      const auto link =
          realize_link(cfg.channel, distance(aps[i], cl[j]), exponential1(fading_rng));
      rates.set(i, j, link.rate);
      powers.set(i, j, cfg.channel.tx_power * link.gain);
    }
  }

  std::optional<Instance> built;
  try {
    built.emplace(Instance::build(topo, demands, rates));
  } catch (const InfeasibleClientError&) {
    res.feasible = false;
    return res;
  }
  const Instance& inst = *built;
  res.n_pairs = inst.num_pairs();

  DaaOptions opts;
  opts.max_iters = cfg.daa_iters;
  opts.step_scale = cfg.step_scale;
  IterationObserver observer;
  double best_jain = 1.0;
  if (cfg.record_curves) {
    res.p_curve.reserve(cfg.daa_iters);
    res.j_curve.reserve(cfg.daa_iters);
    observer = [&](const IterationView& v) {
      if (v.improved_primal) {
        best_jain = jain_index(ap_loads(inst, v.assignment)).index;
      }
      res.p_curve.push_back(v.p_best);
      res.j_curve.push_back(best_jain);
    };
  }
  const SolveReport daa = run_daa(inst, opts, observer);
  res.p_daa = daa.primal_value;
  res.d_star = daa.dual_value;
  res.daa_best_iter = daa.best_primal_iteration;

  const auto policy_seed =
      make_stream(cfg.seed, slot, StreamPurpose::kRandomPolicy)();
  const Assignment rnd = random_policy(inst, policy_seed);
  const Assignment rssi = rssi_policy(inst, powers);
  res.p_rand = rnd.objective;
  res.p_rssi = rssi.objective;
  const auto jd = jain_index(inst, daa.assignment);
  res.jain_daa = jd.index;
  res.jain_degenerate = jd.degenerate;
  res.jain_rand = jain_index(inst, rnd).index;
  res.jain_rssi = jain_index(inst, rssi).index;
  res.gap_bound = duality_gap_bound(inst);

  if (cfg.exact) {
    res.p_relax = solve_lp_relaxation(inst).optimal_value;
    if (cfg.force_exact ||
        inst.assignment_space_size(2 * kEnumerationLimit) <= kEnumerationLimit) {
      try {
        const ExactResult ex = solve_milp_exact(inst, cfg.exact_budget);
        res.p_exact = ex.optimal_value;
        res.exact_nodes = ex.nodes_explored;
        res.jain_exact = jain_index(inst, ex.assignment).index;
      } catch (const BudgetExhaustedError&) {
        // Leave the exact metrics empty for this slot.
      }
    }
    if (res.p_exact && *res.p_exact > 0.0) {
      res.relative_gap = (*res.p_exact - *res.p_relax) / *res.p_exact;
    }
    if (res.p_daa > 0.0) {
      res.relative_gap_best = (res.p_daa - *res.p_relax) / res.p_daa;
    }
  }
  return res;
}

namespace {

struct Mean {
  double sum = 0.0;
  std::size_t n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  double value() const { return n == 0 ? 0.0 : sum / static_cast<double>(n); }
  std::optional<double> maybe() const {
    return n == 0 ? std::nullopt : std::optional<double>(value());
  }
};

}  // namespace

Aggregate aggregate_slots(std::span<const SlotResult> slots) {
  Aggregate a;
  a.slots_total = slots.size();
  Mean p_daa, d_star, p_rand, p_rssi, j_daa, j_rand, j_rssi, bound;
  Mean p_exact, p_relax, j_exact, rdg, rdg_best, dg, dg_best, best_iter;
  std::size_t curve_slots = 0;
  for (const auto& s : slots) {
    if (!s.feasible) {
      ++a.slots_infeasible;
      continue;
    }
    ++a.slots_feasible;
    p_daa.add(s.p_daa);
    d_star.add(s.d_star);
    p_rand.add(s.p_rand);
    p_rssi.add(s.p_rssi);
    j_daa.add(s.jain_daa);
    j_rand.add(s.jain_rand);
    j_rssi.add(s.jain_rssi);
    bound.add(s.gap_bound);
    best_iter.add(static_cast<double>(s.daa_best_iter));
    if (s.p_relax) {
      p_relax.add(*s.p_relax);
      dg_best.add(s.p_daa - *s.p_relax);
    }
    if (s.relative_gap_best) rdg_best.add(*s.relative_gap_best);
    if (s.p_exact) {
      ++a.slots_exact;
      p_exact.add(*s.p_exact);
      if (s.jain_exact) j_exact.add(*s.jain_exact);
      if (s.p_relax) dg.add(*s.p_exact - *s.p_relax);
    }
    if (s.relative_gap) rdg.add(*s.relative_gap);
    if (!s.p_curve.empty()) {
      if (a.p_curve.size() < s.p_curve.size()) {
        a.p_curve.resize(s.p_curve.size(), 0.0);
        a.j_curve.resize(s.j_curve.size(), 0.0);
      }
      for (std::size_t k = 0; k < s.p_curve.size(); ++k) {
        a.p_curve[k] += s.p_curve[k];
        a.j_curve[k] += s.j_curve[k];
      }
      ++curve_slots;
    }
  }
  a.p_daa = p_daa.value();
  a.d_star = d_star.value();
  a.p_rand = p_rand.value();
  a.p_rssi = p_rssi.value();
  a.jain_daa = j_daa.value();
  a.jain_rand = j_rand.value();
  a.jain_rssi = j_rssi.value();
  a.gap_bound = bound.value();
  a.p_exact = p_exact.maybe();
  a.p_relax = p_relax.maybe();
  a.jain_exact = j_exact.maybe();
  a.ave_rdg = rdg.maybe();
  a.ave_rdg_best = rdg_best.maybe();
  a.ave_dg = dg.maybe();
  a.ave_dg_best = dg_best.maybe();
  a.mean_best_iter = best_iter.maybe();
  for (double& v : a.p_curve) v /= static_cast<double>(curve_slots);
  for (double& v : a.j_curve) v /= static_cast<double>(curve_slots);
  return a;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  // Surface geometry problems before spawning workers.
  config_radius(cfg);

  ExperimentResult out;
  out.config = cfg;
  out.slots.resize(cfg.slots);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    while (true) {
      const std::size_t s = next.fetch_add(1);
      if (s >= cfg.slots) return;
      try {
        out.slots[s] = run_slot(cfg, s);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next.store(cfg.slots);
      }
    }
  };
  const std::size_t jobs = std::min(cfg.jobs, cfg.slots);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  out.aggregate = aggregate_slots(out.slots);
  return out;
}

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name) {
  if (name == "n_clients") return SweepParameter::kClients;
  if (name == "n_aps") return SweepParameter::kAps;
  if (name == "daa_iters") return SweepParameter::kDaaIters;
  return std::nullopt;
}

std::string_view to_string(SweepParameter p) {
  switch (p) {
    case SweepParameter::kClients:
      return "n_clients";
    case SweepParameter::kAps:
      return "n_aps";
    case SweepParameter::kDaaIters:
      return "daa_iters";
  }
  return "unknown";
}

std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepParameter param,
                            std::span<const double> values,
                            double clients_per_ap) {
  std::vector<SweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    SweepRow row;
    row.value = v;
    try {
      if (!(v >= 1.0) || v != std::floor(v)) {
        throw DomainError("sweep value must be a positive integer");
      }
      ExperimentConfig cfg = base;
      const auto count = static_cast<std::size_t>(v);
      switch (param) {
        case SweepParameter::kClients:
          cfg.n_clients = count;
          break;
        case SweepParameter::kAps:
          cfg.n_aps = count;
          if (clients_per_ap > 0.0) {
            cfg.n_clients = static_cast<std::size_t>(
                std::llround(clients_per_ap * static_cast<double>(count)));
          }
          break;
        case SweepParameter::kDaaIters:
          cfg.daa_iters = count;
          break;
      }
      row.aggregate = run_experiment(cfg).aggregate;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace assoc60
