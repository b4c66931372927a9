#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "assoc60/channel.hpp"
#include "assoc60/exact.hpp"
#include "assoc60/instance.hpp"

namespace assoc60 {

struct ExperimentConfig {
  std::size_t n_aps = 5;
  std::size_t n_clients = 100;
  std::size_t slots = 1000;
  ChannelParams channel{};
  double target_snr_db = 10.0;      // SNR at the cell edge
  double ap_spacing_factor = 1.1;   // D / r
  double demand_max = 400e6;        // bit/s; Q_j ~ U(0, demand_max]
  std::size_t daa_iters = 1000;     // K
  double step_scale = 1.0;
  std::uint64_t seed = 1;
  bool redraw_topology = true;      // fresh client placement every slot
  bool exact = false;               // compute p*, p*_relax per slot
  bool force_exact = false;         // ignore the enumeration-size guard
  std::size_t exact_budget = kDefaultNodeBudget;
  bool record_curves = false;       // keep P^(k) and J^(k) per slot
  std::size_t jobs = 1;             // worker threads for slot evaluation

  // Throws DomainError on an invalid field.
  void validate() const;
};

struct SlotResult {
  std::size_t slot = 0;
  bool feasible = true;
  std::size_t n_pairs = 0;
  double p_daa = 0.0;   // p_best^(K)
  double d_star = 0.0;  // g_best^(K)
  std::size_t daa_best_iter = 0;
  double p_rand = 0.0;
  double p_rssi = 0.0;
  double jain_daa = 1.0;
  double jain_rand = 1.0;
  double jain_rssi = 1.0;
  bool jain_degenerate = false;
  double gap_bound = 0.0;  // (N+1)(varrho + max_j varrho_j)
  std::optional<double> p_exact;
  std::optional<double> p_relax;
  std::optional<double> jain_exact;
  std::optional<std::size_t> exact_nodes;
  // (p* - d*)/p* and (p_best - d*)/p_best with d* = p*_relax.
  std::optional<double> relative_gap;
  std::optional<double> relative_gap_best;
  std::vector<double> p_curve;  // p_best^(k), k = 1..K
  std::vector<double> j_curve;  // Jain index of the best assignment at k
};

struct Aggregate {
  std::size_t slots_total = 0;
  std::size_t slots_feasible = 0;
  std::size_t slots_infeasible = 0;
  std::size_t slots_exact = 0;
  double p_daa = 0.0;   // P^(K)
  double d_star = 0.0;  // D*
  double p_rand = 0.0;
  double p_rssi = 0.0;
  double jain_daa = 0.0;
  double jain_rand = 0.0;
  double jain_rssi = 0.0;
  double gap_bound = 0.0;
  std::optional<double> p_exact;     // P*
  std::optional<double> p_relax;
  std::optional<double> jain_exact;  // J*
  std::optional<double> ave_rdg;
  std::optional<double> ave_rdg_best;
  std::optional<double> ave_dg;       // P* - D*
  std::optional<double> ave_dg_best;  // P^(K) - D*
  std::optional<double> mean_best_iter;
  std::vector<double> p_curve;  // P^(k)
  std::vector<double> j_curve;  // J^(k)
};

struct ExperimentResult {
  ExperimentConfig config;
  std::vector<SlotResult> slots;
  Aggregate aggregate;
};

// Cell radius at the configured edge SNR.
double config_radius(const ExperimentConfig& cfg);

// APs on the x-axis at spacing D = factor * r; clients uniform over the union
// of the N disks (rejection sampling from the bounding box).
Topology generate_topology(const ExperimentConfig& cfg, std::uint64_t seed,
                           std::uint64_t slot = 0);

// One Monte Carlo slot. Infeasible slots come back with feasible = false.
SlotResult run_slot(const ExperimentConfig& cfg, std::size_t slot);

// Arithmetic means over feasible slots (exact metrics over exact slots).
Aggregate aggregate_slots(std::span<const SlotResult> slots);

ExperimentResult run_experiment(const ExperimentConfig& cfg);

enum class SweepParameter { kClients, kAps, kDaaIters };

std::optional<SweepParameter> parse_sweep_parameter(std::string_view name);
std::string_view to_string(SweepParameter p);

struct SweepRow {
  double value = 0.0;
  std::optional<Aggregate> aggregate;
  std::string error;
};

// One experiment per value, all sharing the base seed. With
// clients_per_ap > 0 and parameter kAps, n_clients tracks n_aps.
std::vector<SweepRow> sweep(const ExperimentConfig& base, SweepParameter param,
                            std::span<const double> values,
                            double clients_per_ap = 0.0);

}  // namespace assoc60
