#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "assoc60/pair_table.hpp"

namespace assoc60 {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

double distance(const Point& a, const Point& b);

// AP/client geometry plus the candidate sets it induces. Built through
// make_topology (disk rule) or from_candidates (explicit sets); both enforce
// bipartite consistency and the no-isolated-client rule.
class Topology {
 public:
  static Topology make(std::vector<Point> aps, std::vector<Point> clients,
                       double radius);
  // Explicit candidate sets; positions may be empty.
  static Topology from_candidates(
      std::size_t n_aps, std::vector<std::vector<ApIndex>> candidates_of_client,
      double radius = 0.0);

  std::size_t num_aps() const noexcept { return clients_of_ap_.size(); }
  std::size_t num_clients() const noexcept {
    return candidates_of_client_.size();
  }
  double radius() const noexcept { return radius_; }
  std::span<const Point> ap_positions() const noexcept { return aps_; }
  std::span<const Point> client_positions() const noexcept { return clients_; }
  std::span<const ApIndex> candidates_of(ClientIndex j) const {
    return candidates_of_client_.at(j);
  }
  std::span<const ClientIndex> clients_of(ApIndex i) const {
    return clients_of_ap_.at(i);
  }

 private:
  Topology() = default;
  void index_clients_of_ap(std::size_t n_aps);

  std::vector<Point> aps_;
  std::vector<Point> clients_;
  double radius_ = 0.0;
  std::vector<std::vector<ApIndex>> candidates_of_client_;
  std::vector<std::vector<ClientIndex>> clients_of_ap_;
};

// One candidate link of a client after pruning.
struct Link {
  ApIndex ap;
  double beta;  // channel utilization Q_j / R_ij, in (0, 1]
  double rate;  // bit/s
};

// Immutable problem data for min-max AP utilization. Links of each client are
// sorted by AP index; every client keeps at least one link.
class Instance {
 public:
  // Computes beta = Q / R on every topology pair and drops pairs with
  // beta > 1. Throws InfeasibleClientError if a client loses all candidates,
  // DomainError if link_rates does not match the topology or is non-positive.
  static Instance build(const Topology& topo, std::span<const double> demands,
                        const PairTable& link_rates);

  // Direct construction from utilizations. Rates are derived as Q / beta.
  // Pairs with beta > 1 are pruned as in build().
  static Instance from_betas(std::size_t n_aps, std::span<const double> demands,
                             const PairTable& betas);

  std::size_t num_aps() const noexcept { return clients_of_ap_.size(); }
  std::size_t num_clients() const noexcept { return links_.size(); }
  std::size_t num_pairs() const noexcept { return num_pairs_; }

  std::span<const Link> links(ClientIndex j) const { return links_.at(j); }
  std::span<const ClientIndex> clients_of(ApIndex i) const {
    return clients_of_ap_.at(i);
  }
  double demand(ClientIndex j) const { return demands_.at(j); }
  std::span<const double> demands() const noexcept { return demands_; }

  // Utilization of (i, j); throws DomainError if the pair is not a candidate.
  double beta(ApIndex i, ClientIndex j) const;
  bool is_candidate(ApIndex i, ClientIndex j) const;

  // Largest stored beta (varrho) and, per client, the smallest (varrho_j).
  double max_beta() const;
  double min_beta_of(ClientIndex j) const;

  // Product of candidate-set sizes, saturating at `cap`.
  double assignment_space_size(double cap) const;

 private:
  Instance() = default;
  static Instance assemble(std::size_t n_aps, std::vector<double> demands,
                           std::vector<std::vector<Link>> raw);

  std::vector<double> demands_;
  std::vector<std::vector<Link>> links_;
  std::vector<std::vector<ClientIndex>> clients_of_ap_;
  std::size_t num_pairs_ = 0;
};

// Candidate sets of an instance as a Topology (no positions).
Topology candidate_topology(const Instance& inst);
// Link rates of an instance keyed by its candidate pairs.
PairTable rate_table(const Instance& inst);

// One AP per client together with the resulting max AP utilization.
struct Assignment {
  std::vector<ApIndex> ap_of_client;
  double objective = 0.0;
};

// Per-AP utilization sum_j beta_ij x_ij. Throws DomainError if some client is
// mapped to a non-candidate AP.
std::vector<double> ap_loads(const Instance& inst,
                             std::span<const ApIndex> ap_of_client);

// Validates the mapping and fills in the objective.
Assignment make_assignment(const Instance& inst,
                           std::vector<ApIndex> ap_of_client);

// Chain network: client 0 -> {AP 0}; client j >= 1 -> {AP j-1, AP j};
// beta_jj = beta_diag and beta_{j-1,j} = off_diag[j-1] (or 1.0 if absent).
Instance example1_instance(std::size_t m, double beta_diag,
                           std::span<const double> off_diag = {});

// n APs. AP i gets ceil(B_i) pinned clients splitting type1_loads[i] = B_i
// evenly (none when B_i is zero), then m_per_ap * n clients are connected to
// every AP with utilization beta2. A single load value is broadcast to all APs.
Instance example2_instance(std::size_t n, std::span<const double> type1_loads,
                           std::size_t m_per_ap, double beta2);

}  // namespace assoc60
