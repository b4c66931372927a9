#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "assoc60/instance.hpp"
#include "assoc60/pair_table.hpp"

namespace assoc60 {

// Each client picks uniformly among its (pruned) candidates, independently.
Assignment random_policy(const Instance& inst, std::uint64_t seed);

// Each client picks the candidate with the largest received power; ties go to
// the smallest AP index. received_powers must cover every candidate pair.
Assignment rssi_policy(const Instance& inst, const PairTable& received_powers);

struct FairnessReport {
  double index = 1.0;
  std::vector<double> per_ap_load;
  bool degenerate = false;  // all loads zero; index reported as 1
};

// Jain's index (sum Y)^2 / (N sum Y^2) over per-AP loads.
FairnessReport jain_index(std::span<const double> loads);
FairnessReport jain_index(const Instance& inst, const Assignment& a);

// max_i sum_{j : a(j) = i} beta_ij.
double objective_value(const Instance& inst, const Assignment& a);

}  // namespace assoc60
