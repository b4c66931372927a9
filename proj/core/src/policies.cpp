#include "assoc60/policies.hpp"

#include <algorithm>

#include "assoc60/error.hpp"
#include "assoc60/rng.hpp"

namespace assoc60 {

Assignment random_policy(const Instance& inst, std::uint64_t seed) {
  auto rng = make_stream(seed, 0, StreamPurpose::kRandomPolicy);
  std::vector<ApIndex> aps(inst.num_clients());
  for (ClientIndex j = 0; j < aps.size(); ++j) {
    const auto links = inst.links(j);
    aps[j] = links[uniform_index(rng, links.size())].ap;
  }
  return make_assignment(inst, std::move(aps));
}

Assignment rssi_policy(const Instance& inst, const PairTable& received_powers) {
  if (received_powers.num_clients() != inst.num_clients()) {
    throw DomainError("received power table does not match client count");
  }
  std::vector<ApIndex> aps(inst.num_clients());
  for (ClientIndex j = 0; j < aps.size(); ++j) {
    bool have = false;
    double strongest = 0.0;
    for (const Link& l : inst.links(j)) {
      const auto p = received_powers.get(l.ap, j);
      if (!p) {
        throw DomainError("missing received power for pair (" +
                          std::to_string(l.ap) + ", " + std::to_string(j) + ")");
      }
      if (!have || *p > strongest) {
        strongest = *p;
        aps[j] = l.ap;
        have = true;
      }
    }
  }
  return make_assignment(inst, std::move(aps));
}

FairnessReport jain_index(std::span<const double> loads) {
  FairnessReport r;
  r.per_ap_load.assign(loads.begin(), loads.end());
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double y : loads) {
    sum += y;
    sum_sq += y * y;
  }
  if (loads.empty() || sum_sq == 0.0) {
    r.index = 1.0;
    r.degenerate = true;
    return r;
  }
  r.index = sum * sum / (static_cast<double>(loads.size()) * sum_sq);
  return r;
}

FairnessReport jain_index(const Instance& inst, const Assignment& a) {
  return jain_index(ap_loads(inst, a.ap_of_client));
}

double objective_value(const Instance& inst, const Assignment& a) {
  const auto loads = ap_loads(inst, a.ap_of_client);
  return loads.empty() ? 0.0 : *std::max_element(loads.begin(), loads.end());
}

}  // namespace assoc60
