#include "assoc60/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "assoc60/error.hpp"

namespace assoc60 {

double distance(const Point& a, const Point& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

// ---------------------------------------------------------------- Topology

Topology Topology::make(std::vector<Point> aps, std::vector<Point> clients,
                        double radius) {
  if (!(radius > 0.0)) throw DomainError("topology radius must be positive");
  if (aps.empty()) throw DomainError("topology needs at least one AP");
  Topology t;
  t.radius_ = radius;
  t.candidates_of_client_.resize(clients.size());
  for (ClientIndex j = 0; j < clients.size(); ++j) {
    for (ApIndex i = 0; i < aps.size(); ++i) {
      if (distance(aps[i], clients[j]) <= radius) {
        t.candidates_of_client_[j].push_back(i);
      }
    }
    if (t.candidates_of_client_[j].empty()) {
      throw InfeasibleClientError(
          j, "client " + std::to_string(j) + " is outside every cell");
    }
  }
  t.aps_ = std::move(aps);
  t.clients_ = std::move(clients);
  t.index_clients_of_ap(t.aps_.size());
  return t;
}

Topology Topology::from_candidates(
    std::size_t n_aps, std::vector<std::vector<ApIndex>> candidates_of_client,
    double radius) {
  if (n_aps == 0) throw DomainError("topology needs at least one AP");
  Topology t;
  t.radius_ = radius;
  for (ClientIndex j = 0; j < candidates_of_client.size(); ++j) {
    auto& c = candidates_of_client[j];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    if (c.empty()) {
      throw InfeasibleClientError(
          j, "client " + std::to_string(j) + " has no candidate AP");
    }
    if (c.back() >= n_aps) {
      throw DomainError("client " + std::to_string(j) +
                        " references AP index out of range");
    }
  }
  t.candidates_of_client_ = std::move(candidates_of_client);
  t.index_clients_of_ap(n_aps);
  return t;
}

void Topology::index_clients_of_ap(std::size_t n_aps) {
  clients_of_ap_.assign(n_aps, {});
  for (ClientIndex j = 0; j < candidates_of_client_.size(); ++j) {
    for (ApIndex i : candidates_of_client_[j]) clients_of_ap_[i].push_back(j);
  }
}

// ---------------------------------------------------------------- Instance

Instance Instance::assemble(std::size_t n_aps, std::vector<double> demands,
                            std::vector<std::vector<Link>> raw) {
  Instance inst;
  inst.clients_of_ap_.assign(n_aps, {});
  for (ClientIndex j = 0; j < raw.size(); ++j) {
    auto& links = raw[j];
    std::erase_if(links, [](const Link& l) { return l.beta > 1.0; });
    if (links.empty()) {
      throw InfeasibleClientError(
          j, "client " + std::to_string(j) +
                 " has no candidate AP with utilization <= 1");
    }
    std::sort(links.begin(), links.end(),
              [](const Link& a, const Link& b) { return a.ap < b.ap; });
    for (const Link& l : links) {
      inst.clients_of_ap_[l.ap].push_back(j);
      ++inst.num_pairs_;
    }
  }
  inst.demands_ = std::move(demands);
  inst.links_ = std::move(raw);
  return inst;
}

Instance Instance::build(const Topology& topo, std::span<const double> demands,
                         const PairTable& link_rates) {
  const std::size_t m = topo.num_clients();
  if (demands.size() != m) {
    throw DomainError("demand vector length does not match client count");
  }
  if (link_rates.num_clients() != m) {
    throw DomainError("link rate table does not match client count");
  }
  std::vector<std::vector<Link>> raw(m);
  for (ClientIndex j = 0; j < m; ++j) {
    if (!(demands[j] > 0.0) || !std::isfinite(demands[j])) {
      throw DomainError("demand of client " + std::to_string(j) +
                        " must be positive");
    }
    const auto cand = topo.candidates_of(j);
    const auto row = link_rates.row(j);
    if (row.size() != cand.size()) {
      throw DomainError("link rates of client " + std::to_string(j) +
                        " do not match its candidate set");
    }
    for (std::size_t k = 0; k < cand.size(); ++k) {
      if (row[k].ap != cand[k]) {
        throw DomainError("link rates of client " + std::to_string(j) +
                          " do not match its candidate set");
      }
      const double rate = row[k].value;
      if (!(rate > 0.0) || !std::isfinite(rate)) {
        throw DomainError("link rate (" + std::to_string(cand[k]) + ", " +
                          std::to_string(j) + ") must be positive");
      }
      raw[j].push_back(Link{cand[k], demands[j] / rate, rate});
    }
  }
  return assemble(topo.num_aps(),
                  std::vector<double>(demands.begin(), demands.end()),
                  std::move(raw));
}

Instance Instance::from_betas(std::size_t n_aps, std::span<const double> demands,
                              const PairTable& betas) {
  if (n_aps == 0) throw DomainError("instance needs at least one AP");
  const std::size_t m = betas.num_clients();
  if (demands.size() != m) {
    throw DomainError("demand vector length does not match client count");
  }
  std::vector<std::vector<Link>> raw(m);
  for (ClientIndex j = 0; j < m; ++j) {
    if (!(demands[j] > 0.0) || !std::isfinite(demands[j])) {
      throw DomainError("demand of client " + std::to_string(j) +
                        " must be positive");
    }
    for (const auto& e : betas.row(j)) {
      if (e.ap >= n_aps) {
        throw DomainError("client " + std::to_string(j) +
                          " references AP index out of range");
      }
      if (!(e.value > 0.0) || !std::isfinite(e.value)) {
        throw DomainError("utilization (" + std::to_string(e.ap) + ", " +
                          std::to_string(j) + ") must be positive");
      }
      raw[j].push_back(Link{e.ap, e.value, demands[j] / e.value});
    }
  }
  return assemble(n_aps, std::vector<double>(demands.begin(), demands.end()),
                  std::move(raw));
}

bool Instance::is_candidate(ApIndex i, ClientIndex j) const {
  for (const Link& l : links(j)) {
    if (l.ap == i) return true;
  }
  return false;
}

double Instance::beta(ApIndex i, ClientIndex j) const {
  for (const Link& l : links(j)) {
    if (l.ap == i) return l.beta;
  }
  throw DomainError("(" + std::to_string(i) + ", " + std::to_string(j) +
                    ") is not a candidate pair");
}

double Instance::max_beta() const {
  double m = 0.0;
  for (const auto& links : links_) {
    for (const Link& l : links) m = std::max(m, l.beta);
  }
  return m;
}

double Instance::min_beta_of(ClientIndex j) const {
  double m = std::numeric_limits<double>::infinity();
  for (const Link& l : links(j)) m = std::min(m, l.beta);
  return m;
}

double Instance::assignment_space_size(double cap) const {
  double size = 1.0;
  for (const auto& links : links_) {
    size *= static_cast<double>(links.size());
    if (size > cap) return cap;
  }
  return size;
}

Topology candidate_topology(const Instance& inst) {
  std::vector<std::vector<ApIndex>> cand(inst.num_clients());
  for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
    for (const Link& l : inst.links(j)) cand[j].push_back(l.ap);
  }
  return Topology::from_candidates(inst.num_aps(), std::move(cand));
}

PairTable rate_table(const Instance& inst) {
  PairTable t(inst.num_clients());
  for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
    for (const Link& l : inst.links(j)) t.set(l.ap, j, l.rate);
  }
  return t;
}

// -------------------------------------------------------------- Assignment

std::vector<double> ap_loads(const Instance& inst,
                             std::span<const ApIndex> ap_of_client) {
  if (ap_of_client.size() != inst.num_clients()) {
    throw DomainError("assignment length does not match client count");
  }
  std::vector<double> loads(inst.num_aps(), 0.0);
  for (ClientIndex j = 0; j < ap_of_client.size(); ++j) {
    const ApIndex i = ap_of_client[j];
    if (i >= inst.num_aps() || !inst.is_candidate(i, j)) {
      throw DomainError("client " + std::to_string(j) +
                        " assigned to non-candidate AP " + std::to_string(i));
    }
    loads[i] += inst.beta(i, j);
  }
  return loads;
}

Assignment make_assignment(const Instance& inst,
                           std::vector<ApIndex> ap_of_client) {
  const auto loads = ap_loads(inst, ap_of_client);
  const double obj =
      loads.empty() ? 0.0 : *std::max_element(loads.begin(), loads.end());
  return Assignment{std::move(ap_of_client), obj};
}

// ---------------------------------------------------------------- Fixtures

Instance example1_instance(std::size_t m, double beta_diag,
                           std::span<const double> off_diag) {
  if (m == 0) throw DomainError("example 1 needs m >= 1");
  if (!(beta_diag > 0.0 && beta_diag <= 1.0)) {
    throw DomainError("example 1 diagonal utilization must lie in (0, 1]");
  }
  PairTable betas(m);
  betas.set(0, 0, beta_diag);
  for (ClientIndex j = 1; j < m; ++j) {
    const double off = (j - 1 < off_diag.size()) ? off_diag[j - 1] : 1.0;
    if (!(off > 0.0 && off <= 1.0)) {
      throw DomainError("example 1 off-diagonal utilization must lie in (0, 1]");
    }
    betas.set(j - 1, j, off);
    betas.set(j, j, beta_diag);
  }
  const std::vector<double> demands(m, 1.0);
  return Instance::from_betas(m, demands, betas);
}

Instance example2_instance(std::size_t n, std::span<const double> type1_loads,
                           std::size_t m_per_ap, double beta2) {
  if (n == 0) throw DomainError("example 2 needs n >= 1");
  if (type1_loads.size() != 1 && type1_loads.size() != n) {
    throw DomainError("example 2 needs one type-1 load or one per AP");
  }
  if (!(beta2 > 0.0 && beta2 <= 1.0)) {
    throw DomainError("example 2 type-2 utilization must lie in (0, 1]");
  }
  struct Pinned {
    ApIndex ap;
    double beta;
  };
  std::vector<Pinned> pinned;
  for (ApIndex i = 0; i < n; ++i) {
    const double load = type1_loads.size() == 1 ? type1_loads[0] : type1_loads[i];
    if (!(load >= 0.0) || !std::isfinite(load)) {
      throw DomainError("example 2 type-1 load must be non-negative");
    }
    if (load == 0.0) continue;
    const auto count = static_cast<std::size_t>(std::ceil(load));
    for (std::size_t c = 0; c < count; ++c) {
      pinned.push_back({i, load / static_cast<double>(count)});
    }
  }
  const std::size_t m = pinned.size() + m_per_ap * n;
  PairTable betas(m);
  ClientIndex j = 0;
  for (const auto& p : pinned) betas.set(p.ap, j++, p.beta);
  for (; j < m; ++j) {
    for (ApIndex i = 0; i < n; ++i) betas.set(i, j, beta2);
  }
  const std::vector<double> demands(m, 1.0);
  return Instance::from_betas(n, demands, betas);
}

}  // namespace assoc60
