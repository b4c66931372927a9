#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace assoc60 {

using ApIndex = std::size_t;
using ClientIndex = std::size_t;

// Sparse table of per-(AP, client) values, stored per client and kept sorted
// by AP index. Used for link rates, received powers and similar link data.
class PairTable {
 public:
  struct Entry {
    ApIndex ap;
    double value;
  };

  PairTable() = default;
  explicit PairTable(std::size_t n_clients) : rows_(n_clients) {}

  std::size_t num_clients() const noexcept { return rows_.size(); }

  // Inserts or overwrites the value for (ap, client).
  void set(ApIndex ap, ClientIndex client, double value);
  std::optional<double> get(ApIndex ap, ClientIndex client) const;
  std::span<const Entry> row(ClientIndex client) const;
  std::size_t num_pairs() const noexcept;

 private:
  std::vector<std::vector<Entry>> rows_;
};

}  // namespace assoc60
