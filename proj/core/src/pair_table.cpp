#include "assoc60/pair_table.hpp"

#include <algorithm>

#include "assoc60/error.hpp"

namespace assoc60 {

void PairTable::set(ApIndex ap, ClientIndex client, double value) {
  if (client >= rows_.size()) throw DomainError("PairTable: client out of range");
  auto& row = rows_[client];
  auto it = std::lower_bound(row.begin(), row.end(), ap,
                             [](const Entry& e, ApIndex a) { return e.ap < a; });
  if (it != row.end() && it->ap == ap) {
    it->value = value;
  } else {
    row.insert(it, Entry{ap, value});
  }
}

std::optional<double> PairTable::get(ApIndex ap, ClientIndex client) const {
  if (client >= rows_.size()) return std::nullopt;
  const auto& row = rows_[client];
  auto it = std::lower_bound(row.begin(), row.end(), ap,
                             [](const Entry& e, ApIndex a) { return e.ap < a; });
  if (it == row.end() || it->ap != ap) return std::nullopt;
  return it->value;
}

std::span<const PairTable::Entry> PairTable::row(ClientIndex client) const {
  return rows_.at(client);
}

std::size_t PairTable::num_pairs() const noexcept {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.size();
  return n;
}

}  // namespace assoc60
