#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>

#include "assoc60/sim.hpp"

namespace assoc60 {

// Shortest decimal string that round-trips the double.
std::string format_double(double v);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t v);

// Per-slot rows. Empty cells for metrics that were not computed.
void write_slots_csv(std::ostream& out, std::span<const SlotResult> slots);
// k,P_k,J_k for the averaged convergence curves.
void write_curves_csv(std::ostream& out, const Aggregate& agg);
void write_sweep_csv(std::ostream& out, std::string_view parameter,
                     std::span<const SweepRow> rows);

std::string aggregate_to_json(const Aggregate& agg, int indent = 2);

}  // namespace assoc60
