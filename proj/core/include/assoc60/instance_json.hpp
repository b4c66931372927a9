#pragma once

#include <string>
#include <string_view>

#include "assoc60/instance.hpp"

namespace assoc60 {

// Document layout:
//   {
//     "n_aps": 2, "n_clients": 3,
//     "demands": [Q_0, ...],                       (optional, default 1)
//     "pairs": [{"i": 0, "j": 0, "beta": 0.5, "rate": 2.0}, ...]
//   }
// Indices are zero-based; "rate" is optional and derived as Q_j / beta when
// absent. Pairs with beta > 1 are pruned exactly as Instance::build does.
std::string instance_to_json(const Instance& inst, int indent = 2);

// Throws ParseError naming the offending field.
Instance instance_from_json(std::string_view text);

}  // namespace assoc60
