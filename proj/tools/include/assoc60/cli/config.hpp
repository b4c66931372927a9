#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "assoc60/sim.hpp"

namespace assoc60::cli {

// Flat experiment configuration as read from disk. Keys carry their units
// (bandwidth_hz, noise_dbm_per_mhz, ...). Decibel quantities are converted to
// linear scale only in to_experiment().
struct CliConfig {
  // Every accepted key with its effective value, in a fixed key order. This
  // is also the byte string the config hash is computed from.
  nlohmann::ordered_json values;
  std::vector<std::string> warnings;

  ExperimentConfig to_experiment() const;

  std::optional<SweepParameter> sweep_parameter() const;
  std::vector<double> sweep_values() const;
  double clients_per_ap() const;
};

// Keys understood by the config loader, in canonical order.
const std::vector<std::string>& accepted_keys();

CliConfig default_config();

// Merges a JSON document over the defaults. Unknown keys produce a warning
// listing the accepted keys. Throws ParseError naming the offending key.
CliConfig parse_config(std::string_view text);

// Command-line overrides; unset fields leave the config untouched.
struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iters;
  std::optional<double> step_scale;
  std::optional<std::size_t> jobs;
  bool exact = false;
};

void apply_overrides(CliConfig& cfg, const Overrides& o);

// 16 hex digits identifying (command, effective config).
std::string config_hash(std::string_view command, const nlohmann::ordered_json& canonical);

}  // namespace assoc60::cli
