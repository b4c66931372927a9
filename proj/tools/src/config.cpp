#include "assoc60/cli/config.hpp"

#include <cmath>
#include <limits>

#include "assoc60/channel.hpp"
#include "assoc60/error.hpp"
#include "assoc60/report_io.hpp"

namespace assoc60::cli {

namespace {

using nlohmann::ordered_json;

enum class Kind { kCount, kSeed, kNumber, kOptionalNumber, kBool, kString, kNumberList };

struct KeySpec {
  const char* name;
  Kind kind;
};

const std::vector<KeySpec>& key_specs() {
  static const std::vector<KeySpec> specs = {
      {"n_aps", Kind::kCount},
      {"n_clients", Kind::kCount},
      {"slots", Kind::kCount},
      {"daa_iters", Kind::kCount},
      {"step_scale", Kind::kNumber},
      {"seed", Kind::kSeed},
      {"jobs", Kind::kCount},
      {"target_snr_db", Kind::kNumber},
      {"ap_spacing_factor", Kind::kNumber},
      {"demand_max_bps", Kind::kNumber},
      {"wavelength_m", Kind::kNumber},
      {"noise_dbm_per_mhz", Kind::kNumber},
      {"interference_dbm_per_mhz", Kind::kOptionalNumber},
      {"bandwidth_hz", Kind::kNumber},
      {"ref_distance_m", Kind::kNumber},
      {"path_loss_exponent", Kind::kNumber},
      {"tx_power_mw", Kind::kNumber},
      {"tx_gain_db", Kind::kNumber},
      {"rx_gain_db", Kind::kNumber},
      {"redraw_topology", Kind::kBool},
      {"exact", Kind::kBool},
      {"force_exact", Kind::kBool},
      {"exact_node_budget", Kind::kCount},
      {"record_curves", Kind::kBool},
      {"sweep_parameter", Kind::kString},
      {"sweep_values", Kind::kNumberList},
      {"clients_per_ap", Kind::kNumber},
  };
  return specs;
}

void check_kind(const std::string& key, Kind kind, const nlohmann::json& v) {
  auto fail = [&](const std::string& what) {
    throw ParseError(key, "config key '" + key + "' must be " + what);
  };
  switch (kind) {
    case Kind::kCount:
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0) fail("a positive integer");
      break;
    case Kind::kSeed:
      if (!v.is_number_unsigned()) fail("a non-negative integer");
      break;
    case Kind::kNumber:
      if (!v.is_number() || !std::isfinite(v.get<double>())) fail("a finite number");
      break;
    case Kind::kOptionalNumber:
      if (!v.is_null() && (!v.is_number() || !std::isfinite(v.get<double>()))) {
        fail("a finite number or null");
      }
      break;
    case Kind::kBool:
      if (!v.is_boolean()) fail("true or false");
      break;
    case Kind::kString:
      if (!v.is_string()) fail("a string");
      break;
    case Kind::kNumberList:
      if (!v.is_array()) fail("an array of numbers");
      for (const auto& e : v) {
        if (!e.is_number()) fail("an array of numbers");
      }
      break;
  }
}

double number(const ordered_json& values, const char* key) {
  return values.at(key).get<double>();
}

std::size_t count(const ordered_json& values, const char* key) {
  return values.at(key).get<std::size_t>();
}

}  // namespace

const std::vector<std::string>& accepted_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> k;
    for (const auto& s : key_specs()) k.emplace_back(s.name);
    return k;
  }();
  return keys;
}

CliConfig default_config() {
  const ExperimentConfig d;
  CliConfig c;
  auto& v = c.values;
  v["n_aps"] = d.n_aps;
  v["n_clients"] = d.n_clients;
  v["slots"] = d.slots;
  v["daa_iters"] = d.daa_iters;
  v["step_scale"] = d.step_scale;
  v["seed"] = d.seed;
  v["jobs"] = d.jobs;
  v["target_snr_db"] = d.target_snr_db;
  v["ap_spacing_factor"] = d.ap_spacing_factor;
  v["demand_max_bps"] = d.demand_max;
  v["wavelength_m"] = d.channel.wavelength;
  v["noise_dbm_per_mhz"] = -134.0;
  v["interference_dbm_per_mhz"] = nullptr;
  v["bandwidth_hz"] = d.channel.bandwidth;
  v["ref_distance_m"] = d.channel.ref_distance;
  v["path_loss_exponent"] = d.channel.path_loss_exp;
  v["tx_power_mw"] = d.channel.tx_power;
  v["tx_gain_db"] = 0.0;
  v["rx_gain_db"] = 0.0;
  v["redraw_topology"] = d.redraw_topology;
  v["exact"] = d.exact;
  v["force_exact"] = d.force_exact;
  v["exact_node_budget"] = d.exact_budget;
  v["record_curves"] = d.record_curves;
  v["sweep_parameter"] = "n_clients";
  v["sweep_values"] = ordered_json::array();
  v["clients_per_ap"] = 0.0;
  return c;
}

CliConfig parse_config(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("", std::string("malformed config JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "config must be a JSON object");

  CliConfig c = default_config();
  const auto& specs = key_specs();
  for (const auto& [key, value] : doc.items()) {
    const auto it = std::find_if(specs.begin(), specs.end(),
                                 [&](const KeySpec& s) { return key == s.name; });
    if (it == specs.end()) {
      std::string msg = "unknown config key '" + key + "' ignored; accepted keys:";
      for (const auto& k : accepted_keys()) msg += " " + k;
      c.warnings.push_back(std::move(msg));
      continue;
    }
    check_kind(key, it->kind, value);
    c.values[key] = value;
  }
  if (!parse_sweep_parameter(c.values.at("sweep_parameter").get<std::string>())) {
    throw ParseError("sweep_parameter",
                     "config key 'sweep_parameter' must be one of n_clients, n_aps, daa_iters");
  }
  return c;
}

void apply_overrides(CliConfig& cfg, const Overrides& o) {
  if (o.seed) cfg.values["seed"] = *o.seed;
  if (o.iters) cfg.values["daa_iters"] = *o.iters;
  if (o.step_scale) cfg.values["step_scale"] = *o.step_scale;
  if (o.jobs) cfg.values["jobs"] = *o.jobs;
  if (o.exact) {
    cfg.values["exact"] = true;
    cfg.values["force_exact"] = true;
  }
}

ExperimentConfig CliConfig::to_experiment() const {
  const auto& v = values;
  ExperimentConfig e;
  e.n_aps = count(v, "n_aps");
  e.n_clients = count(v, "n_clients");
  e.slots = count(v, "slots");
  e.daa_iters = count(v, "daa_iters");
  e.step_scale = number(v, "step_scale");
  e.seed = v.at("seed").get<std::uint64_t>();
  e.jobs = count(v, "jobs");
  e.target_snr_db = number(v, "target_snr_db");
  e.ap_spacing_factor = number(v, "ap_spacing_factor");
  e.demand_max = number(v, "demand_max_bps");
  e.channel.wavelength = number(v, "wavelength_m");
  e.channel.noise_density = dbm_per_mhz_to_mw_per_hz(number(v, "noise_dbm_per_mhz"));
  const auto& interference = v.at("interference_dbm_per_mhz");
  e.channel.interference_density =
      interference.is_null() ? 0.0 : dbm_per_mhz_to_mw_per_hz(interference.get<double>());
  e.channel.bandwidth = number(v, "bandwidth_hz");
  e.channel.ref_distance = number(v, "ref_distance_m");
  e.channel.path_loss_exp = number(v, "path_loss_exponent");
  e.channel.tx_power = number(v, "tx_power_mw");
  e.channel.tx_gain = db_to_linear(number(v, "tx_gain_db"));
  e.channel.rx_gain = db_to_linear(number(v, "rx_gain_db"));
  e.redraw_topology = v.at("redraw_topology").get<bool>();
  e.exact = v.at("exact").get<bool>();
  e.force_exact = v.at("force_exact").get<bool>();
  e.exact_budget = count(v, "exact_node_budget");
  e.record_curves = v.at("record_curves").get<bool>();
  return e;
}

std::optional<SweepParameter> CliConfig::sweep_parameter() const {
  return parse_sweep_parameter(values.at("sweep_parameter").get<std::string>());
}

std::vector<double> CliConfig::sweep_values() const {
  return values.at("sweep_values").get<std::vector<double>>();
}

double CliConfig::clients_per_ap() const { return number(values, "clients_per_ap"); }

std::string config_hash(std::string_view command, const nlohmann::ordered_json& canonical) {
  std::string bytes(command);
  bytes += '\n';
  bytes += canonical.dump();
  return hex64(fnv1a64(bytes));
}

}  // namespace assoc60::cli
