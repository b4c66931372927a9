#include "assoc60/instance_json.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "assoc60/error.hpp"
#include "json.hpp"

namespace assoc60 {

using nlohmann::json;

std::string instance_to_json(const Instance& inst, int indent) {
  nlohmann::ordered_json doc;
  doc["n_aps"] = inst.num_aps();
  doc["n_clients"] = inst.num_clients();
  doc["demands"] = std::vector<double>(inst.demands().begin(), inst.demands().end());
  auto pairs = nlohmann::ordered_json::array();
  for (ClientIndex j = 0; j < inst.num_clients(); ++j) {
    for (const Link& l : inst.links(j)) {
      pairs.push_back({{"i", l.ap}, {"j", j}, {"beta", l.beta}, {"rate", l.rate}});
    }
  }
  doc["pairs"] = std::move(pairs);
  return doc.dump(indent);
}

namespace {

std::size_t get_count(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + key, "missing field '" + where + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    throw ParseError(where + key,
                     "field '" + where + key + "' must be a non-negative integer");
  }
  return v.get<std::size_t>();
}

double get_number(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ParseError(where + key, "missing field '" + where + key + "'");
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ParseError(where + key, "field '" + where + key + "' must be a number");
  }
  return v.get<double>();
}

}  // namespace

Instance instance_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError("", std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("", "instance document must be an object");

  const std::size_t n_aps = get_count(doc, "n_aps", "");
  const std::size_t m = get_count(doc, "n_clients", "");
  if (n_aps == 0) throw ParseError("n_aps", "field 'n_aps' must be positive");

  std::vector<double> demands(m, 1.0);
  if (doc.contains("demands")) {
    const json& d = doc.at("demands");
    if (!d.is_array() || d.size() != m) {
      throw ParseError("demands", "field 'demands' must be an array of n_clients numbers");
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (!d[j].is_number() || !(d[j].get<double>() > 0.0)) {
        throw ParseError("demands[" + std::to_string(j) + "]",
                         "field 'demands[" + std::to_string(j) + "]' must be positive");
      }
      demands[j] = d[j].get<double>();
    }
  }

  if (!doc.contains("pairs") || !doc.at("pairs").is_array()) {
    throw ParseError("pairs", "field 'pairs' must be an array");
  }
  PairTable betas(m);
  PairTable rates(m);
  bool any_rate = false;
  bool all_rate = true;
  const json& pairs = doc.at("pairs");
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    const std::string where = "pairs[" + std::to_string(k) + "].";
    const json& p = pairs[k];
    if (!p.is_object()) throw ParseError("pairs[" + std::to_string(k) + "]", "pair must be an object");
    const std::size_t i = get_count(p, "i", where);
    const std::size_t j = get_count(p, "j", where);
    const double beta = get_number(p, "beta", where);
    if (i >= n_aps) throw ParseError(where + "i", "field '" + where + "i' out of range");
    if (j >= m) throw ParseError(where + "j", "field '" + where + "j' out of range");
    if (!(beta > 0.0)) throw ParseError(where + "beta", "field '" + where + "beta' must be positive");
    if (betas.get(i, j)) throw ParseError(where + "i", "duplicate pair (" + std::to_string(i) + ", " + std::to_string(j) + ")");
    betas.set(i, j, beta);
    if (p.contains("rate")) {
      const double rate = get_number(p, "rate", where);
      if (!(rate > 0.0)) throw ParseError(where + "rate", "field '" + where + "rate' must be positive");
      const double implied = demands[j] / rate;
      if (std::abs(implied - beta) > 1e-9 * std::max(1.0, beta)) {
        throw ParseError(where + "beta", "field '" + where +
                                             "beta' disagrees with demand / rate");
      }
      rates.set(i, j, rate);
      any_rate = true;
    } else {
      all_rate = false;
    }
  }
  if (any_rate && !all_rate) {
    throw ParseError("pairs", "either every pair or no pair must carry 'rate'");
  }

  try {
    if (any_rate) {
      std::vector<std::vector<ApIndex>> cand(m);
      for (ClientIndex j = 0; j < m; ++j) {
        for (const auto& e : rates.row(j)) cand[j].push_back(e.ap);
      }
      // Empty candidate sets are reported as InfeasibleClientError below.
      for (ClientIndex j = 0; j < m; ++j) {
        if (cand[j].empty()) {
          throw ParseError("pairs", "client " + std::to_string(j) + " has no pair");
        }
      }
      const Topology topo = Topology::from_candidates(n_aps, std::move(cand));
      return Instance::build(topo, demands, rates);
    }
    for (ClientIndex j = 0; j < m; ++j) {
      if (betas.row(j).empty()) {
        throw ParseError("pairs", "client " + std::to_string(j) + " has no pair");
      }
    }
    return Instance::from_betas(n_aps, demands, betas);
  } catch (const InfeasibleClientError& e) {
    throw ParseError("pairs", e.what());
  }
}

}  // namespace assoc60
