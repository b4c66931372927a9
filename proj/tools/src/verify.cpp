#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "assoc60/cli/commands.hpp"
#include "assoc60/dual_solver.hpp"
#include "assoc60/error.hpp"
#include "assoc60/exact.hpp"
#include "assoc60/instance_json.hpp"
#include "assoc60/report_io.hpp"
#include "assoc60/rng.hpp"

namespace assoc60::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr std::size_t kRandomInstances = 30;

struct Case {
  std::string name;
  std::optional<Instance> inst;
  std::optional<double> expected_p_star;
  std::string load_error;
  std::string source_digest;  // for the run hash
};

std::vector<Case> builtin_fixtures() {
  std::vector<Case> cases;
  const std::vector<double> b03{0.3};
  const std::vector<double> b0{0.0};
  const std::vector<double> off09(3, 0.9);
  cases.push_back({"example1_m3", example1_instance(3, 0.5), 0.5, "", "builtin"});
  cases.push_back({"example1_m8", example1_instance(8, 0.5), 0.5, "", "builtin"});
  cases.push_back({"example1_m4_offdiag", example1_instance(4, 0.7, off09), 0.7, "", "builtin"});
  cases.push_back({"example2_n2", example2_instance(2, b03, 2, 0.1), 0.5, "", "builtin"});
  cases.push_back({"example2_n3", example2_instance(3, b0, 1, 0.2), 0.2, "", "builtin"});
  return cases;
}

std::vector<Case> file_fixtures(const std::string& dir) {
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<Case> cases;
  for (const auto& f : files) {
    Case c;
    c.name = f.filename().string();
    std::ifstream in(f, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    const std::string text = s.str();
    c.source_digest = hex64(fnv1a64(text));
    try {
      const auto doc = nlohmann::json::parse(text);
      if (doc.is_object() && doc.contains("expected_p_star")) {
        if (!doc.at("expected_p_star").is_number()) {
          throw ParseError("expected_p_star", "field 'expected_p_star' must be a number");
        }
        c.expected_p_star = doc.at("expected_p_star").get<double>();
      }
      c.inst.emplace(instance_from_json(text));
    } catch (const nlohmann::json::exception& e) {
      c.load_error = std::string("malformed JSON: ") + e.what();
    } catch (const std::exception& e) {
      c.load_error = e.what();
    }
    cases.push_back(std::move(c));
  }
  return cases;
}

Instance random_case(std::uint64_t seed, std::uint64_t k) {
  auto rng = make_stream(seed, k, StreamPurpose::kInstance);
  const std::size_t n = 2 + uniform_index(rng, 3);
  const std::size_t m = 4 + uniform_index(rng, 7);
  PairTable betas(m);
  for (ClientIndex j = 0; j < m; ++j) {
    bool any = false;
    for (ApIndex i = 0; i < n; ++i) {
      if (uniform01(rng) < 0.7) {
        betas.set(i, j, uniform_open_closed(rng));
        any = true;
      }
    }
    if (!any) betas.set(uniform_index(rng, n), j, uniform_open_closed(rng));
  }
  return Instance::from_betas(n, std::vector<double>(m, 1.0), betas);
}

struct Row {
  std::string name;
  double p_star = std::nan("");
  double p_relax = std::nan("");
  double g_best = std::nan("");
  bool weak = false;
  bool prop2 = false;
  bool theorem1 = false;
  bool expected = true;
  std::string note;

  bool pass() const { return weak && prop2 && theorem1 && expected && note.empty(); }
};

Row check(const Case& c, const VerifyOptions& o) {
  Row row;
  row.name = c.name;
  if (!c.inst) {
    row.note = c.load_error;
    return row;
  }
  const Instance& inst = *c.inst;
  const auto milp = solve_milp_exact(inst);
  const auto relax = solve_lp_relaxation(inst);
  row.p_star = milp.optimal_value;
  row.p_relax = relax.optimal_value;

  bool weak = true;
  const auto daa = run_daa(inst, {.max_iters = o.iters, .step_scale = o.step_scale},
                           [&](const IterationView& v) {
                             weak = weak && v.g_lambda <= row.p_star + 1e-12 &&
                                    v.g_best <= v.p_best + 1e-12 &&
                                    v.p_best >= row.p_star - 1e-12;
                           });
  row.g_best = daa.dual_value;
  row.weak = weak;
  // Dual optimum attained at the LP multipliers, and never exceeded by DAA.
  row.prop2 = std::abs(dual_value(inst, relax.prices) - row.p_relax) <= 1e-9 &&
              relax.residuals.complementarity <= 1e-8 && row.g_best <= row.p_relax + 1e-9;
  const double gap = row.p_star - row.p_relax;
  row.theorem1 = gap >= -1e-9 && gap <= duality_gap_bound(inst);
  if (c.expected_p_star) row.expected = std::abs(row.p_star - *c.expected_p_star) <= 1e-9;
  return row;
}

std::string cell(double v) { return std::isnan(v) ? std::string("-") : format_double(v); }

}  // namespace

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  try {
    if (const auto stale = find_stale_outputs(o.out_dir); !stale.empty()) {
      err << "error: refusing stale output directory '" << o.out_dir.string() << "':\n";
      for (const auto& s : stale) err << "  " << s << "\n";
      return kExitFailure;
    }

    std::vector<Case> cases = builtin_fixtures();
    if (!o.fixtures_dir.empty()) {
      if (!fs::is_directory(o.fixtures_dir)) {
        err << "error: fixtures directory '" << o.fixtures_dir << "' not found\n";
        return kExitParse;
      }
      auto more = file_fixtures(o.fixtures_dir);
      std::move(more.begin(), more.end(), std::back_inserter(cases));
    }
    const std::size_t n_fixtures = cases.size();
    for (std::uint64_t k = 0; k < kRandomInstances; ++k) {
      cases.push_back({"random_" + std::to_string(k), random_case(o.seed, k), std::nullopt, "",
                       "random"});
    }

    ordered_json canonical;
    canonical["seed"] = o.seed;
    canonical["iters"] = o.iters;
    canonical["step_scale"] = o.step_scale;
    canonical["random_instances"] = kRandomInstances;
    for (std::size_t c = 0; c < n_fixtures; ++c) {
      canonical["fixtures"].push_back({cases[c].name, cases[c].source_digest});
    }
    RunManifest manifest{"verify", o.fixtures_dir, o.out_dir, config_hash("verify", canonical), {}};
    fs::create_directories(o.out_dir);
    const std::string prefix = "verify-" + manifest.config_hash;

    std::ostringstream report;
    report << "# config_hash=" << manifest.config_hash << "\n"
           << "case,p_star,p_relax,g_best,weak_duality,lp_dual_equivalence,gap_certificate,"
              "expected_value,result,note\n";
    out << "case                      p_star          p_relax         g_best          weak prop2 "
           "thm1 expect result\n";
    int failures = 0;
    for (const auto& c : cases) {
      Row row;
      try {
        row = check(c, o);
      } catch (const std::exception& e) {
        row.name = c.name;
        row.note = e.what();
      }
      auto yn = [](bool b) { return b ? "ok" : "FAIL"; };
      char line[256];
      std::snprintf(line, sizeof line, "%-25s %-15s %-15s %-15s %-4s %-5s %-4s %-6s %s",
                    row.name.c_str(), cell(row.p_star).c_str(), cell(row.p_relax).c_str(),
                    cell(row.g_best).c_str(), yn(row.weak), yn(row.prop2), yn(row.theorem1),
                    yn(row.expected), row.pass() ? "PASS" : "FAIL");
      out << line << "\n";
      if (!row.note.empty()) out << "    " << row.name << ": " << row.note << "\n";
      std::string note = row.note;
      std::replace(note.begin(), note.end(), ',', ';');
      std::replace(note.begin(), note.end(), '\n', ' ');
      report << row.name << ',' << cell(row.p_star) << ',' << cell(row.p_relax) << ','
             << cell(row.g_best) << ',' << row.weak << ',' << row.prop2 << ',' << row.theorem1
             << ',' << row.expected << ',' << (row.pass() ? "pass" : "fail") << ',' << note
             << "\n";
      if (!row.pass()) {
        ++failures;
        if (c.inst) {
          const std::string file = prefix + "-failure-" + c.name + ".json";
          ordered_json j;
          j["config_hash"] = manifest.config_hash;
          j["case"] = c.name;
          j["instance"] = ordered_json::parse(instance_to_json(*c.inst, -1));
          std::ofstream(o.out_dir / file, std::ios::binary) << j.dump(2) << "\n";
          manifest.files.push_back(file);
        }
      }
    }
    const std::string report_file = prefix + "-report.csv";
    std::ofstream(o.out_dir / report_file, std::ios::binary) << report.str();
    manifest.files.push_back(report_file);
    write_manifest(manifest);

    out << (failures == 0 ? "verify: all " : "verify: ") << cases.size() - failures << "/"
        << cases.size() << " cases passed\n";
    return failures == 0 ? kExitOk : kExitFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace assoc60::cli
