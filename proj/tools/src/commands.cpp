#include "assoc60/cli/commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "assoc60/dual_solver.hpp"
#include "assoc60/error.hpp"
#include "assoc60/exact.hpp"
#include "assoc60/instance_json.hpp"
#include "assoc60/report_io.hpp"
#include "assoc60/sim.hpp"

namespace assoc60::cli {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("", "cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

class OutputSet {
 public:
  OutputSet(RunManifest manifest) : m_(std::move(manifest)) {
    fs::create_directories(m_.output_dir);
  }

  std::string name(std::string_view suffix) const {
    return m_.command + "-" + m_.config_hash + std::string(suffix);
  }

  // CSV outputs start with a "# config_hash=<hash>" comment line.
  void write_csv(std::string_view suffix, const std::string& body) {
    write(suffix, "# config_hash=" + m_.config_hash + "\n" + body);
  }

  void write(std::string_view suffix, const std::string& content) {
    const std::string file = name(suffix);
    std::ofstream out(m_.output_dir / file, std::ios::binary);
    if (!out) throw Error("cannot write '" + (m_.output_dir / file).string() + "'");
    out << content;
    m_.files.push_back(file);
  }

  fs::path path(std::string_view suffix) const { return m_.output_dir / name(suffix); }

  void finish() { write_manifest(m_); }

  const std::string& hash() const { return m_.config_hash; }

 private:
  RunManifest m_;
};

// Runs fn, mapping exceptions onto exit codes.
template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}

CliConfig load_config(const ExperimentOptions& o, std::ostream& err) {
  CliConfig cfg = o.config_path.empty() ? default_config() : parse_config(read_file(o.config_path));
  for (const auto& w : cfg.warnings) err << "warning: " << w << "\n";
  apply_overrides(cfg, o.overrides);
  return cfg;
}

// The worker count never changes results, so it is left out of the hash.
ordered_json hashed_view(const CliConfig& cfg) {
  ordered_json v = cfg.values;
  v.erase("jobs");
  return v;
}

void print_aggregate(std::ostream& out, const Aggregate& a) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("n/a");
  };
  out << "slots: " << a.slots_total << " (feasible " << a.slots_feasible << ", infeasible "
      << a.slots_infeasible << ", exact " << a.slots_exact << ")\n"
      << "P_daa   " << format_double(a.p_daa) << "\n"
      << "D_star  " << format_double(a.d_star) << "\n"
      << "P_star  " << opt(a.p_exact) << "\n"
      << "P_relax " << opt(a.p_relax) << "\n"
      << "P_rand  " << format_double(a.p_rand) << "\n"
      << "P_rssi  " << format_double(a.p_rssi) << "\n"
      << "J_daa   " << format_double(a.jain_daa) << "\n"
      << "J_star  " << opt(a.jain_exact) << "\n"
      << "J_rand  " << format_double(a.jain_rand) << "\n"
      << "J_rssi  " << format_double(a.jain_rssi) << "\n"
      << "Ave-RDG " << opt(a.ave_rdg) << "\n"
      << "Ave-DG  " << opt(a.ave_dg) << "\n";
}

}  // namespace

void write_manifest(const RunManifest& m) {
  ordered_json j;
  j["tool"] = "assoc60";
  j["version"] = kToolVersion;
  j["command"] = m.command;
  j["config_path"] = m.config_path;
  j["config_hash"] = m.config_hash;
  j["files"] = m.files;
  const fs::path p = m.output_dir / (m.command + "-" + m.config_hash + ".manifest.json");
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write '" + p.string() + "'");
  out << j.dump(2) << "\n";
}

std::vector<std::string> find_stale_outputs(const fs::path& dir) {
  std::vector<std::string> problems;
  if (!fs::exists(dir)) return problems;
  std::vector<fs::path> manifests;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (name.size() > 14 && name.ends_with(".manifest.json")) manifests.push_back(e.path());
  }
  std::sort(manifests.begin(), manifests.end());
  for (const auto& mp : manifests) {
    nlohmann::json m;
    try {
      m = nlohmann::json::parse(read_file(mp.string()));
      const auto hash = m.at("config_hash").get<std::string>();
      if (mp.filename().string().find(hash) == std::string::npos) {
        problems.push_back(mp.filename().string() + ": name does not match hash " + hash);
      }
      for (const auto& f : m.at("files")) {
        const fs::path fp = dir / f.get<std::string>();
        if (!fs::exists(fp)) {
          problems.push_back(fp.filename().string() + ": listed in " +
                             mp.filename().string() + " but missing");
          continue;
        }
        const std::string content = read_file(fp.string());
        if (content.find("config_hash") == std::string::npos ||
            content.find(hash) == std::string::npos) {
          problems.push_back(fp.filename().string() + ": does not embed config hash " + hash);
        }
      }
    } catch (const std::exception& e) {
      problems.push_back(mp.filename().string() + ": unreadable manifest (" + e.what() + ")");
    }
  }
  return problems;
}

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.iters == 0) throw ParseError("iters", "--iters must be positive");
    if (!(o.step_scale > 0.0)) throw ParseError("step_scale", "--step-scale must be positive");
    const Instance inst = instance_from_json(read_file(o.instance_path));

    ordered_json canonical;
    canonical["instance"] = ordered_json::parse(instance_to_json(inst, -1));
    canonical["iters"] = o.iters;
    canonical["step_scale"] = o.step_scale;
    canonical["trace"] = o.trace;
    canonical["exact"] = o.exact;
    OutputSet outputs({"solve", o.instance_path, o.out_dir, config_hash("solve", canonical), {}});

    const auto report = run_daa(inst, {.max_iters = o.iters, .step_scale = o.step_scale,
                                       .trace = o.trace});
    ordered_json j;
    j["config_hash"] = outputs.hash();
    j["instance"] = o.instance_path;
    j["n_aps"] = inst.num_aps();
    j["n_clients"] = inst.num_clients();
    j["n_pairs"] = inst.num_pairs();
    j["iterations"] = report.iterations_run;
    j["step_scale"] = o.step_scale;
    j["p_best"] = report.primal_value;
    j["g_best"] = report.dual_value;
    j["gap_certificate"] = report.gap_certificate;
    j["best_primal_iteration"] = report.best_primal_iteration;
    j["duality_gap_bound"] = duality_gap_bound(inst);
    j["convergence_bound"] = convergence_bound(inst, o.step_scale, report.iterations_run);
    j["assignment"] = report.assignment.ap_of_client;
    j["prices"] = report.final_prices;
    if (o.exact) {
      const auto relax = solve_lp_relaxation(inst);
      const auto milp = solve_milp_exact(inst);
      j["p_star"] = milp.optimal_value;
      j["p_relax"] = relax.optimal_value;
      j["exact_nodes"] = milp.nodes_explored;
      j["exact_assignment"] = milp.assignment.ap_of_client;
    }
    outputs.write(".json", j.dump(2) + "\n");
    if (o.trace) {
      std::ostringstream csv;
      write_trace_csv(csv, report.trace);
      outputs.write_csv("-trace.csv", csv.str());
    }
    outputs.finish();

    out << "p_best " << format_double(report.primal_value) << "\n"
        << "g_best " << format_double(report.dual_value) << "\n"
        << "gap    " << format_double(report.gap_certificate) << "\n";
    if (o.exact) {
      out << "p_star  " << format_double(j["p_star"].get<double>()) << "\n"
          << "p_relax " << format_double(j["p_relax"].get<double>()) << "\n";
    }
    out << "wrote " << outputs.path(".json").string() << "\n";
    return kExitOk;
  });
}

int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CliConfig cfg = load_config(o, err);
    const ExperimentConfig ec = cfg.to_experiment();
    ec.validate();
    OutputSet outputs({"experiment", o.config_path, o.out_dir,
                       config_hash("experiment", hashed_view(cfg)), {}});
    const auto result = run_experiment(ec);

    std::ostringstream slots;
    write_slots_csv(slots, result.slots);
    outputs.write_csv("-slots.csv", slots.str());
    ordered_json summary;
    summary["config_hash"] = outputs.hash();
    summary["config"] = cfg.values;
    summary["aggregate"] = ordered_json::parse(aggregate_to_json(result.aggregate));
    outputs.write("-aggregate.json", summary.dump(2) + "\n");
    if (ec.record_curves) {
      std::ostringstream curves;
      write_curves_csv(curves, result.aggregate);
      outputs.write_csv("-curves.csv", curves.str());
    }
    outputs.finish();

    print_aggregate(out, result.aggregate);
    out << "wrote " << outputs.path("-slots.csv").string() << "\n";
    return kExitOk;
  });
}

int cmd_sweep(const ExperimentOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CliConfig cfg = load_config(o, err);
    const ExperimentConfig ec = cfg.to_experiment();
    ec.validate();
    const auto param = cfg.sweep_parameter();
    const auto values = cfg.sweep_values();
    if (values.empty()) {
      throw ParseError("sweep_values", "config key 'sweep_values' must list at least one value");
    }
    OutputSet outputs({"sweep", o.config_path, o.out_dir,
                       config_hash("sweep", hashed_view(cfg)), {}});
    const auto rows = sweep(ec, *param, values, cfg.clients_per_ap());

    std::ostringstream csv;
    write_sweep_csv(csv, to_string(*param), rows);
    outputs.write_csv(".csv", csv.str());
    outputs.finish();

    int failed = 0;
    for (const auto& r : rows) {
      out << to_string(*param) << "=" << format_double(r.value) << ": ";
      if (r.aggregate) {
        out << "P_daa " << format_double(r.aggregate->p_daa) << ", P_rssi "
            << format_double(r.aggregate->p_rssi) << ", J_daa "
            << format_double(r.aggregate->jain_daa) << "\n";
      } else {
        out << "error: " << r.error << "\n";
        ++failed;
      }
    }
    out << "wrote " << outputs.path(".csv").string() << "\n";
    return failed == 0 ? kExitOk : kExitFailure;
  });
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Client association for 60 GHz access networks", "assoc60"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  SolveOptions solve_opts;
  std::string solve_out = "assoc60-out";
  auto* solve = app.add_subcommand("solve", "Run DAA on an instance JSON file");
  solve->add_option("instance", solve_opts.instance_path, "Instance JSON file")->required();
  solve->add_option("--out", solve_out, "Output directory");
  solve->add_option("--iters", solve_opts.iters, "DAA iterations K");
  solve->add_option("--step-scale", solve_opts.step_scale, "a in the step a/k");
  solve->add_flag("--trace", solve_opts.trace, "Write the per-iteration trace CSV");
  solve->add_flag("--exact", solve_opts.exact, "Also run the MILP and LP oracles");

  ExperimentOptions exp_opts;
  std::string exp_out = "assoc60-out";
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> iters;
  std::optional<double> step;
  std::optional<std::size_t> jobs;
  bool exact = false;
  auto add_experiment_flags = [&](CLI::App* sub) {
    sub->add_option("--config", exp_opts.config_path, "Flat JSON config file");
    sub->add_option("--out", exp_out, "Output directory");
    sub->add_option("--seed", seed, "Master seed");
    sub->add_option("--iters", iters, "DAA iterations K");
    sub->add_option("--step-scale", step, "a in the step a/k");
    sub->add_option("--jobs", jobs, "Worker threads");
    sub->add_flag("--exact", exact, "Force the exact oracles on every slot");
  };
  auto* experiment = app.add_subcommand("experiment", "Monte Carlo experiment");
  add_experiment_flags(experiment);
  auto* sweep_cmd = app.add_subcommand("sweep", "One experiment per sweep value");
  add_experiment_flags(sweep_cmd);

  VerifyOptions verify_opts;
  std::string verify_out = "assoc60-out";
  auto* verify = app.add_subcommand("verify", "Check oracles and bounds on fixtures");
  verify->add_option("--out", verify_out, "Output directory for failing instances");
  verify->add_option("--fixtures", verify_opts.fixtures_dir, "Directory of fixture JSON files");
  verify->add_option("--seed", verify_opts.seed, "Seed for the random instances");
  verify->add_option("--iters", verify_opts.iters, "DAA iterations per instance");
  verify->add_option("--step-scale", verify_opts.step_scale, "a in the step a/k");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::Success& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitParse;
  }

  if (*solve) {
    solve_opts.out_dir = solve_out;
    return cmd_solve(solve_opts, out, err);
  }
  exp_opts.overrides = {seed, iters, step, jobs, exact};
  if (*experiment) {
    exp_opts.out_dir = exp_out;
    return cmd_experiment(exp_opts, out, err);
  }
  if (*sweep_cmd) {
    exp_opts.out_dir = exp_out;
    return cmd_sweep(exp_opts, out, err);
  }
  verify_opts.out_dir = verify_out;
  return cmd_verify(verify_opts, out, err);
}

}  // namespace assoc60::cli
