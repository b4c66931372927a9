#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "assoc60/cli/config.hpp"

namespace assoc60::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitParse = 2;

// Written next to the outputs of every run as <command>-<hash>.manifest.json.
struct RunManifest {
  std::string command;
  std::string config_path;
  std::filesystem::path output_dir;
  std::string config_hash;
  std::vector<std::string> files;  // relative to output_dir
};

void write_manifest(const RunManifest& m);

// Checks every *.manifest.json in dir: each listed file must exist and embed
// the manifest's hash. Returns one message per problem found.
std::vector<std::string> find_stale_outputs(const std::filesystem::path& dir);

struct SolveOptions {
  std::string instance_path;
  std::filesystem::path out_dir;
  std::size_t iters = 1000;
  double step_scale = 1.0;
  bool trace = false;
  bool exact = false;
};

struct ExperimentOptions {
  std::string config_path;  // empty: built-in defaults
  std::filesystem::path out_dir;
  Overrides overrides;
};

struct VerifyOptions {
  std::filesystem::path out_dir;
  std::string fixtures_dir;  // empty: built-in fixtures only
  std::uint64_t seed = 1;
  std::size_t iters = 2000;
  double step_scale = 1.0;
};

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentOptions& o, std::ostream& out, std::ostream& err);
int cmd_sweep(const ExperimentOptions& o, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err);

// Parses argv (argv[0] is the program name) and dispatches.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace assoc60::cli
