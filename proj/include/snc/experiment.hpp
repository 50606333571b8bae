#pragma once

#include <string>
#include <vector>

#include "snc/config.hpp"

namespace snc {

struct ExperimentOutcome {
  std::vector<std::string> files;     // written paths, in write order
  std::vector<std::string> messages;  // human-readable notes for stderr
  /// Every evaluated link met its bounds (simulate) or every ball check
  /// passed (check). Always true for bounds.
  bool all_compliant = true;
};

/// Runs one subcommand over a parsed config and writes its CSV files into
/// out_dir (created if missing). `bounds` may run on a simulate config;
/// other mismatches between the subcommand and the config mode are
/// configuration errors. Output is independent of `threads`.
ExperimentOutcome run_experiment(const ExperimentConfig& cfg, RunMode command, const std::string& out_dir,
                                 unsigned threads);

/// "# snc-toolkit <version> schema=<name>/1 config_hash=<hash> seed=<seed> ..."
std::string csv_header_comment(const ExperimentConfig& cfg, const std::string& schema);

}  // namespace snc
