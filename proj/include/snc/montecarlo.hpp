#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "snc/bounds.hpp"
#include "snc/pathloss.hpp"
#include "snc/scenario.hpp"

namespace snc {

struct TrialRecord {
  std::uint64_t trial_id = 0;
  std::uint64_t link_id = 0;  // transmitter index within the trial's pattern
  int class_id = 0;
  double ps_conditional = 0.0;  // exact Rayleigh success probability given the realization
  double sinr_nofading = 0.0;
  double interference_nofading = 0.0;
  double bound_ps = 0.0;
  double bound_sinr = 0.0;
  bool compliant = false;
};

/// sum over all transmitters except the serving one of P_x l(|x - rx|).
/// Throws ConsistencyError if the link's transmitter is not in the pattern.
double interference_nofading(const MarkedPointPattern& pattern, const BipolarLink& link,
                             const PathLossModel& model);

/// Exact P(SINR > theta | pattern) under i.i.d. unit-mean exponential
/// fading, evaluated in log space:
///   exp(-theta W / (P l(r0)) - sum ln(1 + theta P_x l(d_x) / (P l(r0)))).
double conditional_ps_rayleigh(const MarkedPointPattern& pattern, const BipolarLink& link, double theta,
                               double W, const PathLossModel& model);

struct TrialOptions {
  unsigned threads = 1;
  /// Relative tolerance of the compliance comparison.
  double tolerance = 1e-9;
  AellMethod method = AellMethod::closed_form_2f1;
  TildeRegulation tilde = TildeRegulation::unit_mark;
};

struct TrialRun {
  std::vector<TrialRecord> records;
  std::vector<std::uint64_t> empty_trials;  // trials without an evaluable link
  BoundReport bounds;
};

/// Monte Carlo over n_trials independent realizations; only links whose
/// receiver lies in the guard-trimmed disc are evaluated. Records are in
/// (trial_id, link_id) order regardless of the thread count.
TrialRun run_trials(const NetworkScenario& scenario, const PathLossModel& model, std::size_t n_trials,
                    const TrialOptions& opts = {});

/// Runs several scenarios that differ only in thresholds and power rules
/// over the same realizations (geometry is generated once per trial).
std::vector<TrialRun> run_trials_sweep(std::span<const NetworkScenario> variants, const PathLossModel& model,
                                       std::size_t n_trials, const TrialOptions& opts = {});

struct MetaDistribution {
  double theta = 0.0;
  std::vector<double> gamma_grid;
  std::vector<double> ccdf;  // fraction of links with ps_conditional > gamma
  double ps_min_empirical = 0.0;
  std::size_t links = 0;
};

MetaDistribution meta_distribution(std::span<const TrialRecord> records, std::optional<int> class_filter,
                                   std::span<const double> gamma_grid, double theta = 0.0);

/// CSV: trial_id,link_id,class_id,ps_conditional,bound_ps,sinr_nofading,bound_sinr,compliant
void write_trial_records_csv(std::ostream& os, std::span<const TrialRecord> records, bool header,
                             std::optional<std::size_t> grid_index = std::nullopt);

}  // namespace snc
