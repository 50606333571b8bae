#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "snc/bounds.hpp"
#include "snc/pathloss.hpp"
#include "snc/scenario.hpp"

namespace snc {

enum class RunMode { bounds, simulate, check };
enum class SweepVariable { none, theta_db, beta, hardcore, power_rule };

/// One sweep grid entry: numeric for theta_db and beta, one value per swept
/// class for hardcore ("2/1"), a rule name for power_rule.
struct SweepPoint {
  std::string label;
  std::vector<double> values;
  std::optional<PowerRule::Kind> rule;
};

struct CheckSettings {
  std::size_t n_patterns = 10;
  std::size_t random_centers = 1000;
  double grid_spacing = 0.0;  // 0: no grid centers
  double sigma_scale = 1.0;   // scales sigma of the checked params
  std::size_t step_weights = 10;
  double shotnoise_radius = kInfinity;
};

struct ExperimentConfig {
  RunMode mode = RunMode::bounds;
  double alpha = 4.0;
  NetworkScenario scenario;
  /// Thresholds are stored relative to this reference (dB).
  double theta_ref_db = 0.0;
  std::vector<double> theta_offset_db;  // per class
  std::size_t n_trials = 200;
  double guard_tolerance = 1e-6;
  bool guard_explicit = false;
  AellMethod method = AellMethod::closed_form_2f1;
  TildeRegulation tilde = TildeRegulation::unit_mark;
  double envelope_radius = 0.0;  // 0: window radius
  std::vector<double> gamma_grid{0.8};
  bool write_trials = true;  // simulate: per-link trials.csv

  SweepVariable sweep_variable = SweepVariable::none;
  std::vector<SweepPoint> grid;
  std::vector<std::size_t> sweep_classes;  // 0-based; empty means all

  CheckSettings check;

  /// Raw text the config was parsed from, hashed into CSV headers.
  std::string source_text;
  std::vector<std::string> warnings;

  PathLossModel model() const { return PathLossModel::bounded_power_law(alpha); }
  /// Scenario at one grid point (the base scenario if there is no sweep).
  NetworkScenario scenario_at(std::size_t grid_index) const;
  double theta_db_at(std::size_t grid_index, std::size_t class_index) const;
  std::size_t grid_size() const { return grid.empty() ? 1 : grid.size(); }
  std::string grid_label(std::size_t grid_index) const;
};

/// Parses the line-oriented "key = value" format ('#' starts a comment).
/// Throws ConfigError naming the offending key or line.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Guard width so that interference from beyond the window stays below
/// `tolerance` of `bound_scale` for a power-law tail: (bound_scale *
/// tolerance)^(-1/(alpha-2)). Clamped to half the radius, with a warning.
double default_guard(double bound_scale, double tolerance, double alpha, double radius,
                     std::string* warning = nullptr);

std::string to_string(RunMode mode);
std::string to_string(SweepVariable v);

}  // namespace snc
