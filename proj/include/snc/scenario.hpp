#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "snc/geometry.hpp"
#include "snc/point_pattern.hpp"

namespace snc {

/// Transmit-power rule of a link class.
struct PowerRule {
  enum class Kind { constant, beta_control, linear };
  Kind kind = Kind::constant;
  /// P for constant, beta for the two threshold-driven rules.
  double parameter = 1.0;

  static PowerRule constant(double P) { return {Kind::constant, P}; }
  /// P = ln(1 + beta theta).
  static PowerRule beta_control(double beta) { return {Kind::beta_control, beta}; }
  /// P = beta theta.
  static PowerRule linear(double beta) { return {Kind::linear, beta}; }

  double power(double theta) const;
  std::string name() const;
};

/// P = ln(1 + beta theta); throws for non-positive inputs.
double beta_power(double theta, double beta);

struct ClassSpec {
  double theta = 1.0;      // linear SINR threshold
  double hardcore_H = 1.0;  // minimum same-class transmitter separation
  PowerRule power_rule{};
  /// Lattice mode only: nearest-neighbour spacing. The default 2 H gives
  /// every node a disjoint guard disc of radius H, the packing for which
  /// the hardcore regulation constants hold.
  std::optional<double> lattice_spacing;

  double power() const { return power_rule.power(theta); }
  double effective_lattice_spacing() const { return lattice_spacing.value_or(2.0 * hardcore_H); }
};

enum class Generator { matern, lattice };

struct NetworkScenario {
  std::vector<ClassSpec> classes;
  double r0 = 1.0;
  double noise_W = 0.0;
  SimulationWindow window{{0.0, 0.0}, 100.0, 0.0};
  double base_intensity = 0.3;  // parent PPP intensity (matern mode)
  std::uint64_t seed = 1;
  Generator generator = Generator::matern;
  /// Receiver direction in lattice mode, radians.
  double rx_orientation = 0.0;
  /// When false, equal thresholds across classes are accepted.
  bool require_distinct_thresholds = true;

  void validate() const;
  std::vector<double> class_powers() const;
};

struct BipolarLink {
  MarkedPoint transmitter;
  std::size_t tx_index = 0;  // position of the transmitter in its pattern
  Point2 receiver{};
  double link_distance = 0.0;
};

struct ScenarioRealization {
  MarkedPointPattern pattern;
  std::vector<BipolarLink> links;  // one per transmitter, same order
};

/// Per-class independent transmitter patterns, unioned with class labels,
/// each transmitter paired with a receiver at distance r0.
ScenarioRealization build_scenario_pattern(const NetworkScenario& scenario);

/// Same, with the per-trial seed derived from (scenario.seed, trial_id).
ScenarioRealization build_scenario_pattern(const NetworkScenario& scenario, std::uint64_t trial_id);

/// CSV columns class_id,x,y,power,rx_x,rx_y; one row per link.
void write_realization_csv(std::ostream& os, const ScenarioRealization& realization, bool header = true);

/// dB helpers: theta_dB = 10 log10(theta).
double db_to_linear(double db);
double linear_to_db(double linear);

}  // namespace snc
