#include "snc/scenario.hpp"

#include <cmath>
#include <numbers>
#include <ostream>

#include "snc/csv.hpp"
#include "snc/error.hpp"
#include "snc/rng.hpp"

namespace snc {

double beta_power(double theta, double beta) {
  if (!(theta > 0.0) || !(beta > 0.0)) throw ParameterError("beta_power: theta and beta must be positive");
  return std::log1p(beta * theta);
}

double PowerRule::power(double theta) const {
  switch (kind) {
    case Kind::constant:
      return parameter;
    case Kind::beta_control:
      return beta_power(theta, parameter);
    case Kind::linear:
      if (!(theta > 0.0) || !(parameter > 0.0))
        throw ParameterError("linear power rule: theta and beta must be positive");
      return parameter * theta;
  }
  return parameter;
}

std::string PowerRule::name() const {
  switch (kind) {
    case Kind::constant:
      return "constant";
    case Kind::beta_control:
      return "beta_control";
    case Kind::linear:
      return "linear";
  }
  return "?";
}

void NetworkScenario::validate() const {
  if (classes.empty()) throw ParameterError("scenario needs at least one link class");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const auto& c = classes[i];
    const auto tag = "class " + std::to_string(i);
    if (!(c.theta > 0.0) || !std::isfinite(c.theta)) throw ParameterError(tag + ": theta must be positive");
    if (!(c.hardcore_H > 0.0) || !std::isfinite(c.hardcore_H))
      throw ParameterError(tag + ": hardcore distance must be positive");
    if (c.lattice_spacing && !(*c.lattice_spacing > 0.0))
      throw ParameterError(tag + ": lattice spacing must be positive");
    if (c.power_rule.kind == PowerRule::Kind::constant && !(c.power_rule.parameter >= 0.0))
      throw ParameterError(tag + ": constant power must be >= 0");
    if (c.power_rule.kind != PowerRule::Kind::constant && !(c.power_rule.parameter > 0.0))
      throw ParameterError(tag + ": beta must be positive");
    if (i > 0 && require_distinct_thresholds && !(c.theta < classes[i - 1].theta))
      throw ParameterError("thresholds must be strictly decreasing across classes");
  }
  if (!(r0 > 0.0) || !std::isfinite(r0)) throw ParameterError("link distance r0 must be positive");
  if (!(noise_W >= 0.0)) throw ParameterError("noise power must be >= 0");
  if (!(base_intensity > 0.0)) throw ParameterError("base intensity must be positive");
  window.validate();
}

std::vector<double> NetworkScenario::class_powers() const {
  std::vector<double> p;
  p.reserve(classes.size());
  for (const auto& c : classes) p.push_back(c.power());
  return p;
}

ScenarioRealization build_scenario_pattern(const NetworkScenario& scenario) {
  scenario.validate();
  ScenarioRealization out;
  out.pattern.window = scenario.window;
  for (std::size_t i = 0; i < scenario.classes.size(); ++i) {
    const auto& spec = scenario.classes[i];
    const auto cid = static_cast<std::uint64_t>(i);
    MarkedPointPattern part;
    if (scenario.generator == Generator::matern) {
      const auto parent = sample_ppp(scenario.base_intensity, scenario.window,
                                     derive_seed(scenario.seed, cid, 0, Stream::parent));
      part = matern2_thin(parent, spec.hardcore_H, derive_seed(scenario.seed, cid, 0, Stream::timestamps));
    } else {
      part = triangular_lattice(spec.effective_lattice_spacing(), scenario.window,
                                derive_seed(scenario.seed, cid, 0, Stream::parent));
    }
    const double P = spec.power();
    Rng orient(derive_seed(scenario.seed, cid, 0, Stream::orientation));
    for (auto& p : part.points) {
      p.power = P;
      p.class_id = static_cast<int>(i);
      const double phi = scenario.generator == Generator::matern ? 2.0 * std::numbers::pi * uniform01(orient)
                                                                 : scenario.rx_orientation;
      BipolarLink link;
      link.transmitter = p;
      link.tx_index = out.pattern.points.size();
      link.receiver = {p.location.x + scenario.r0 * std::cos(phi), p.location.y + scenario.r0 * std::sin(phi)};
      link.link_distance = scenario.r0;
      out.links.push_back(link);
      out.pattern.points.push_back(p);
    }
  }
  return out;
}

ScenarioRealization build_scenario_pattern(const NetworkScenario& scenario, std::uint64_t trial_id) {
  NetworkScenario s = scenario;
  s.seed = derive_seed(scenario.seed, trial_id, 0, Stream::trial);
  return build_scenario_pattern(s);
}

void write_realization_csv(std::ostream& os, const ScenarioRealization& realization, bool header) {
  if (header) os << "class_id,x,y,power,rx_x,rx_y\n";
  for (const auto& l : realization.links)
    os << l.transmitter.class_id << ',' << csv::num(l.transmitter.location.x) << ','
       << csv::num(l.transmitter.location.y) << ',' << csv::num(l.transmitter.power) << ','
       << csv::num(l.receiver.x) << ',' << csv::num(l.receiver.y) << '\n';
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

}  // namespace snc
