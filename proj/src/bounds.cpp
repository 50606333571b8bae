#include "snc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "snc/error.hpp"
#include "snc/hypergeometric.hpp"
#include "snc/weight.hpp"

namespace snc {

AellResult a_ell(const RegulationParams& params, const PathLossModel& model, const QuadratureConfig& cfg) {
  params.validate();
  AellResult r;
  r.method = cfg.tail_policy == TailPolicy::analytic_for_power_law ? AellMethod::closed_form_2f1
                                                                   : AellMethod::quadrature;
  r.sigma_term = params.sigma * model.value_at_zero();
  r.rho_term = params.rho == 0.0 ? 0.0 : params.rho * integral_ell(model, kInfinity, Moment::unit, cfg);
  r.nu_term = params.nu == 0.0 ? 0.0 : 2.0 * params.nu * integral_ell(model, kInfinity, Moment::radial, cfg);
  r.value = r.sigma_term + r.rho_term + r.nu_term;
  return r;
}

AellResult a_ell_tilde(double theta_i, double P_i, double P_j, double r0, const PathLossModel& model,
                       const RegulationParams& params_j, AellMethod method, const QuadratureConfig& cfg) {
  params_j.validate();
  if (!(theta_i >= 0.0) || !(P_j >= 0.0) || !(P_i > 0.0))
    throw ParameterError("a_ell_tilde: need theta_i >= 0, P_j >= 0, P_i > 0");
  if (!(r0 > 0.0)) throw ParameterError("a_ell_tilde: r0 must be positive");
  const double ell_r0 = model(r0);
  const auto w = shotnoise_weight_ij(theta_i, P_i, P_j, ell_r0, model);
  const double c = theta_i * P_j / (P_i * ell_r0);

  AellResult r;
  r.method = method;
  if (c == 0.0) return r;
  if (method == AellMethod::closed_form_2f1) {
    if (model.kind() != PathLossModel::Kind::bounded_power_law)
      throw ParameterError("a_ell_tilde: closed form needs the bounded power-law model");
    const double alpha = model.alpha();
    if (!(alpha > 2.0))
      throw DivergenceError("a_ell_tilde: 2 nu \\int r w(r) dr diverges for alpha <= 2");
    r.sigma_term = params_j.sigma * std::log1p(c);
    if (params_j.rho != 0.0)
      r.rho_term = params_j.rho * alpha * c / (alpha - 1.0) * gauss_2f1_a1(1.0 - 1.0 / alpha, -c, cfg);
    if (params_j.nu != 0.0)
      r.nu_term = params_j.nu * alpha * c / (alpha - 2.0) * gauss_2f1_a1(1.0 - 2.0 / alpha, -c, cfg);
  } else {
    QuadratureConfig q = cfg;
    q.tail_policy = TailPolicy::adaptive_truncation;
    r.sigma_term = params_j.sigma * w.value_at_zero();
    if (params_j.rho != 0.0) r.rho_term = params_j.rho * weight_integral(w, kInfinity, Moment::unit, q);
    if (params_j.nu != 0.0) r.nu_term = 2.0 * params_j.nu * weight_integral(w, kInfinity, Moment::radial, q);
  }
  r.value = r.sigma_term + r.rho_term + r.nu_term;
  return r;
}

std::vector<RegulationParams> class_regulation_params(const NetworkScenario& scenario) {
  std::vector<RegulationParams> out;
  for (const auto& c : scenario.classes) out.push_back(mhcpp_regulation_params(c.power(), c.hardcore_H));
  return out;
}

std::vector<NoFadingBound> nofading_bounds(const NetworkScenario& scenario, const PathLossModel& model,
                                           const QuadratureConfig& cfg) {
  scenario.validate();
  const auto params = class_regulation_params(scenario);
  double budget = 0.0;
  for (const auto& p : params) budget += a_ell(p, model, cfg).value;
  const double ell_r0 = model(scenario.r0);
  std::vector<NoFadingBound> out;
  for (const auto& c : scenario.classes) {
    const double signal = c.power() * ell_r0;
    NoFadingBound b;
    b.interference_upper = budget - signal;
    if (b.interference_upper <= 0.0) {
      b.interference_upper = std::max(0.0, b.interference_upper);
      b.sinr_lower = signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
    } else {
      b.sinr_lower = signal / b.interference_upper;
    }
    out.push_back(b);
  }
  return out;
}

double rayleigh_ps_lower_singleclass(double P, double theta, double W, double r0, const PathLossModel& model,
                                     const RegulationParams& params, const QuadratureConfig& cfg) {
  if (!(P > 0.0) || !(theta > 0.0)) throw ParameterError("rayleigh bound: P and theta must be positive");
  if (!(W >= 0.0)) throw ParameterError("rayleigh bound: noise must be >= 0");
  const double A = a_ell(params, model, cfg).value;
  const double ell_r0 = model(r0);
  if (!(ell_r0 > 0.0)) throw ConsistencyError("degenerate link: l(r0) = 0");
  return std::min(1.0, std::exp(-theta * (W + A) / (P * ell_r0) + theta));
}

PowerEnvelope total_power_envelope(const NetworkScenario& scenario) {
  scenario.validate();
  const auto params = class_regulation_params(scenario);
  const auto sum = superpose_params(params);
  return {sum.sigma, sum.rho, sum.nu};
}

BoundReport rayleigh_ps_lower_multiclass(const NetworkScenario& scenario, const PathLossModel& model,
                                         AellMethod method, TildeRegulation tilde,
                                         const QuadratureConfig& cfg) {
  scenario.validate();
  if (method == AellMethod::closed_form_2f1 && model.kind() != PathLossModel::Kind::bounded_power_law)
    method = AellMethod::quadrature;
  const auto params = class_regulation_params(scenario);
  const auto powers = scenario.class_powers();
  std::vector<RegulationParams> tilde_params;
  for (std::size_t j = 0; j < scenario.classes.size(); ++j)
    tilde_params.push_back(tilde == TildeRegulation::unit_mark
                               ? mhcpp_regulation_params(1.0, scenario.classes[j].hardcore_H)
                               : params[j]);
  const auto superposed = superpose_params(params);
  const auto nofading = nofading_bounds(scenario, model, cfg);
  const double ell_r0 = model(scenario.r0);
  const double a_super = a_ell(superposed, model, cfg).value;

  BoundReport rep;
  rep.total_power_envelope = {superposed.sigma, superposed.rho, superposed.nu};
  rep.ps_min = 1.0;
  for (std::size_t i = 0; i < scenario.classes.size(); ++i) {
    const double theta = scenario.classes[i].theta;
    ClassBound cb;
    cb.class_id = static_cast<int>(i);
    cb.power = powers[i];
    cb.interference_upper_nofading = nofading[i].interference_upper;
    cb.sinr_lower_nofading = nofading[i].sinr_lower;
    if (!(powers[i] > 0.0)) {
      rep.diagnostics.push_back("class " + std::to_string(i) + " has zero power; bounds set to 0");
      cb.exponent = std::numeric_limits<double>::infinity();
    } else {
      double expo = theta * scenario.noise_W / (powers[i] * ell_r0);
      for (std::size_t j = 0; j < scenario.classes.size(); ++j)
        expo += a_ell_tilde(theta, powers[i], powers[j], scenario.r0, model, tilde_params[j], method, cfg).value;
      cb.exponent = expo;
      cb.ps_lower = std::exp(-expo);
      const double simple_expo = theta * (scenario.noise_W + a_super) / (powers[i] * ell_r0) - theta;
      cb.ps_lower_simplified = std::exp(-simple_expo);
      if (cb.ps_lower_simplified > 1.0) {
        rep.diagnostics.push_back("class " + std::to_string(i) + ": simplified bound clipped to 1");
        cb.ps_lower_simplified = 1.0;
      }
      if (cb.ps_lower_simplified > cb.ps_lower)
        rep.diagnostics.push_back("class " + std::to_string(i) +
                                  ": simplified bound exceeds the per-class bound at this threshold");
    }
    rep.ps_min = std::min(rep.ps_min, cb.ps_lower);
    rep.per_class.push_back(cb);
  }
  return rep;
}

}  // namespace snc
