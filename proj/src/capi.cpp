#include "snc/snc.h"

#include <cmath>
#include <fstream>
#include <new>
#include <string>

#include "snc/bounds.hpp"
#include "snc/config.hpp"
#include "snc/csv.hpp"
#include "snc/error.hpp"
#include "snc/experiment.hpp"
#include "snc/hypergeometric.hpp"
#include "snc/montecarlo.hpp"
#include "snc/regulation.hpp"

struct snc_scenario {
  snc::NetworkScenario scenario;
  double alpha = 4.0;
};

struct snc_pattern {
  snc::ScenarioRealization realization;
};

struct snc_bound_report {
  snc::BoundReport report;
};

struct snc_trial_set {
  std::vector<snc::TrialRecord> records;
};

namespace {

thread_local std::string g_last_error;

snc_status fail(snc_status status, const std::string& msg) {
  g_last_error = msg;
  return status;
}

snc_status status_of(const snc::Error& e) {
  switch (e.kind()) {
    case snc::ErrorKind::parameter:
      return SNC_ERR_PARAMETER;
    case snc::ErrorKind::domain:
      return SNC_ERR_DOMAIN;
    case snc::ErrorKind::divergence:
      return SNC_ERR_DIVERGENCE;
    case snc::ErrorKind::consistency:
      return SNC_ERR_CONSISTENCY;
    case snc::ErrorKind::config:
      return SNC_ERR_CONFIG;
    case snc::ErrorKind::io:
      return SNC_ERR_IO;
  }
  return SNC_ERR_INTERNAL;
}

template <class F>
snc_status guarded(F&& f) {
  try {
    g_last_error.clear();
    f();
    return SNC_OK;
  } catch (const snc::Error& e) {
    return fail(status_of(e), e.what());
  } catch (const std::bad_alloc&) {
    return fail(SNC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SNC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SNC_ERR_INTERNAL, "unknown error");
  }
}

#define SNC_REQUIRE(ptr)                                                \
  do {                                                                  \
    if (!(ptr)) return fail(SNC_ERR_PARAMETER, #ptr " must not be NULL"); \
  } while (0)

snc::RegulationParams to_params(const snc_regulation& r) { return {r.sigma, r.rho, r.nu}; }

}  // namespace

extern "C" {

const char* snc_version(void) { return snc::csv::kToolkitVersion; }

const char* snc_last_error(void) { return g_last_error.c_str(); }

const char* snc_status_name(snc_status status) {
  switch (status) {
    case SNC_OK:
      return "ok";
    case SNC_ERR_PARAMETER:
      return "parameter error";
    case SNC_ERR_DOMAIN:
      return "domain error";
    case SNC_ERR_DIVERGENCE:
      return "divergence error";
    case SNC_ERR_CONSISTENCY:
      return "consistency error";
    case SNC_ERR_CONFIG:
      return "config error";
    case SNC_ERR_IO:
      return "i/o error";
    case SNC_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

int snc_exit_code(snc_status status) {
  switch (status) {
    case SNC_OK:
      return 0;
    case SNC_ERR_CONFIG:
    case SNC_ERR_PARAMETER:
      return 2;
    case SNC_ERR_DOMAIN:
    case SNC_ERR_DIVERGENCE:
      return 3;
    case SNC_ERR_IO:
      return 4;
    default:
      return 1;
  }
}

snc_status snc_pathloss_eval(double alpha, double r, double* out) {
  SNC_REQUIRE(out);
  return guarded([&] { *out = snc::eval_pathloss(snc::PathLossModel::bounded_power_law(alpha), r); });
}

snc_status snc_integral_ell(double alpha, double R, int radial, double* out) {
  SNC_REQUIRE(out);
  return guarded([&] {
    *out = snc::integral_ell(snc::PathLossModel::bounded_power_law(alpha), R,
                             radial ? snc::Moment::radial : snc::Moment::unit);
  });
}

snc_status snc_gauss_2f1_a1(double a, double z, double* out) {
  SNC_REQUIRE(out);
  return guarded([&] { *out = snc::gauss_2f1_a1(a, z); });
}

snc_status snc_beta_power(double theta, double beta, double* out) {
  SNC_REQUIRE(out);
  return guarded([&] { *out = snc::beta_power(theta, beta); });
}

snc_status snc_mhcpp_params(double power, double hardcore, snc_regulation* out) {
  SNC_REQUIRE(out);
  return guarded([&] {
    const auto p = snc::mhcpp_regulation_params(power, hardcore);
    *out = {p.sigma, p.rho, p.nu};
  });
}

snc_status snc_a_ell(const snc_regulation* params, double alpha, double* out) {
  SNC_REQUIRE(params);
  SNC_REQUIRE(out);
  return guarded([&] { *out = snc::a_ell(to_params(*params), snc::PathLossModel::bounded_power_law(alpha)).value; });
}

snc_status snc_a_ell_tilde(double theta_i, double power_i, double power_j, double r0, double alpha,
                           const snc_regulation* params_j, snc_aell_method method, double* out) {
  SNC_REQUIRE(params_j);
  SNC_REQUIRE(out);
  return guarded([&] {
    const auto m = method == SNC_AELL_QUADRATURE ? snc::AellMethod::quadrature : snc::AellMethod::closed_form_2f1;
    *out = snc::a_ell_tilde(theta_i, power_i, power_j, r0, snc::PathLossModel::bounded_power_law(alpha),
                            to_params(*params_j), m)
               .value;
  });
}

snc_status snc_scenario_create(snc_scenario** out) {
  SNC_REQUIRE(out);
  return guarded([&] { *out = new snc_scenario(); });
}

void snc_scenario_destroy(snc_scenario* scenario) { delete scenario; }

snc_status snc_scenario_add_class(snc_scenario* scenario, double theta, double hardcore, snc_power_rule rule,
                                  double rule_parameter) {
  SNC_REQUIRE(scenario);
  return guarded([&] {
    snc::ClassSpec c;
    c.theta = theta;
    c.hardcore_H = hardcore;
    switch (rule) {
      case SNC_POWER_CONSTANT:
        c.power_rule = snc::PowerRule::constant(rule_parameter);
        break;
      case SNC_POWER_BETA_CONTROL:
        c.power_rule = snc::PowerRule::beta_control(rule_parameter);
        break;
      case SNC_POWER_LINEAR:
        c.power_rule = snc::PowerRule::linear(rule_parameter);
        break;
      default:
        throw snc::ParameterError("unknown power rule");
    }
    auto next = scenario->scenario;
    next.classes.push_back(c);
    next.validate();
    scenario->scenario = std::move(next);
  });
}

snc_status snc_scenario_set_link(snc_scenario* scenario, double r0, double noise_w) {
  SNC_REQUIRE(scenario);
  return guarded([&] {
    if (!(r0 > 0.0)) throw snc::ParameterError("r0 must be positive");
    if (!(noise_w >= 0.0)) throw snc::ParameterError("noise power must be >= 0");
    scenario->scenario.r0 = r0;
    scenario->scenario.noise_W = noise_w;
  });
}

snc_status snc_scenario_set_alpha(snc_scenario* scenario, double alpha) {
  SNC_REQUIRE(scenario);
  return guarded([&] {
    (void)snc::PathLossModel::bounded_power_law(alpha);
    scenario->alpha = alpha;
  });
}

snc_status snc_scenario_set_window(snc_scenario* scenario, double radius, double guard) {
  SNC_REQUIRE(scenario);
  return guarded([&] {
    snc::SimulationWindow w{{0.0, 0.0}, radius, guard};
    w.validate();
    scenario->scenario.window = w;
  });
}

snc_status snc_scenario_set_generator(snc_scenario* scenario, snc_generator generator, double base_intensity,
                                      double rx_orientation_rad) {
  SNC_REQUIRE(scenario);
  return guarded([&] {
    if (!(base_intensity > 0.0)) throw snc::ParameterError("base intensity must be positive");
    if (!std::isfinite(rx_orientation_rad)) throw snc::ParameterError("orientation must be finite");
    scenario->scenario.generator = generator == SNC_GENERATOR_LATTICE ? snc::Generator::lattice
                                                                      : snc::Generator::matern;
    scenario->scenario.base_intensity = base_intensity;
    scenario->scenario.rx_orientation = rx_orientation_rad;
  });
}

snc_status snc_scenario_set_seed(snc_scenario* scenario, uint64_t seed) {
  SNC_REQUIRE(scenario);
  scenario->scenario.seed = seed;
  return SNC_OK;
}

snc_status snc_scenario_class_count(const snc_scenario* scenario, size_t* out) {
  SNC_REQUIRE(scenario);
  SNC_REQUIRE(out);
  *out = scenario->scenario.classes.size();
  return SNC_OK;
}

snc_status snc_bounds_compute(const snc_scenario* scenario, snc_tilde_regulation tilde, snc_bound_report** out) {
  SNC_REQUIRE(scenario);
  SNC_REQUIRE(out);
  return guarded([&] {
    const auto t = tilde == SNC_TILDE_POWER_SCALED ? snc::TildeRegulation::power_scaled
                                                   : snc::TildeRegulation::unit_mark;
    auto rep = snc::rayleigh_ps_lower_multiclass(scenario->scenario,
                                                 snc::PathLossModel::bounded_power_law(scenario->alpha),
                                                 snc::AellMethod::closed_form_2f1, t);
    *out = new snc_bound_report{std::move(rep)};
  });
}

void snc_bound_report_destroy(snc_bound_report* report) { delete report; }

size_t snc_bound_report_class_count(const snc_bound_report* report) {
  return report ? report->report.per_class.size() : 0;
}

snc_status snc_bound_report_class(const snc_bound_report* report, size_t index, snc_class_bound* out) {
  SNC_REQUIRE(report);
  SNC_REQUIRE(out);
  if (index >= report->report.per_class.size()) return fail(SNC_ERR_PARAMETER, "class index out of range");
  const auto& c = report->report.per_class[index];
  *out = {c.class_id, c.power, c.ps_lower, c.ps_lower_simplified, c.sinr_lower_nofading,
          c.interference_upper_nofading};
  return SNC_OK;
}

snc_status snc_bound_report_ps_min(const snc_bound_report* report, double* out) {
  SNC_REQUIRE(report);
  SNC_REQUIRE(out);
  *out = report->report.ps_min;
  return SNC_OK;
}

snc_status snc_bound_report_envelope(const snc_bound_report* report, double* c0, double* c1, double* c2) {
  SNC_REQUIRE(report);
  SNC_REQUIRE(c0);
  SNC_REQUIRE(c1);
  SNC_REQUIRE(c2);
  const auto& e = report->report.total_power_envelope;
  *c0 = e.c0;
  *c1 = e.c1;
  *c2 = e.c2;
  return SNC_OK;
}

snc_status snc_pattern_generate(const snc_scenario* scenario, uint64_t trial_id, snc_pattern** out) {
  SNC_REQUIRE(scenario);
  SNC_REQUIRE(out);
  return guarded([&] { *out = new snc_pattern{snc::build_scenario_pattern(scenario->scenario, trial_id)}; });
}

void snc_pattern_destroy(snc_pattern* pattern) { delete pattern; }

size_t snc_pattern_size(const snc_pattern* pattern) { return pattern ? pattern->realization.links.size() : 0; }

snc_status snc_pattern_point(const snc_pattern* pattern, size_t index, snc_link_point* out) {
  SNC_REQUIRE(pattern);
  SNC_REQUIRE(out);
  if (index >= pattern->realization.links.size()) return fail(SNC_ERR_PARAMETER, "point index out of range");
  const auto& l = pattern->realization.links[index];
  *out = {l.transmitter.class_id, l.transmitter.location.x, l.transmitter.location.y, l.transmitter.power,
          l.receiver.x, l.receiver.y};
  return SNC_OK;
}

snc_status snc_pattern_write_csv(const snc_pattern* pattern, const char* path) {
  SNC_REQUIRE(pattern);
  SNC_REQUIRE(path);
  return guarded([&] {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw snc::IoError(std::string("cannot write '") + path + "'");
    snc::write_realization_csv(os, pattern->realization);
    if (!os) throw snc::IoError(std::string("write failed for '") + path + "'");
  });
}

snc_status snc_pattern_check_ball(const snc_pattern* pattern, const snc_regulation* params, size_t n_centers,
                                  uint64_t seed, int* compliant, double* worst_margin) {
  SNC_REQUIRE(pattern);
  SNC_REQUIRE(params);
  SNC_REQUIRE(compliant);
  return guarded([&] {
    const auto& w = pattern->realization.pattern.window;
    const auto centers = snc::random_centers(w.center, w.evaluation_radius(), n_centers, seed);
    const auto rep = snc::check_ball_regulation(pattern->realization.pattern, to_params(*params), centers);
    *compliant = rep.compliant ? 1 : 0;
    if (worst_margin) *worst_margin = rep.worst_margin;
  });
}

snc_status snc_trials_run(const snc_scenario* scenario, size_t n_trials, unsigned threads, snc_trial_set** out) {
  SNC_REQUIRE(scenario);
  SNC_REQUIRE(out);
  return guarded([&] {
    snc::TrialOptions opts;
    opts.threads = threads;
    auto run = snc::run_trials(scenario->scenario, snc::PathLossModel::bounded_power_law(scenario->alpha), n_trials,
                               opts);
    *out = new snc_trial_set{std::move(run.records)};
  });
}

void snc_trial_set_destroy(snc_trial_set* set) { delete set; }

size_t snc_trial_set_count(const snc_trial_set* set) { return set ? set->records.size() : 0; }

snc_status snc_trial_set_get(const snc_trial_set* set, size_t index, snc_trial_record* out) {
  SNC_REQUIRE(set);
  SNC_REQUIRE(out);
  if (index >= set->records.size()) return fail(SNC_ERR_PARAMETER, "record index out of range");
  const auto& r = set->records[index];
  *out = {r.trial_id,      r.link_id,  r.class_id,   r.ps_conditional,   r.sinr_nofading,
          r.interference_nofading, r.bound_ps, r.bound_sinr, r.compliant ? 1 : 0};
  return SNC_OK;
}

snc_status snc_trial_set_write_csv(const snc_trial_set* set, const char* path) {
  SNC_REQUIRE(set);
  SNC_REQUIRE(path);
  return guarded([&] {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw snc::IoError(std::string("cannot write '") + path + "'");
    snc::write_trial_records_csv(os, set->records, true);
    if (!os) throw snc::IoError(std::string("write failed for '") + path + "'");
  });
}

snc_status snc_run_experiment(const char* command, const char* config_path, const char* out_dir, uint64_t seed,
                              int has_seed, unsigned threads, snc_message_fn on_message, void* user,
                              int* all_compliant) {
  SNC_REQUIRE(command);
  SNC_REQUIRE(config_path);
  SNC_REQUIRE(out_dir);
  return guarded([&] {
    const std::string cmd(command);
    snc::RunMode mode;
    if (cmd == "bounds") mode = snc::RunMode::bounds;
    else if (cmd == "simulate") mode = snc::RunMode::simulate;
    else if (cmd == "check") mode = snc::RunMode::check;
    else throw snc::ParameterError("unknown command '" + cmd + "'");
    auto cfg = snc::load_config(config_path);
    if (has_seed) cfg.scenario.seed = seed;
    const auto outcome = snc::run_experiment(cfg, mode, out_dir, threads);
    if (on_message)
      for (const auto& m : outcome.messages) on_message(m.c_str(), user);
    if (all_compliant) *all_compliant = outcome.all_compliant ? 1 : 0;
  });
}

}  // extern "C"
