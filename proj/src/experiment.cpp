#include "snc/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "snc/csv.hpp"
#include "snc/error.hpp"
#include "snc/montecarlo.hpp"
#include "snc/regulation.hpp"
#include "snc/rng.hpp"
#include "snc/weight.hpp"

namespace snc {
namespace {

namespace fs = std::filesystem;

class CsvFile {
 public:
  CsvFile(const fs::path& path, ExperimentOutcome& outcome) : path_(path) {
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw IoError("cannot write '" + path.string() + "'");
    outcome.files.push_back(path.string());
  }
  std::ostream& stream() { return out_; }
  void close() {
    out_.flush();
    if (!out_) throw IoError("write failed for '" + path_.string() + "'");
    out_.close();
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

NetworkScenario with_linear_rules(NetworkScenario s) {
  for (auto& c : s.classes)
    if (c.power_rule.kind == PowerRule::Kind::beta_control) c.power_rule.kind = PowerRule::Kind::linear;
  return s;
}

std::string rule_label(const NetworkScenario& s) {
  std::string out;
  for (std::size_t i = 0; i < s.classes.size(); ++i) out += (i ? "/" : "") + s.classes[i].power_rule.name();
  return out;
}

void write_bounds(const ExperimentConfig& cfg, const fs::path& dir, ExperimentOutcome& outcome) {
  CsvFile f(dir / "bounds.csv", outcome);
  auto& os = f.stream();
  os << csv_header_comment(cfg, "bounds") << '\n';
  os << "grid_index,sweep_value,theta_db,class_id,power_rule,power,ps_lower,ps_lower_simplified,"
        "sinr_lower_nofading,interference_upper,ps_min,c0,c1,c2,envelope_at_radius,envelope_linear_at_radius,"
        "envelope_gap_vs_linear\n";
  const auto model = cfg.model();
  // diagnostic text -> sweep labels where it occurred
  std::map<std::string, std::vector<std::string>> diagnostics;
  std::vector<std::string> diagnostic_order;
  for (std::size_t g = 0; g < cfg.grid_size(); ++g) {
    const auto scen = cfg.scenario_at(g);
    const auto rep = rayleigh_ps_lower_multiclass(scen, model, cfg.method, cfg.tilde);
    const auto linear_env = total_power_envelope(with_linear_rules(scen));
    const double r = cfg.envelope_radius;
    const double env = rep.total_power_envelope.at(r);
    for (const auto& d : rep.diagnostics) {
      if (!diagnostics.count(d)) diagnostic_order.push_back(d);
      diagnostics[d].push_back(cfg.grid_label(g));
    }
    for (const auto& cb : rep.per_class) {
      const auto ci = static_cast<std::size_t>(cb.class_id);
      os << g << ',' << cfg.grid_label(g) << ',' << csv::num(cfg.theta_db_at(g, ci)) << ',' << cb.class_id << ','
         << scen.classes[ci].power_rule.name() << ',' << csv::num(cb.power) << ',' << csv::num(cb.ps_lower) << ','
         << csv::num(cb.ps_lower_simplified) << ',' << csv::num(cb.sinr_lower_nofading) << ','
         << csv::num(cb.interference_upper_nofading) << ',' << csv::num(rep.ps_min) << ','
         << csv::num(rep.total_power_envelope.c0) << ',' << csv::num(rep.total_power_envelope.c1) << ','
         << csv::num(rep.total_power_envelope.c2) << ',' << csv::num(env) << ',' << csv::num(linear_env.at(r))
         << ',' << csv::num(linear_env.at(r) - env) << '\n';
    }
  }
  f.close();
  for (const auto& d : diagnostic_order) {
    const auto& where = diagnostics[d];
    std::string msg = d + " (" + std::to_string(where.size()) + " of " + std::to_string(cfg.grid_size()) +
                      " grid points, first at " + where.front() + ")";
    outcome.messages.push_back(msg);
  }
}

struct ClassStats {
  std::size_t links = 0;
  std::size_t compliant = 0;
  double min_ps = 1.0;
  double sum_ps = 0.0;
  double min_sinr = kInfinity;
  double max_interference = 0.0;
  std::vector<double> ps;
};

void write_simulation(const ExperimentConfig& cfg, const fs::path& dir, unsigned threads, bool write_trials,
                      ExperimentOutcome& outcome) {
  const auto model = cfg.model();
  TrialOptions opts;
  opts.threads = threads;
  opts.method = cfg.method;
  opts.tilde = cfg.tilde;

  std::vector<NetworkScenario> variants;
  for (std::size_t g = 0; g < cfg.grid_size(); ++g) variants.push_back(cfg.scenario_at(g));

  std::optional<CsvFile> trials;
  if (write_trials) {
    trials.emplace(dir / "trials.csv", outcome);
    trials->stream() << csv_header_comment(cfg, "trials") << '\n';
  }
  CsvFile summary(dir / "summary.csv", outcome);
  auto& ss = summary.stream();
  ss << csv_header_comment(cfg, "summary") << '\n';
  ss << "grid_index,sweep_value,theta_db,class_id,n_links,n_empty_trials,empirical_min,empirical_mean";
  for (double gm : cfg.gamma_grid) {
    char label[32];
    std::snprintf(label, sizeof label, "%g", gm);
    ss << ",ccdf_at_" << label;
  }
  ss << ",bound_ps,bound_sinr,empirical_min_sinr,max_interference,interference_upper,compliance_fraction\n";

  const bool shared = cfg.sweep_variable != SweepVariable::hardcore;
  auto emit = [&](std::size_t g, const TrialRun& run) {
    if (trials) write_trial_records_csv(trials->stream(), run.records, g == 0, g);
    const auto& scen = variants[g];
    std::vector<ClassStats> stats(scen.classes.size() + 1);  // last entry pools all classes
    for (const auto& r : run.records) {
      for (auto* st : {&stats[static_cast<std::size_t>(r.class_id)], &stats.back()}) {
        ++st->links;
        st->compliant += r.compliant ? 1 : 0;
        st->min_ps = std::min(st->min_ps, r.ps_conditional);
        st->sum_ps += r.ps_conditional;
        st->min_sinr = std::min(st->min_sinr, r.sinr_nofading);
        st->max_interference = std::max(st->max_interference, r.interference_nofading);
        st->ps.push_back(r.ps_conditional);
      }
    }
    for (std::size_t c = 0; c < stats.size(); ++c) {
      auto& st = stats[c];
      const bool pooled = c == scen.classes.size();
      std::sort(st.ps.begin(), st.ps.end());
      ss << g << ',' << cfg.grid_label(g) << ',' << (pooled ? std::string("") : csv::num(cfg.theta_db_at(g, c)))
         << ',' << (pooled ? std::string("all") : std::to_string(c)) << ',' << st.links << ','
         << run.empty_trials.size() << ',';
      const bool any = st.links > 0;
      ss << (any ? csv::num(st.min_ps) : "nan") << ','
         << (any ? csv::num(st.sum_ps / static_cast<double>(st.links)) : "nan");
      for (double gm : cfg.gamma_grid) {
        const auto above = st.ps.end() - std::upper_bound(st.ps.begin(), st.ps.end(), gm);
        ss << ',' << (any ? csv::num(static_cast<double>(above) / static_cast<double>(st.links)) : "nan");
      }
      const double bound_ps = pooled ? run.bounds.ps_min : run.bounds.per_class[c].ps_lower;
      double bound_sinr = kInfinity, interference_upper = 0.0;
      if (pooled) {
        for (const auto& cb : run.bounds.per_class) {
          bound_sinr = std::min(bound_sinr, cb.sinr_lower_nofading);
          interference_upper = std::max(interference_upper, cb.interference_upper_nofading);
        }
      } else {
        bound_sinr = run.bounds.per_class[c].sinr_lower_nofading;
        interference_upper = run.bounds.per_class[c].interference_upper_nofading;
      }
      const double frac = any ? static_cast<double>(st.compliant) / static_cast<double>(st.links) : 1.0;
      ss << ',' << csv::num(bound_ps) << ',' << csv::num(bound_sinr) << ','
         << (any ? csv::num(st.min_sinr) : "nan") << ',' << csv::num(st.max_interference) << ','
         << csv::num(interference_upper) << ',' << csv::num(frac) << '\n';
      if (st.compliant != st.links) outcome.all_compliant = false;
    }
    if (!run.empty_trials.empty())
      outcome.messages.push_back("grid " + cfg.grid_label(g) + ": " + std::to_string(run.empty_trials.size()) +
                                 " trial(s) had no evaluable link");
  };

  if (shared) {
    const auto runs = run_trials_sweep(variants, model, cfg.n_trials, opts);
    for (std::size_t g = 0; g < runs.size(); ++g) emit(g, runs[g]);
  } else {
    for (std::size_t g = 0; g < variants.size(); ++g) emit(g, run_trials(variants[g], model, cfg.n_trials, opts));
  }
  if (trials) trials->close();
  summary.close();
  if (!outcome.all_compliant) outcome.messages.push_back("some links fell below their analytic bounds");
}

struct CheckTarget {
  std::string name;
  MarkedPointPattern pattern;
  RegulationParams params;
  std::vector<WeightFunction> weights;
};

void write_check(const ExperimentConfig& cfg, const fs::path& dir, ExperimentOutcome& outcome) {
  const auto scen = cfg.scenario_at(0);
  const auto model = cfg.model();
  const auto& settings = cfg.check;
  const auto powers = scen.class_powers();
  const double ell_r0 = model(scen.r0);
  const auto class_params = class_regulation_params(scen);
  const double eval_radius = scen.window.evaluation_radius();
  double h_min = kInfinity;
  for (const auto& c : scen.classes) h_min = std::min(h_min, c.hardcore_H);

  // Weight family: unit steps, the path loss and every l~ij.
  std::vector<WeightFunction> steps;
  for (std::size_t m = 1; m <= settings.step_weights; ++m) steps.push_back(step_weight(static_cast<double>(m) * h_min));
  auto ltilde = [&](std::size_t i, std::size_t j) {
    return shotnoise_weight_ij(scen.classes[i].theta, powers[i], powers[j], ell_r0, model);
  };

  CsvFile f(dir / "check.csv", outcome);
  auto& os = f.stream();
  os << csv_header_comment(cfg, "check") << '\n';
  os << "pattern,target,centers,weight_id,compliant,worst_margin,tolerance,witness_x,witness_y,witness_radius,"
        "measured,bound,centers_checked,violating_centers\n";

  struct Tally {
    std::size_t patterns = 0, ball_ok = 0, shot_ok = 0, implication_ok = 0;
    double worst_ball = kInfinity;
  };
  std::map<std::string, Tally> tallies;
  std::vector<std::string> order;

  for (std::size_t p = 0; p < settings.n_patterns; ++p) {
    const auto real = build_scenario_pattern(scen, p);
    std::vector<CheckTarget> targets;
    for (std::size_t j = 0; j < scen.classes.size(); ++j) {
      CheckTarget t;
      t.name = "class" + std::to_string(j);
      t.pattern.window = real.pattern.window;
      for (const auto& pt : real.pattern.points)
        if (pt.class_id == static_cast<int>(j)) t.pattern.points.push_back(pt);
      t.params = class_params[j].scaled(settings.sigma_scale);
      t.weights = steps;
      t.weights.push_back(pathloss_weight(model));
      for (std::size_t i = 0; i < scen.classes.size(); ++i)
        if (powers[i] > 0.0) t.weights.push_back(ltilde(i, j));
      targets.push_back(std::move(t));
    }
    if (scen.classes.size() > 1) {
      CheckTarget t;
      t.name = "all";
      t.pattern = real.pattern;
      t.params = superpose_params(class_params).scaled(settings.sigma_scale);
      t.weights = steps;
      t.weights.push_back(pathloss_weight(model));
      for (std::size_t i = 0; i < scen.classes.size(); ++i)
        for (std::size_t j = 0; j < scen.classes.size(); ++j)
          if (powers[i] > 0.0) t.weights.push_back(ltilde(i, j));
      targets.push_back(std::move(t));
    }

    auto strong = random_centers(scen.window.center, eval_radius, settings.random_centers,
                                 derive_seed(scen.seed, p, 0, Stream::centers));
    if (settings.grid_spacing > 0.0) {
      const auto grid = grid_centers(scen.window.center, eval_radius, settings.grid_spacing);
      strong.insert(strong.end(), grid.begin(), grid.end());
    }
    std::vector<Point2> weak;
    for (const auto& l : real.links)
      if (scen.window.in_evaluation_region(l.receiver)) weak.push_back(l.receiver);

    for (const auto& t : targets) {
      for (const auto& [mode, centers] : {std::pair{"strong", &strong}, std::pair{"weak", &weak}}) {
        auto row = [&](const ComplianceReport& rep, const std::string& wid) {
          const auto& w = rep.witness;
          os << p << ',' << t.name << ',' << mode << ',' << wid << ',' << (rep.compliant ? 1 : 0) << ','
             << csv::num(rep.worst_margin) << ',' << csv::num(rep.tolerance) << ',' << csv::num(w.center.x) << ','
             << csv::num(w.center.y) << ',' << csv::num(w.radius) << ',' << csv::num(w.measured) << ','
             << csv::num(w.bound) << ',' << rep.centers_checked << ',' << rep.violating_centers << '\n';
        };
        const auto ball = check_ball_regulation(t.pattern, t.params, *centers);
        row(ball, "ball");
        bool shot_ok = true;
        for (const auto& w : t.weights) {
          const auto rep = check_shotnoise_regulation(t.pattern, t.params, w, *centers, settings.shotnoise_radius);
          row(rep, w.id);
          shot_ok = shot_ok && rep.compliant;
        }
        const std::string key = t.name + "," + mode;
        if (!tallies.count(key)) order.push_back(key);
        auto& tl = tallies[key];
        ++tl.patterns;
        tl.ball_ok += ball.compliant ? 1 : 0;
        tl.shot_ok += shot_ok ? 1 : 0;
        tl.implication_ok += (!ball.compliant || shot_ok) ? 1 : 0;
        if (!centers->empty()) tl.worst_ball = std::min(tl.worst_ball, ball.worst_margin);
        if (!ball.compliant) outcome.all_compliant = false;
      }
    }
  }
  f.close();

  CsvFile s(dir / "check_summary.csv", outcome);
  auto& ss = s.stream();
  ss << csv_header_comment(cfg, "check_summary") << '\n';
  ss << "target,centers,patterns,ball_compliant,shotnoise_compliant,ball_implies_shotnoise,worst_ball_margin\n";
  for (const auto& key : order) {
    const auto& tl = tallies[key];
    ss << key << ',' << tl.patterns << ',' << tl.ball_ok << ',' << tl.shot_ok << ','
       << (tl.implication_ok == tl.patterns ? 1 : 0) << ',' << csv::num(tl.worst_ball) << '\n';
  }
  s.close();
  if (!outcome.all_compliant) outcome.messages.push_back("ball-regulation violations found; see check.csv witnesses");
}

}  // namespace

std::string csv_header_comment(const ExperimentConfig& cfg, const std::string& schema) {
  std::ostringstream os;
  os << "# snc-toolkit " << csv::kToolkitVersion << " schema=" << schema << "/1"
     << " config_hash=" << csv::fnv1a_hex(cfg.source_text) << " seed=" << cfg.scenario.seed
     << " generator=" << (cfg.scenario.generator == Generator::matern ? "matern" : "lattice")
     << " rx_orientation_deg=" << csv::num(cfg.scenario.rx_orientation * 180.0 / std::numbers::pi)
     << " guard=" << csv::num(cfg.scenario.window.guard) << " rules=" << rule_label(cfg.scenario)
     << " tilde_regulation=" << (cfg.tilde == TildeRegulation::unit_mark ? "unit_mark" : "power_scaled");
  return os.str();
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg, RunMode command, const std::string& out_dir,
                                 unsigned threads) {
  const bool allowed = cfg.mode == command || (command == RunMode::bounds && cfg.mode == RunMode::simulate);
  if (!allowed)
    throw ConfigError("mode: config is for '" + to_string(cfg.mode) + "', not '" + to_string(command) + "'");
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + out_dir + "'");

  ExperimentOutcome outcome;
  outcome.messages = cfg.warnings;
  switch (command) {
    case RunMode::bounds:
      write_bounds(cfg, dir, outcome);
      break;
    case RunMode::simulate:
      write_bounds(cfg, dir, outcome);
      write_simulation(cfg, dir, threads == 0 ? 1 : threads, cfg.write_trials, outcome);
      break;
    case RunMode::check:
      write_check(cfg, dir, outcome);
      break;
  }
  return outcome;
}

}  // namespace snc
