#include "snc/montecarlo.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <thread>

#include "snc/csv.hpp"
#include "snc/error.hpp"

namespace snc {
namespace {

std::size_t serving_index(const MarkedPointPattern& pattern, const BipolarLink& link) {
  if (link.tx_index < pattern.points.size() && pattern.points[link.tx_index] == link.transmitter)
    return link.tx_index;
  for (std::size_t i = 0; i < pattern.points.size(); ++i)
    if (pattern.points[i] == link.transmitter) return i;
  throw ConsistencyError("serving transmitter is not part of the pattern");
}

// Interferers with gain above this are kept individually; the rest are
// folded into power sums of the gain, which reproduce sum ln(1 + a l)
// through its Taylor series.
constexpr double kFarGain = 1e-4;
constexpr int kMoments = 6;
// Series use is allowed while a * kFarGain stays below this.
constexpr double kSeriesLimit = 1e-2;

struct NearInterferer {
  int class_id;
  double gain;
};

struct LinkGeometry {
  std::size_t link_index = 0;
  int class_id = 0;
  double ell_r0 = 0.0;
  std::vector<NearInterferer> near;
  // far_moments[j][k] = sum over far class-j interferers of l^(k+1)
  std::vector<std::array<double, kMoments>> far_moments;
};

struct TrialGeometry {
  ScenarioRealization realization;
  std::vector<LinkGeometry> links;
};

TrialGeometry build_geometry(const NetworkScenario& scenario, std::uint64_t trial, const PathLossModel& model) {
  TrialGeometry g;
  g.realization = build_scenario_pattern(scenario, trial);
  const auto& pts = g.realization.pattern.points;
  const auto n_classes = scenario.classes.size();
  const double ell_r0 = model(scenario.r0);
  for (std::size_t li = 0; li < g.realization.links.size(); ++li) {
    const auto& link = g.realization.links[li];
    if (!scenario.window.in_evaluation_region(link.receiver)) continue;
    LinkGeometry lg;
    lg.link_index = li;
    lg.class_id = link.transmitter.class_id;
    lg.ell_r0 = ell_r0;
    lg.far_moments.assign(n_classes, {});
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (k == link.tx_index) continue;
      const double gain = model.from_distance_sq(distance_sq(pts[k].location, link.receiver));
      if (gain > kFarGain) {
        lg.near.push_back({pts[k].class_id, gain});
      } else {
        auto& m = lg.far_moments[static_cast<std::size_t>(pts[k].class_id)];
        double p = gain;
        for (int e = 0; e < kMoments; ++e) {
          m[static_cast<std::size_t>(e)] += p;
          p *= gain;
        }
      }
    }
    g.links.push_back(std::move(lg));
  }
  return g;
}

struct LinkMetrics {
  double ps = 0.0;
  double sinr = 0.0;
  double interference = 0.0;
};

LinkMetrics evaluate(const LinkGeometry& lg, const TrialGeometry& g, const NetworkScenario& scenario,
                     std::span<const double> powers, const PathLossModel& model) {
  const auto ci = static_cast<std::size_t>(lg.class_id);
  const double theta = scenario.classes[ci].theta;
  const double signal = powers[ci] * lg.ell_r0;
  LinkMetrics out;
  double interference = 0.0;
  for (const auto& n : lg.near) interference += powers[static_cast<std::size_t>(n.class_id)] * n.gain;
  for (std::size_t j = 0; j < powers.size(); ++j) interference += powers[j] * lg.far_moments[j][0];
  out.interference = interference;
  const double denom = interference + scenario.noise_W;
  out.sinr = denom > 0.0 ? signal / denom : (signal > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);

  if (!(signal > 0.0)) return out;  // ps = 0 without a signal
  const double c = theta / signal;
  bool series_ok = true;
  for (double p : powers) series_ok = series_ok && c * p * kFarGain <= kSeriesLimit;
  if (!series_ok) {
    const auto& link = g.realization.links[lg.link_index];
    out.ps = conditional_ps_rayleigh(g.realization.pattern, link, theta, scenario.noise_W, model);
    return out;
  }
  double log_sum = 0.0;
  for (const auto& n : lg.near) log_sum += std::log1p(c * powers[static_cast<std::size_t>(n.class_id)] * n.gain);
  for (std::size_t j = 0; j < powers.size(); ++j) {
    const double a = c * powers[j];
    double term = 0.0;
    double ak = 1.0;
    for (int e = 0; e < kMoments; ++e) {
      ak *= a;
      const double coeff = (e % 2 == 0 ? 1.0 : -1.0) / static_cast<double>(e + 1);
      term += coeff * ak * lg.far_moments[j][static_cast<std::size_t>(e)];
    }
    log_sum += term;
  }
  out.ps = std::exp(-theta * scenario.noise_W / signal - log_sum);
  return out;
}

void require_shared_geometry(std::span<const NetworkScenario> variants) {
  const auto& base = variants.front();
  for (const auto& v : variants) {
    v.validate();
    bool same = v.classes.size() == base.classes.size() && v.r0 == base.r0 && v.window.center == base.window.center &&
                v.window.radius == base.window.radius && v.window.guard == base.window.guard &&
                v.base_intensity == base.base_intensity && v.seed == base.seed && v.generator == base.generator &&
                v.rx_orientation == base.rx_orientation;
    for (std::size_t i = 0; same && i < v.classes.size(); ++i)
      same = v.classes[i].hardcore_H == base.classes[i].hardcore_H &&
             v.classes[i].lattice_spacing == base.classes[i].lattice_spacing;
    if (!same) throw ParameterError("run_trials_sweep: variants must share the realization geometry");
  }
}

}  // namespace

double interference_nofading(const MarkedPointPattern& pattern, const BipolarLink& link,
                             const PathLossModel& model) {
  const auto serving = serving_index(pattern, link);
  double s = 0.0;
  for (std::size_t k = 0; k < pattern.points.size(); ++k) {
    if (k == serving) continue;
    s += pattern.points[k].power * model.from_distance_sq(distance_sq(pattern.points[k].location, link.receiver));
  }
  return s;
}

double conditional_ps_rayleigh(const MarkedPointPattern& pattern, const BipolarLink& link, double theta,
                               double W, const PathLossModel& model) {
  if (!(theta > 0.0)) throw ParameterError("conditional_ps_rayleigh: theta must be positive");
  if (!(W >= 0.0)) throw ParameterError("conditional_ps_rayleigh: noise must be >= 0");
  const auto serving = serving_index(pattern, link);
  const double signal = link.transmitter.power * model(link.link_distance);
  if (!(signal > 0.0)) return 0.0;
  const double c = theta / signal;
  double log_sum = theta * W / signal;
  for (std::size_t k = 0; k < pattern.points.size(); ++k) {
    if (k == serving) continue;
    const double gain = model.from_distance_sq(distance_sq(pattern.points[k].location, link.receiver));
    log_sum += std::log1p(c * pattern.points[k].power * gain);
  }
  return std::exp(-log_sum);
}

std::vector<TrialRun> run_trials_sweep(std::span<const NetworkScenario> variants, const PathLossModel& model,
                                       std::size_t n_trials, const TrialOptions& opts) {
  if (variants.empty()) throw ParameterError("run_trials_sweep: no scenarios");
  if (n_trials < 1) throw ParameterError("run_trials: n_trials must be >= 1");
  require_shared_geometry(variants);

  std::vector<TrialRun> runs(variants.size());
  std::vector<std::vector<double>> powers;
  for (std::size_t v = 0; v < variants.size(); ++v) {
    runs[v].bounds = rayleigh_ps_lower_multiclass(variants[v], model, opts.method, opts.tilde);
    powers.push_back(variants[v].class_powers());
  }

  // per_trial[t][v] holds the records of trial t under variant v
  std::vector<std::vector<std::vector<TrialRecord>>> per_trial(n_trials);
  auto work = [&](std::size_t t) {
    const auto g = build_geometry(variants.front(), t, model);
    per_trial[t].resize(variants.size());
    for (std::size_t v = 0; v < variants.size(); ++v) {
      const auto& scen = variants[v];
      auto& out = per_trial[t][v];
      out.reserve(g.links.size());
      for (const auto& lg : g.links) {
        const auto m = evaluate(lg, g, scen, powers[v], model);
        const auto& cb = runs[v].bounds.per_class[static_cast<std::size_t>(lg.class_id)];
        TrialRecord r;
        r.trial_id = t;
        r.link_id = lg.link_index;
        r.class_id = lg.class_id;
        r.ps_conditional = m.ps;
        r.sinr_nofading = m.sinr;
        r.interference_nofading = m.interference;
        r.bound_ps = cb.ps_lower;
        r.bound_sinr = cb.sinr_lower_nofading;
        const bool ps_ok = r.ps_conditional >= r.bound_ps * (1.0 - opts.tolerance);
        const bool sinr_ok = std::isinf(r.bound_sinr) ? std::isinf(r.sinr_nofading)
                                                      : r.sinr_nofading >= r.bound_sinr * (1.0 - opts.tolerance);
        r.compliant = ps_ok && sinr_ok;
        out.push_back(r);
      }
    }
  };

  const unsigned threads = std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n_trials)));
  if (threads == 1) {
    for (std::size_t t = 0; t < n_trials; ++t) work(t);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < n_trials; t += threads) work(t);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  for (std::size_t t = 0; t < n_trials; ++t)
    for (std::size_t v = 0; v < variants.size(); ++v) {
      auto& recs = per_trial[t][v];
      if (recs.empty()) runs[v].empty_trials.push_back(t);
      runs[v].records.insert(runs[v].records.end(), recs.begin(), recs.end());
    }
  return runs;
}

TrialRun run_trials(const NetworkScenario& scenario, const PathLossModel& model, std::size_t n_trials,
                    const TrialOptions& opts) {
  auto runs = run_trials_sweep(std::span<const NetworkScenario>(&scenario, 1), model, n_trials, opts);
  return std::move(runs.front());
}

MetaDistribution meta_distribution(std::span<const TrialRecord> records, std::optional<int> class_filter,
                                   std::span<const double> gamma_grid, double theta) {
  MetaDistribution md;
  md.theta = theta;
  md.gamma_grid.assign(gamma_grid.begin(), gamma_grid.end());
  std::vector<double> ps;
  for (const auto& r : records)
    if (!class_filter || r.class_id == *class_filter) ps.push_back(r.ps_conditional);
  if (ps.empty()) throw ParameterError("meta_distribution: no records after filtering");
  std::sort(ps.begin(), ps.end());
  md.links = ps.size();
  md.ps_min_empirical = ps.front();
  for (double g : gamma_grid) {
    const auto above = ps.end() - std::upper_bound(ps.begin(), ps.end(), g);
    md.ccdf.push_back(static_cast<double>(above) / static_cast<double>(ps.size()));
  }
  return md;
}

void write_trial_records_csv(std::ostream& os, std::span<const TrialRecord> records, bool header,
                             std::optional<std::size_t> grid_index) {
  if (header) {
    if (grid_index) os << "grid_index,";
    os << "trial_id,link_id,class_id,ps_conditional,bound_ps,sinr_nofading,bound_sinr,compliant\n";
  }
  for (const auto& r : records) {
    if (grid_index) os << *grid_index << ',';
    os << r.trial_id << ',' << r.link_id << ',' << r.class_id << ',' << csv::num(r.ps_conditional) << ','
       << csv::num(r.bound_ps) << ',' << csv::num(r.sinr_nofading) << ',' << csv::num(r.bound_sinr) << ','
       << (r.compliant ? 1 : 0) << '\n';
  }
}

}  // namespace snc
