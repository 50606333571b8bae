#include "snc/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "snc/error.hpp"
#include "snc/regulation.hpp"

namespace snc {
namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(trim(cur));
  return out;
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

class KeyValues {
 public:
  explicit KeyValues(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int line = 0;
    while (std::getline(is, raw)) {
      ++line;
      const auto hash = raw.find('#');
      const auto body = trim(std::string_view(raw).substr(0, hash));
      if (body.empty()) continue;
      const auto eq = body.find('=');
      if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected 'key = value'");
      auto key = trim(std::string_view(body).substr(0, eq));
      auto value = trim(std::string_view(body).substr(eq + 1));
      if (key.empty()) throw ConfigError("line " + std::to_string(line) + ": empty key");
      if (entries_.count(key)) throw ConfigError("line " + std::to_string(line) + ": duplicate key '" + key + "'");
      entries_[key] = {value, line, false};
    }
  }

  std::optional<std::string> get(const std::string& key) {
    auto it = entries_.find(key);
    if (it == entries_.end()) return std::nullopt;
    it->second.used = true;
    return it->second.value;
  }

  double number(const std::string& key, double fallback) {
    auto v = get(key);
    return v ? to_number(key, *v) : fallback;
  }

  std::optional<double> optional_number(const std::string& key) {
    auto v = get(key);
    if (!v) return std::nullopt;
    return to_number(key, *v);
  }

  std::uint64_t unsigned_int(const std::string& key, std::uint64_t fallback) {
    auto v = get(key);
    if (!v) return fallback;
    std::uint64_t out = 0;
    const auto* first = v->data();
    const auto* last = first + v->size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last) throw ConfigError(key + ": expected a non-negative integer, got '" + *v + "'");
    return out;
  }

  static double to_number(const std::string& key, const std::string& v) {
    if (v == "inf") return kInfinity;
    double out = 0.0;
    const auto* first = v.data();
    const auto* last = first + v.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc() || ptr != last || !std::isfinite(out))
      throw ConfigError(key + ": expected a number, got '" + v + "'");
    return out;
  }

  /// Class indices seen in "class.<k>.<field>" keys.
  std::set<std::size_t> class_indices() const {
    std::set<std::size_t> out;
    for (const auto& [key, e] : entries_) {
      if (key.rfind("class.", 0) != 0) continue;
      const auto dot = key.find('.', 6);
      const auto idx = key.substr(6, dot == std::string::npos ? std::string::npos : dot - 6);
      std::size_t k = 0;
      auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), k);
      if (ec != std::errc() || ptr != idx.data() + idx.size() || dot == std::string::npos)
        throw ConfigError("line " + std::to_string(e.line) + ": malformed class key '" + key + "'");
      out.insert(k);
    }
    return out;
  }

  void reject_unused() const {
    for (const auto& [key, e] : entries_)
      if (!e.used) throw ConfigError("line " + std::to_string(e.line) + ": unknown key '" + key + "'");
  }

 private:
  std::map<std::string, Entry> entries_;
};

std::vector<double> parse_numeric_grid(const std::string& key, const std::string& text) {
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) throw ConfigError(key + ": range must be 'start:step:stop'");
    const double a = KeyValues::to_number(key, parts[0]);
    const double step = KeyValues::to_number(key, parts[1]);
    const double b = KeyValues::to_number(key, parts[2]);
    if (!(step > 0.0) || b < a) throw ConfigError(key + ": range needs step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9)) + 1;
    if (n > 100000) throw ConfigError(key + ": range has too many points");
    for (std::size_t k = 0; k < n; ++k) out.push_back(a + static_cast<double>(k) * step);
    return out;
  }
  for (const auto& item : split(text, ','))
    if (!item.empty()) out.push_back(KeyValues::to_number(key, item));
  return out;
}

PowerRule::Kind parse_rule(const std::string& key, const std::string& v) {
  if (v == "constant") return PowerRule::Kind::constant;
  if (v == "beta_control" || v == "log") return PowerRule::Kind::beta_control;
  if (v == "linear") return PowerRule::Kind::linear;
  throw ConfigError(key + ": unknown power rule '" + v + "' (constant|beta_control|linear)");
}

std::string format_value(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

}  // namespace

std::string to_string(RunMode mode) {
  switch (mode) {
    case RunMode::bounds:
      return "bounds";
    case RunMode::simulate:
      return "simulate";
    case RunMode::check:
      return "check";
  }
  return "?";
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::none:
      return "none";
    case SweepVariable::theta_db:
      return "theta_db";
    case SweepVariable::beta:
      return "beta";
    case SweepVariable::hardcore:
      return "hardcore";
    case SweepVariable::power_rule:
      return "power_rule";
  }
  return "?";
}

double default_guard(double bound_scale, double tolerance, double alpha, double radius, std::string* warning) {
  if (!(alpha > 2.0)) throw ConfigError("guard: alpha must exceed 2 for a finite guard");
  if (!(bound_scale > 0.0) || !(tolerance > 0.0)) throw ConfigError("guard: tolerance must be positive");
  double g = std::pow(bound_scale * tolerance, -1.0 / (alpha - 2.0));
  if (g > 0.5 * radius) {
    if (warning)
      *warning = "guard " + format_value(g) + " for tolerance " + format_value(tolerance) +
                 " does not fit the window; clamped to " + format_value(0.5 * radius);
    g = 0.5 * radius;
  }
  return g;
}

ExperimentConfig parse_config(const std::string& text) {
  KeyValues kv(text);
  ExperimentConfig cfg;
  cfg.source_text = text;

  if (auto m = kv.get("mode")) {
    if (*m == "bounds") cfg.mode = RunMode::bounds;
    else if (*m == "simulate") cfg.mode = RunMode::simulate;
    else if (*m == "check" || *m == "check_regulation") cfg.mode = RunMode::check;
    else throw ConfigError("mode: expected bounds|simulate|check, got '" + *m + "'");
  }
  cfg.alpha = kv.number("alpha", 4.0);
  if (!(cfg.alpha > 0.0)) throw ConfigError("alpha: must be positive");
  if (!(cfg.alpha > 2.0))
    throw DivergenceError("alpha = " + format_value(cfg.alpha) + ": interference integral diverges for alpha <= 2");

  auto& s = cfg.scenario;
  s.r0 = kv.number("r0", 1.0);
  s.noise_W = kv.number("noise_w", 0.0);
  s.window.radius = kv.number("window_radius", 100.0);
  s.base_intensity = kv.number("base_intensity", 0.3);
  s.seed = kv.unsigned_int("seed", 1);
  s.rx_orientation = kv.number("rx_orientation_deg", 0.0) * std::numbers::pi / 180.0;
  if (auto g = kv.get("generator")) {
    if (*g == "matern") s.generator = Generator::matern;
    else if (*g == "lattice") s.generator = Generator::lattice;
    else throw ConfigError("generator: expected matern|lattice, got '" + *g + "'");
  }
  if (auto d = kv.get("distinct_thresholds")) {
    if (*d == "true") s.require_distinct_thresholds = true;
    else if (*d == "false") s.require_distinct_thresholds = false;
    else throw ConfigError("distinct_thresholds: expected true|false");
  }
  if (auto m = kv.get("aell_method")) {
    if (*m == "closed_form") cfg.method = AellMethod::closed_form_2f1;
    else if (*m == "quadrature") cfg.method = AellMethod::quadrature;
    else throw ConfigError("aell_method: expected closed_form|quadrature");
  }
  if (auto t = kv.get("tilde_regulation")) {
    if (*t == "unit_mark") cfg.tilde = TildeRegulation::unit_mark;
    else if (*t == "power_scaled") cfg.tilde = TildeRegulation::power_scaled;
    else throw ConfigError("tilde_regulation: expected unit_mark|power_scaled");
  }
  cfg.n_trials = kv.unsigned_int("n_trials", 200);
  if (cfg.n_trials < 1) throw ConfigError("n_trials: must be >= 1");
  cfg.theta_ref_db = kv.number("theta_ref_db", 0.0);
  cfg.guard_tolerance = kv.number("guard_tolerance", 1e-6);
  cfg.envelope_radius = kv.number("envelope_radius", 0.0);
  if (auto w = kv.get("output.trials")) {
    if (*w == "true") cfg.write_trials = true;
    else if (*w == "false") cfg.write_trials = false;
    else throw ConfigError("output.trials: expected true|false");
  }
  if (auto g = kv.get("gamma_grid")) {
    cfg.gamma_grid = parse_numeric_grid("gamma_grid", *g);
    for (double v : cfg.gamma_grid)
      if (v < 0.0 || v > 1.0) throw ConfigError("gamma_grid: levels must lie in [0, 1]");
  }

  const auto indices = kv.class_indices();
  if (indices.empty()) throw ConfigError("class.0.hardcore: at least one class is required");
  if (*indices.rbegin() + 1 != indices.size()) throw ConfigError("class keys must be numbered 0..M-1 without gaps");
  for (std::size_t i = 0; i < indices.size(); ++i) {
    const auto pre = "class." + std::to_string(i) + ".";
    ClassSpec c;
    auto H = kv.optional_number(pre + "hardcore");
    if (!H) throw ConfigError(pre + "hardcore: missing");
    if (!(*H > 0.0)) throw ConfigError(pre + "hardcore: must be positive");
    c.hardcore_H = *H;
    const auto kind = parse_rule(pre + "power_rule", kv.get(pre + "power_rule").value_or("beta_control"));
    if (kind == PowerRule::Kind::constant) {
      const double P = kv.number(pre + "power", 1.0);
      if (!(P >= 0.0)) throw ConfigError(pre + "power: must be >= 0");
      c.power_rule = PowerRule::constant(P);
    } else {
      const double beta = kv.number(pre + "beta", 1.0);
      if (!(beta > 0.0)) throw ConfigError(pre + "beta: must be positive");
      c.power_rule = {kind, beta};
    }
    if (auto sp = kv.optional_number(pre + "lattice_spacing")) {
      if (!(*sp > 0.0)) throw ConfigError(pre + "lattice_spacing: must be positive");
      c.lattice_spacing = *sp;
    }
    cfg.theta_offset_db.push_back(kv.number(pre + "theta_offset_db", 0.0));
    s.classes.push_back(c);
  }

  if (auto v = kv.get("sweep.variable")) {
    if (*v == "theta_db") cfg.sweep_variable = SweepVariable::theta_db;
    else if (*v == "beta") cfg.sweep_variable = SweepVariable::beta;
    else if (*v == "hardcore") cfg.sweep_variable = SweepVariable::hardcore;
    else if (*v == "power_rule") cfg.sweep_variable = SweepVariable::power_rule;
    else if (*v == "none") cfg.sweep_variable = SweepVariable::none;
    else throw ConfigError("sweep.variable: expected theta_db|beta|hardcore|power_rule, got '" + *v + "'");
  }
  if (auto sc = kv.get("sweep.classes")) {
    for (const auto& item : split(*sc, ',')) {
      const double k = KeyValues::to_number("sweep.classes", item);
      if (k < 0 || k >= static_cast<double>(s.classes.size()) || k != std::floor(k))
        throw ConfigError("sweep.classes: class index '" + item + "' out of range");
      cfg.sweep_classes.push_back(static_cast<std::size_t>(k));
    }
  }
  const auto grid_text = kv.get("sweep.grid");
  if (cfg.sweep_variable != SweepVariable::none) {
    if (cfg.mode == RunMode::check) throw ConfigError("sweep.variable: sweeps are not available in check mode");
    if (!grid_text || trim(*grid_text).empty()) throw ConfigError("sweep.grid: empty grid");
    const auto n_swept = cfg.sweep_classes.empty() ? s.classes.size() : cfg.sweep_classes.size();
    switch (cfg.sweep_variable) {
      case SweepVariable::theta_db:
      case SweepVariable::beta: {
        const auto values = parse_numeric_grid("sweep.grid", *grid_text);
        if (values.empty()) throw ConfigError("sweep.grid: empty grid");
        for (std::size_t k = 1; k < values.size(); ++k)
          if (!(values[k] > values[k - 1])) throw ConfigError("sweep.grid: values must be strictly increasing");
        for (double v : values) {
          if (cfg.sweep_variable == SweepVariable::beta && !(v > 0.0))
            throw ConfigError("sweep.grid: beta values must be positive");
          cfg.grid.push_back({format_value(v), {v}, std::nullopt});
        }
        break;
      }
      case SweepVariable::hardcore:
        for (const auto& item : split(*grid_text, ',')) {
          if (item.empty()) continue;
          SweepPoint p{item, {}, std::nullopt};
          for (const auto& h : split(item, '/')) {
            const double v = KeyValues::to_number("sweep.grid", h);
            if (!(v > 0.0)) throw ConfigError("sweep.grid: hardcore distances must be positive");
            p.values.push_back(v);
          }
          if (p.values.size() != 1 && p.values.size() != n_swept)
            throw ConfigError("sweep.grid: entry '" + item + "' needs 1 or " + std::to_string(n_swept) + " values");
          cfg.grid.push_back(p);
        }
        break;
      case SweepVariable::power_rule:
        for (const auto& item : split(*grid_text, ','))
          if (!item.empty()) cfg.grid.push_back({item, {}, parse_rule("sweep.grid", item)});
        break;
      case SweepVariable::none:
        break;
    }
    if (cfg.grid.empty()) throw ConfigError("sweep.grid: empty grid");
  } else if (grid_text) {
    throw ConfigError("sweep.grid: given without sweep.variable");
  }

  cfg.check.n_patterns = kv.unsigned_int("check.patterns", cfg.check.n_patterns);
  cfg.check.random_centers = kv.unsigned_int("check.centers", cfg.check.random_centers);
  cfg.check.grid_spacing = kv.number("check.grid_spacing", cfg.check.grid_spacing);
  cfg.check.sigma_scale = kv.number("check.sigma_scale", cfg.check.sigma_scale);
  cfg.check.step_weights = kv.unsigned_int("check.step_weights", cfg.check.step_weights);
  cfg.check.shotnoise_radius = kv.number("check.radius", cfg.check.shotnoise_radius);
  if (cfg.check.n_patterns < 1) throw ConfigError("check.patterns: must be >= 1");
  if (!(cfg.check.sigma_scale >= 0.0)) throw ConfigError("check.sigma_scale: must be >= 0");
  if (cfg.check.grid_spacing < 0.0) throw ConfigError("check.grid_spacing: must be >= 0");
  if (!(cfg.check.shotnoise_radius > 0.0)) throw ConfigError("check.radius: must be positive");

  const auto guard = kv.optional_number("guard");
  kv.reject_unused();

  // Scenario-level validation, reported as configuration errors.
  try {
    for (std::size_t g = 0; g < cfg.grid_size(); ++g) cfg.scenario_at(g).validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  if (guard) {
    cfg.guard_explicit = true;
    s.window.guard = *guard;
  } else {
    const auto params = superpose_params(class_regulation_params(cfg.scenario_at(0)));
    const double scale = a_ell(params, cfg.model()).value;
    std::string warning;
    s.window.guard = default_guard(scale, cfg.guard_tolerance, cfg.alpha, s.window.radius, &warning);
    if (!warning.empty()) cfg.warnings.push_back(warning);
  }
  try {
    s.window.validate();
  } catch (const ParameterError& e) {
    throw ConfigError(std::string("guard: ") + e.what());
  }
  if (cfg.envelope_radius == 0.0) cfg.envelope_radius = s.window.radius;
  if (!(cfg.envelope_radius > 0.0)) throw ConfigError("envelope_radius: must be positive");
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

double ExperimentConfig::theta_db_at(std::size_t grid_index, std::size_t class_index) const {
  double ref = theta_ref_db;
  const bool swept = sweep_classes.empty() ||
                     std::find(sweep_classes.begin(), sweep_classes.end(), class_index) != sweep_classes.end();
  if (sweep_variable == SweepVariable::theta_db && swept) ref = grid.at(grid_index).values.front();
  return ref + theta_offset_db.at(class_index);
}

std::string ExperimentConfig::grid_label(std::size_t grid_index) const {
  return grid.empty() ? "base" : grid.at(grid_index).label;
}

NetworkScenario ExperimentConfig::scenario_at(std::size_t grid_index) const {
  NetworkScenario s = scenario;
  std::vector<std::size_t> swept = sweep_classes;
  if (swept.empty())
    for (std::size_t i = 0; i < s.classes.size(); ++i) swept.push_back(i);
  for (std::size_t i = 0; i < s.classes.size(); ++i) s.classes[i].theta = db_to_linear(theta_db_at(grid_index, i));
  if (grid.empty()) return s;
  const auto& p = grid.at(grid_index);
  for (std::size_t k = 0; k < swept.size(); ++k) {
    auto& c = s.classes[swept[k]];
    switch (sweep_variable) {
      case SweepVariable::beta:
        if (c.power_rule.kind == PowerRule::Kind::constant)
          throw ConfigError("sweep.variable: beta sweep over a constant-power class");
        c.power_rule.parameter = p.values.front();
        break;
      case SweepVariable::hardcore:
        c.hardcore_H = p.values.size() == 1 ? p.values.front() : p.values[k];
        break;
      case SweepVariable::power_rule:
        if (*p.rule == PowerRule::Kind::constant) {
          c.power_rule = PowerRule::constant(c.power_rule.kind == PowerRule::Kind::constant ? c.power_rule.parameter
                                                                                            : 1.0);
        } else {
          const double beta = c.power_rule.kind == PowerRule::Kind::constant ? 1.0 : c.power_rule.parameter;
          c.power_rule = {*p.rule, beta};
        }
        break;
      default:
        break;
    }
  }
  return s;
}

}  // namespace snc
