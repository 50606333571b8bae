#include "snc/pathloss.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "snc/error.hpp"

namespace snc {
namespace {

const char* moment_name(Moment m) { return m == Moment::unit ? "\\int l(r) dr" : "\\int r l(r) dr"; }

// \int_a^b r^m r^-p dr for 0 < a <= b (b may be inf).
double power_integral(double a, double b, int m, double p) {
  const double e = static_cast<double>(m) + 1.0 - p;
  if (e == 0.0) return std::log(b / a);
  if (std::isinf(b)) return -std::pow(a, e) / e;
  return (std::pow(b, e) - std::pow(a, e)) / e;
}

}  // namespace

PathLossModel PathLossModel::bounded_power_law(double alpha) {
  if (!(alpha > 0.0) || !std::isfinite(alpha))
    throw ParameterError("path-loss exponent must be positive and finite");
  PathLossModel m;
  m.kind_ = Kind::bounded_power_law;
  m.alpha_ = alpha;
  const double half = alpha / 2.0;
  if (half == std::floor(half) && half >= 1.0 && half <= 8.0) m.half_alpha_int_ = static_cast<int>(half);
  return m;
}

PathLossModel PathLossModel::table(std::vector<double> radii, std::vector<double> values,
                                   std::optional<double> tail_exponent) {
  if (radii.size() < 2 || radii.size() != values.size())
    throw ParameterError("path-loss table needs >= 2 matching radius/value samples");
  if (radii.front() != 0.0) throw ParameterError("path-loss table must start at r = 0");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!std::isfinite(radii[i]) || !std::isfinite(values[i]) || values[i] < 0.0)
      throw ParameterError("path-loss table samples must be finite and non-negative");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw ParameterError("path-loss table radii must increase strictly");
    if (i > 0 && values[i] > values[i - 1])
      throw ParameterError("path-loss table values must be non-increasing");
  }
  if (tail_exponent && (!(*tail_exponent > 0.0) || !std::isfinite(*tail_exponent)))
    throw ParameterError("path-loss table tail exponent must be positive");
  PathLossModel m;
  m.kind_ = Kind::table;
  m.alpha_ = tail_exponent.value_or(0.0);
  m.radii_ = std::move(radii);
  m.values_ = std::move(values);
  m.tail_ = tail_exponent;
  return m;
}

double PathLossModel::value_at_zero() const {
  return kind_ == Kind::bounded_power_law ? 1.0 : values_.front();
}

std::optional<double> PathLossModel::tail_exponent() const {
  if (kind_ == Kind::bounded_power_law) return alpha_;
  return tail_;
}

std::vector<double> PathLossModel::breakpoints() const {
  if (kind_ == Kind::bounded_power_law) return {1.0};
  return {radii_.begin() + 1, radii_.end()};
}

double PathLossModel::operator()(double r) const {
  if (!(r >= 0.0)) throw ParameterError("path loss evaluated at negative distance");
  if (kind_ == Kind::bounded_power_law) return r <= 1.0 ? 1.0 : std::pow(r, -alpha_);
  if (r >= radii_.back()) {
    if (!tail_) return r == radii_.back() ? values_.back() : 0.0;
    return values_.back() * std::pow(r / radii_.back(), -*tail_);
  }
  const auto it = std::upper_bound(radii_.begin(), radii_.end(), r);
  const auto i = static_cast<std::size_t>(it - radii_.begin()) - 1;
  const double t = (r - radii_[i]) / (radii_[i + 1] - radii_[i]);
  return values_[i] + t * (values_[i + 1] - values_[i]);
}

double PathLossModel::from_distance_sq(double d2) const {
  if (kind_ != Kind::bounded_power_law) return (*this)(std::sqrt(d2));
  if (d2 <= 1.0) return 1.0;
  if (half_alpha_int_ > 0) {
    const double inv = 1.0 / d2;
    double v = inv;
    for (int k = 1; k < half_alpha_int_; ++k) v *= inv;
    return v;
  }
  return std::pow(d2, -0.5 * alpha_);
}

double PathLossModel::exact_integral(double R, Moment m) const {
  if (!(R >= 0.0)) throw ParameterError("integration radius must be >= 0");
  const int mi = static_cast<int>(m);
  if (R == 0.0) return 0.0;
  const auto need = static_cast<double>(mi) + 1.0;
  if (std::isinf(R)) {
    const auto tail = tail_exponent();
    if (tail && !(*tail > need))
      throw DivergenceError(std::string("divergent tail in ") + moment_name(m) + ": decay exponent " +
                            std::to_string(*tail) + " must exceed " + std::to_string(need));
  }
  if (kind_ == Kind::bounded_power_law) {
    const double head = mi == 0 ? std::min(R, 1.0) : 0.5 * std::min(R, 1.0) * std::min(R, 1.0);
    if (R <= 1.0) return head;
    return head + power_integral(1.0, R, mi, alpha_);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < radii_.size(); ++i) {
    const double a = radii_[i];
    if (a >= R) break;
    const double b = std::min(R, radii_[i + 1]);
    const double slope = (values_[i + 1] - values_[i]) / (radii_[i + 1] - radii_[i]);
    const double va = values_[i];
    // integrand r^m (va + slope (r - a)) on [a, b]
    if (mi == 0) {
      sum += va * (b - a) + 0.5 * slope * (b - a) * (b - a);
    } else {
      const double c0 = va - slope * a;
      sum += c0 * 0.5 * (b * b - a * a) + slope * (b * b * b - a * a * a) / 3.0;
    }
  }
  if (R > radii_.back() && tail_) {
    const double rl = radii_.back();
    sum += values_.back() * std::pow(rl, *tail_) * power_integral(rl, R, mi, *tail_);
  }
  return sum;
}

double eval_pathloss(const PathLossModel& model, double r) { return model(r); }

double integral_ell(const PathLossModel& model, double R, Moment weight, const QuadratureConfig& cfg) {
  cfg.validate();
  if (cfg.tail_policy == TailPolicy::analytic_for_power_law) return model.exact_integral(R, weight);
  if (!(R >= 0.0)) throw ParameterError("integration radius must be >= 0");
  if (R == 0.0) return 0.0;
  const int mi = static_cast<int>(weight);
  auto f = [&](double r) { return (mi == 0 ? 1.0 : r) * model(r); };
  std::vector<double> cuts{0.0};
  for (double b : model.breakpoints())
    if (b < R) cuts.push_back(b);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += integrate(f, cuts[i], cuts[i + 1], cfg).value;
  const double last = cuts.back();
  if (std::isfinite(R)) return sum + integrate(f, last, R, cfg).value;
  const auto tail = model.tail_exponent();
  if (!tail) return sum;
  const double decay = *tail - static_cast<double>(mi);
  if (!(decay > 1.0))
    throw DivergenceError(std::string("divergent tail in ") + moment_name(weight));
  return sum + integrate_tail(f, last > 0.0 ? last : 1.0, decay, cfg).value;
}

}  // namespace snc
