#include "snc/weight.hpp"

#include <cmath>
#include <cstdio>

#include "snc/error.hpp"

namespace snc {
namespace {

std::string fmt_num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace

WeightFunction unit_weight() {
  WeightFunction w;
  w.id = "unit";
  w.eval = [](double) { return 1.0; };
  w.tail_decay = 0.0;
  w.exact_integral = [](double R, Moment m) {
    if (std::isinf(R)) throw DivergenceError("unit weight has no finite integral over [0, inf)");
    return m == Moment::unit ? R : 0.5 * R * R;
  };
  return w;
}

WeightFunction step_weight(double radius) {
  if (!(radius > 0.0)) throw ParameterError("step weight radius must be positive");
  WeightFunction w;
  w.id = "step:" + fmt_num(radius);
  w.eval = [radius](double r) { return r < radius ? 1.0 : 0.0; };
  w.support_end = radius;
  w.exact_integral = [radius](double R, Moment m) {
    const double b = std::min(R, radius);
    return m == Moment::unit ? b : 0.5 * b * b;
  };
  return w;
}

WeightFunction pathloss_weight(const PathLossModel& model) {
  WeightFunction w;
  w.id = model.kind() == PathLossModel::Kind::bounded_power_law ? "pathloss:alpha=" + fmt_num(model.alpha())
                                                                 : "pathloss:table";
  w.eval = [model](double r) { return model(r); };
  w.breakpoints = model.breakpoints();
  w.tail_decay = model.tail_exponent();
  if (!w.tail_decay) w.support_end = w.breakpoints.back();
  w.exact_integral = [model](double R, Moment m) { return model.exact_integral(R, m); };
  return w;
}

WeightFunction shotnoise_weight_ij(double theta_i, double P_i, double P_j, double ell_r0,
                                   const PathLossModel& model) {
  if (!(theta_i >= 0.0) || !(P_j >= 0.0)) throw ParameterError("shot-noise weight: theta_i, P_j must be >= 0");
  if (!(P_i > 0.0)) throw ParameterError("shot-noise weight: serving power P_i must be positive");
  if (!(ell_r0 > 0.0)) throw ConsistencyError("degenerate link: l(r0) = 0");
  const double c = theta_i * P_j / (P_i * ell_r0);
  WeightFunction w;
  w.id = "lt:c=" + fmt_num(c);
  w.eval = [model, c](double r) { return std::log1p(c * model(r)); };
  w.breakpoints = model.breakpoints();
  w.tail_decay = model.tail_exponent();
  if (!w.tail_decay) w.support_end = w.breakpoints.back();
  if (c == 0.0) w.exact_integral = [](double, Moment) { return 0.0; };
  return w;
}

double weight_integral(const WeightFunction& w, double R, Moment m, const QuadratureConfig& cfg) {
  cfg.validate();
  if (!(R >= 0.0)) throw ParameterError("integration radius must be >= 0");
  if (R == 0.0) return 0.0;
  if (w.exact_integral && cfg.tail_policy == TailPolicy::analytic_for_power_law) return w.exact_integral(R, m);

  const double end = std::min(R, w.support_end);
  const int mi = static_cast<int>(m);
  auto f = [&](double r) { return (mi == 0 ? 1.0 : r) * w.eval(r); };
  std::vector<double> cuts{0.0};
  for (double b : w.breakpoints)
    if (b > cuts.back() && b < end) cuts.push_back(b);
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += integrate(f, cuts[i], cuts[i + 1], cfg).value;
  if (std::isfinite(end)) return sum + integrate(f, cuts.back(), end, cfg).value;

  const double decay = w.tail_decay.value_or(0.0) - static_cast<double>(mi);
  if (!(decay > 1.0))
    throw DivergenceError("weight '" + w.id + "' has a divergent " +
                          (m == Moment::unit ? "\\int w(r) dr" : "\\int r w(r) dr") + " tail");
  double start = cuts.back();
  if (start <= 0.0) {
    sum += integrate(f, 0.0, 1.0, cfg).value;
    start = 1.0;
  }
  return sum + integrate_tail(f, start, decay, cfg).value;
}

void require_non_increasing(const WeightFunction& w, double r_max, int samples) {
  double prev = w.eval(0.0);
  if (!(prev >= 0.0) || !std::isfinite(prev))
    throw DomainError("weight '" + w.id + "' must be finite and non-negative");
  for (int k = 1; k <= samples; ++k) {
    const double r = r_max * static_cast<double>(k) / static_cast<double>(samples);
    const double v = w.eval(r);
    if (!(v >= 0.0)) throw DomainError("weight '" + w.id + "' is negative at r=" + fmt_num(r));
    if (v > prev * (1.0 + 1e-12) + 1e-300)
      throw DomainError("weight '" + w.id + "' is not non-increasing near r=" + fmt_num(r));
    prev = v;
  }
}

}  // namespace snc
