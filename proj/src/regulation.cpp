#include "snc/regulation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "snc/csv.hpp"
#include "snc/error.hpp"
#include "snc/rng.hpp"

namespace snc {
namespace {

const double kSqrt12 = std::sqrt(12.0);

struct Tracker {
  const CheckOptions& opts;
  ComplianceReport report;
  CheckCase center_best{};
  bool center_has_case = false;
  bool center_violated = false;

  void begin_center() {
    center_has_case = false;
    center_violated = false;
  }
  void add(const CheckCase& c) {
    const double slack = c.margin + c.tolerance;
    if (!center_has_case || slack < center_best.margin + center_best.tolerance) center_best = c;
    center_has_case = true;
    if (slack < 0.0) center_violated = true;
  }
  void end_center() {
    ++report.centers_checked;
    if (!center_has_case) return;
    if (center_violated) {
      ++report.violating_centers;
      report.compliant = false;
    }
    if (report.centers_checked == 1 || center_best.margin + center_best.tolerance <
                                           report.worst_margin + report.tolerance) {
      report.witness = center_best;
      report.worst_margin = center_best.margin;
      report.tolerance = center_best.tolerance;
    }
    if (opts.keep_per_center) report.per_center.push_back(center_best);
  }
};

}  // namespace

void RegulationParams::validate() const {
  if (!(sigma >= 0.0) || !(rho >= 0.0) || !(nu >= 0.0))
    throw ParameterError("regulation parameters must be non-negative");
}

RegulationParams mhcpp_regulation_params(double P, double H) {
  if (!(H > 0.0)) throw ParameterError("hardcore distance must be positive");
  if (!(P >= 0.0)) throw ParameterError("transmit power must be >= 0");
  return {P, 2.0 * std::numbers::pi * P / (kSqrt12 * H), std::numbers::pi * P / (kSqrt12 * H * H)};
}

RegulationParams superpose_params(std::span<const RegulationParams> parts) {
  if (parts.empty()) throw ParameterError("superpose_params: empty list");
  RegulationParams out;
  for (const auto& p : parts) {
    p.validate();
    out.sigma += p.sigma;
    out.rho += p.rho;
    out.nu += p.nu;
  }
  return out;
}

ComplianceReport check_ball_regulation(const MarkedPointPattern& pattern, const RegulationParams& params,
                                       std::span<const Point2> centers, const CheckOptions& opts) {
  params.validate();
  Tracker t{opts, {}};
  t.report.weight_id = "ball";
  const double total = pattern.total_power();
  // Beyond this radius the envelope exceeds the pattern's total power.
  double r_stop = kInfinity;
  if (params.nu > 0.0 || params.rho > 0.0 || params.sigma >= total) {
    double lo = 0.0, hi = 1.0;
    while (params.envelope(hi) < total) hi *= 2.0;
    for (int it = 0; it < 100 && params.envelope(lo) < total; ++it) {
      const double mid = 0.5 * (lo + hi);
      (params.envelope(mid) < total ? lo : hi) = mid;
    }
    r_stop = hi;
  }
  std::vector<std::pair<double, double>> near;  // (d^2, P)
  for (const auto& y : centers) {
    t.begin_center();
    t.add({y, 0.0, 0.0, params.sigma, params.sigma, opts.rel_tol * params.sigma});
    near.clear();
    for (const auto& p : pattern.points) {
      const double d2 = distance_sq(p.location, y);
      if (d2 <= r_stop * r_stop) near.emplace_back(d2, p.power);
    }
    std::sort(near.begin(), near.end());
    double cum = 0.0;
    for (std::size_t k = 0; k < near.size(); ++k) {
      cum += near[k].second;
      if (k + 1 < near.size() && near[k + 1].first == near[k].first) continue;  // ties jump together
      const double r = std::sqrt(near[k].first);
      const double bound = params.envelope(r);
      t.add({y, r, cum, bound, bound - cum, opts.rel_tol * bound});
    }
    t.end_center();
  }
  return t.report;
}

ComplianceReport check_ball_at_radius(const MarkedPointPattern& pattern, const RegulationParams& params,
                                      std::span<const Point2> centers, double R, const CheckOptions& opts) {
  params.validate();
  if (!(R >= 0.0) || std::isinf(R)) throw ParameterError("ball radius must be finite and >= 0");
  Tracker t{opts, {}};
  t.report.weight_id = "ball@R";
  const double bound = params.sigma * 1.0 + params.rho * R + 2.0 * params.nu * (0.5 * R * R);
  for (const auto& y : centers) {
    t.begin_center();
    double measured = 0.0;
    for (const auto& p : pattern.points)
      if (distance(p.location, y) < R) measured += p.power * 1.0;
    t.add({y, R, measured, bound, bound - measured, opts.rel_tol * bound});
    t.end_center();
  }
  return t.report;
}

ComplianceReport check_shotnoise_regulation(const MarkedPointPattern& pattern, const RegulationParams& params,
                                            const WeightFunction& weight, std::span<const Point2> centers,
                                            double R, double integral_unit, double integral_radial,
                                            const CheckOptions& opts) {
  params.validate();
  Tracker t{opts, {}};
  t.report.weight_id = weight.id;
  const double bound = params.sigma * weight.value_at_zero() + params.rho * integral_unit +
                       2.0 * params.nu * integral_radial;
  for (const auto& y : centers) {
    t.begin_center();
    const double measured = exact_shotnoise(pattern, y, weight, R);
    t.add({y, R, measured, bound, bound - measured, opts.rel_tol * bound});
    t.end_center();
  }
  return t.report;
}

ComplianceReport check_shotnoise_regulation(const MarkedPointPattern& pattern, const RegulationParams& params,
                                            const WeightFunction& weight, std::span<const Point2> centers,
                                            double R, const CheckOptions& opts, const QuadratureConfig& quad) {
  if (!(R > 0.0)) throw ParameterError("shot-noise truncation radius must be positive");
  const double span = std::isfinite(R) ? R : 2.0 * pattern.window.radius + 1.0;
  require_non_increasing(weight, span);
  const double i0 = weight_integral(weight, R, Moment::unit, quad);
  const double i1 = weight_integral(weight, R, Moment::radial, quad);
  return check_shotnoise_regulation(pattern, params, weight, centers, R, i0, i1, opts);
}

double exact_shotnoise(const MarkedPointPattern& pattern, Point2 center, const WeightFunction& weight, double R) {
  double s = 0.0;
  for (const auto& p : pattern.points) {
    const double d = distance(p.location, center);
    if (d < R) s += p.power * weight(d);
  }
  return s;
}

double annuli_shotnoise_bound(const MarkedPointPattern& pattern, Point2 center, const WeightFunction& weight,
                              double R, std::int64_t n) {
  if (n < 1) throw ParameterError("annuli count must be >= 1");
  if (!(R > 0.0) || std::isinf(R)) throw ParameterError("annuli radius must be finite and positive");
  const double width = R / static_cast<double>(n);
  double s = 0.0;
  for (const auto& p : pattern.points) {
    const double d = distance(p.location, center);
    if (!(d < R)) continue;
    auto k = static_cast<std::int64_t>(std::floor(d / width));
    k = std::clamp<std::int64_t>(k, 0, n - 1);
    if (static_cast<double>(k) * width > d) --k;  // guard against rounding up
    s += p.power * weight(static_cast<double>(k) * width);
  }
  return s;
}

std::vector<Point2> grid_centers(Point2 center, double radius, double spacing) {
  if (!(spacing > 0.0)) throw ParameterError("grid spacing must be positive");
  std::vector<Point2> out;
  const auto n = static_cast<std::int64_t>(std::floor(radius / spacing));
  for (std::int64_t i = -n; i <= n; ++i)
    for (std::int64_t j = -n; j <= n; ++j) {
      const Point2 p{center.x + static_cast<double>(i) * spacing, center.y + static_cast<double>(j) * spacing};
      if (distance_sq(p, center) <= radius * radius) out.push_back(p);
    }
  return out;
}

std::vector<Point2> random_centers(Point2 center, double radius, std::size_t count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Point2> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double r = radius * std::sqrt(uniform01(rng));
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    out.push_back({center.x + r * std::cos(phi), center.y + r * std::sin(phi)});
  }
  return out;
}

void write_compliance_csv(std::ostream& os, const ComplianceReport& report, const std::string& label,
                          bool header) {
  if (header) os << "label,center_x,center_y,radius_or_weight,measured,bound,margin\n";
  auto row = [&](const CheckCase& c) {
    os << label << ',' << csv::num(c.center.x) << ',' << csv::num(c.center.y) << ',' << report.weight_id << '@'
       << csv::num(c.radius) << ',' << csv::num(c.measured) << ',' << csv::num(c.bound) << ','
       << csv::num(c.margin) << '\n';
  };
  if (report.per_center.empty())
    row(report.witness);
  else
    for (const auto& c : report.per_center) row(c);
}

}  // namespace snc
