#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "snc/pathloss.hpp"
#include "snc/quadrature.hpp"

namespace snc {

/// Non-negative, bounded, non-increasing radial weight used by shot-noise
/// sums and regulation checks.
struct WeightFunction {
  std::string id;
  std::function<double(double)> eval;
  /// Interior radii where the weight is not smooth.
  std::vector<double> breakpoints;
  /// The weight vanishes for r >= support_end.
  double support_end = kInfinity;
  /// Decay exponent of an unbounded tail, w(r) = O(r^-decay).
  std::optional<double> tail_decay;
  /// Closed-form \int_0^R r^m w(r) dr when available.
  std::function<double(double, Moment)> exact_integral;

  double operator()(double r) const { return eval(r); }
  double value_at_zero() const { return eval(0.0); }
};

WeightFunction unit_weight();
/// Indicator of the open ball: 1 for r < radius, 0 otherwise.
WeightFunction step_weight(double radius);
WeightFunction pathloss_weight(const PathLossModel& model);

/// ln(1 + theta_i P_j l(r) / (P_i l(r0))): the weight that turns the
/// Rayleigh conditional success probability into a shot-noise sum.
/// Throws ConsistencyError when l(r0) = 0 (the serving link carries no power).
WeightFunction shotnoise_weight_ij(double theta_i, double P_i, double P_j, double ell_r0,
                                   const PathLossModel& model);

/// \int_0^R r^m w(r) dr; uses the closed form when present and the tail
/// policy allows it, otherwise piecewise Gauss-Kronrod with a mapped tail.
double weight_integral(const WeightFunction& w, double R, Moment m, const QuadratureConfig& cfg = {});

/// Samples the weight on a dense grid over [0, r_max] and throws
/// DomainError if it increases or is negative anywhere.
void require_non_increasing(const WeightFunction& w, double r_max, int samples = 4096);

}  // namespace snc
