#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "snc/point_pattern.hpp"
#include "snc/weight.hpp"

namespace snc {

/// (sigma, rho, nu) ball-regulation triple: total power inside any disc of
/// radius r is at most sigma + rho r + nu r^2.
struct RegulationParams {
  double sigma = 0.0;  // power
  double rho = 0.0;    // power / length
  double nu = 0.0;     // power / length^2

  void validate() const;
  double envelope(double r) const { return sigma + rho * r + nu * r * r; }
  RegulationParams scaled(double sigma_scale, double rho_scale = 1.0, double nu_scale = 1.0) const {
    return {sigma * sigma_scale, rho * rho_scale, nu * nu_scale};
  }
  friend bool operator==(const RegulationParams&, const RegulationParams&) = default;
};

/// Constants for a Matern-II hardcore process with constant mark P and
/// hardcore distance H: (P, 2 pi P / (sqrt(12) H), pi P / (sqrt(12) H^2)).
RegulationParams mhcpp_regulation_params(double P, double H);

/// Componentwise sum; the superposition of regulated processes is regulated
/// by the summed constants.
RegulationParams superpose_params(std::span<const RegulationParams> parts);

/// One tested (center, radius or weight) case.
struct CheckCase {
  Point2 center{};
  double radius = 0.0;  // jump radius for ball checks, truncation radius R for shot noise
  double measured = 0.0;
  double bound = 0.0;
  double margin = 0.0;     // bound - measured
  double tolerance = 0.0;  // floating-point allowance for this case
};

struct ComplianceReport {
  bool compliant = true;
  /// Margin of the tightest case: the one minimizing margin + tolerance,
  /// so compliant <=> worst_margin >= -tolerance.
  double worst_margin = kInfinity;
  double tolerance = 0.0;
  CheckCase witness{};
  std::string weight_id;  // "ball" for ball checks
  std::size_t centers_checked = 0;
  std::size_t violating_centers = 0;
  /// Tightest case per center, filled when requested.
  std::vector<CheckCase> per_center;
};

struct CheckOptions {
  bool keep_per_center = false;
  /// Relative floating-point allowance on each bound.
  double rel_tol = 1e-9;
};

/// Ball regulation at every jump radius around each center. P_total(y, .)
/// is a step function and the envelope is increasing, so checking the
/// cumulative power at each point distance is exact.
ComplianceReport check_ball_regulation(const MarkedPointPattern& pattern, const RegulationParams& params,
                                       std::span<const Point2> centers, const CheckOptions& opts = {});

/// Ball regulation at the single radius R (open ball).
ComplianceReport check_ball_at_radius(const MarkedPointPattern& pattern, const RegulationParams& params,
                                      std::span<const Point2> centers, double R,
                                      const CheckOptions& opts = {});

/// Shot-noise regulation: sum over |x - y| < R of P_x w(|x - y|) against
/// sigma w(0) + rho \int_0^R w + 2 nu \int_0^R r w. R may be +inf.
ComplianceReport check_shotnoise_regulation(const MarkedPointPattern& pattern, const RegulationParams& params,
                                            const WeightFunction& weight, std::span<const Point2> centers,
                                            double R, const CheckOptions& opts = {},
                                            const QuadratureConfig& quad = {});

/// Same check with precomputed \int_0^R w and \int_0^R r w.
ComplianceReport check_shotnoise_regulation(const MarkedPointPattern& pattern, const RegulationParams& params,
                                            const WeightFunction& weight, std::span<const Point2> centers,
                                            double R, double integral_unit, double integral_radial,
                                            const CheckOptions& opts = {});

/// Exact shot noise sum_{|x - y| < R} P_x w(|x - y|).
double exact_shotnoise(const MarkedPointPattern& pattern, Point2 center, const WeightFunction& weight, double R);

/// Step-function upper bound from n concentric annuli of width R/n:
/// sum_k w(r_{k-1}) (P_total(y, r_k) - P_total(y, r_{k-1})).
double annuli_shotnoise_bound(const MarkedPointPattern& pattern, Point2 center, const WeightFunction& weight,
                              double R, std::int64_t n);

/// Square grid of centers with the given spacing covering the disc.
std::vector<Point2> grid_centers(Point2 center, double radius, double spacing);
/// Uniform random centers in the disc.
std::vector<Point2> random_centers(Point2 center, double radius, std::size_t count, std::uint64_t seed);

/// CSV rows: label,center_x,center_y,radius_or_weight,measured,bound,margin.
void write_compliance_csv(std::ostream& os, const ComplianceReport& report, const std::string& label,
                          bool header);

}  // namespace snc
