#pragma once

#include <limits>
#include <optional>
#include <vector>

#include "snc/quadrature.hpp"

namespace snc {

/// Radial weight applied inside the path-loss integrals: 1 gives
/// \int l(r) dr, radial gives \int r l(r) dr.
enum class Moment { unit = 0, radial = 1 };

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Bounded, non-increasing path-loss gain l(r).
///
/// Two kinds are supported:
///  - bounded power law l(r) = min{1, r^-alpha};
///  - a table of non-increasing samples, linearly interpolated, continued
///    either by a declared power-law tail or by zero (compact support).
class PathLossModel {
 public:
  enum class Kind { bounded_power_law, table };

  static PathLossModel bounded_power_law(double alpha);
  /// radii must start at 0 and increase strictly; values must be
  /// non-negative and non-increasing. With tail_exponent set, beyond the
  /// last radius l(r) = v_last (r / r_last)^-tail_exponent; otherwise 0.
  static PathLossModel table(std::vector<double> radii, std::vector<double> values,
                             std::optional<double> tail_exponent = std::nullopt);

  Kind kind() const { return kind_; }
  double alpha() const { return alpha_; }
  double value_at_zero() const;
  /// Decay rate of the tail, or nullopt for compact support.
  std::optional<double> tail_exponent() const;
  /// Radii where l is not smooth, in increasing order.
  std::vector<double> breakpoints() const;
  /// l(r); r must be >= 0.
  double operator()(double r) const;
  /// l(sqrt(d2)) without the square root where the kind allows it.
  double from_distance_sq(double d2) const;
  /// Closed-form \int_0^R r^m l(r) dr (R may be +inf).
  double exact_integral(double R, Moment m) const;

 private:
  Kind kind_ = Kind::bounded_power_law;
  double alpha_ = 4.0;
  int half_alpha_int_ = 0;  // alpha/2 when it is a small integer, else 0
  std::vector<double> radii_;
  std::vector<double> values_;
  std::optional<double> tail_;
};

double eval_pathloss(const PathLossModel& model, double r);

/// \int_0^R l(r) dr or \int_0^R r l(r) dr. Power-law tails are integrated
/// analytically unless the config asks for adaptive truncation, in which
/// case the same value is obtained by quadrature.
double integral_ell(const PathLossModel& model, double R, Moment weight,
                    const QuadratureConfig& cfg = {});

}  // namespace snc
