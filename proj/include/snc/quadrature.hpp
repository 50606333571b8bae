#pragma once

#include <functional>

namespace snc {

enum class TailPolicy {
  analytic_for_power_law,  // closed-form tails wherever the model provides them
  adaptive_truncation,     // always integrate numerically
};

struct QuadratureConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  TailPolicy tail_policy = TailPolicy::analytic_for_power_law;
  int max_subintervals = 4000;

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;
  int subintervals = 0;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod quadrature on a finite interval.
/// Nodes never touch the endpoints, so integrable endpoint singularities are
/// tolerated (at reduced convergence speed).
QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg = {});

/// Integral of f over [a, inf) for a > 0 and f(r) = O(r^-decay), decay > 1.
/// Uses the substitution r = a t^(-1/(decay-1)), which maps a pure power
/// tail to a bounded integrand on (0, 1].
QuadratureResult integrate_tail(const Integrand& f, double a, double decay,
                                const QuadratureConfig& cfg = {});

}  // namespace snc
