#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "snc/pathloss.hpp"
#include "snc/regulation.hpp"
#include "snc/scenario.hpp"

namespace snc {

enum class AellMethod { closed_form_2f1, quadrature };

/// sigma w(0) + rho \int_0^inf w + 2 nu \int_0^inf r w, with its terms.
struct AellResult {
  double value = 0.0;
  double sigma_term = 0.0;
  double rho_term = 0.0;
  double nu_term = 0.0;
  AellMethod method = AellMethod::quadrature;
};

/// A_l for the path loss itself: the worst-case received power budget.
AellResult a_ell(const RegulationParams& params, const PathLossModel& model, const QuadratureConfig& cfg = {});

/// A for the weight ln(1 + theta_i P_j l(r) / (P_i l(r0))) under class-j
/// regulation constants. The closed form is available for the bounded
/// power law only.
AellResult a_ell_tilde(double theta_i, double P_i, double P_j, double r0, const PathLossModel& model,
                       const RegulationParams& params_j, AellMethod method, const QuadratureConfig& cfg = {});

struct NoFadingBound {
  double interference_upper = 0.0;
  /// +inf when the budget leaves no room for interference.
  double sinr_lower = 0.0;
};

/// Per class: I_i <= sum_j A_{l,j} - P_i l(r0), SINR_i >= P_i l(r0) / that.
std::vector<NoFadingBound> nofading_bounds(const NetworkScenario& scenario, const PathLossModel& model,
                                           const QuadratureConfig& cfg = {});

/// min(1, exp(-theta (W + A_l) / (P l(r0)) + theta)).
double rayleigh_ps_lower_singleclass(double P, double theta, double W, double r0, const PathLossModel& model,
                                     const RegulationParams& params, const QuadratureConfig& cfg = {});

struct ClassBound {
  int class_id = 0;
  double power = 0.0;
  double ps_lower = 0.0;             // per-class bound with the A_{l~ij} terms
  double ps_lower_simplified = 0.0;  // single-class bound under the superposed constants
  double sinr_lower_nofading = 0.0;
  double interference_upper_nofading = 0.0;
  double exponent = 0.0;  // theta_i W / (P_i l(r0)) + sum_j A_{l~ij}
};

struct PowerEnvelope {
  double c0 = 0.0, c1 = 0.0, c2 = 0.0;
  double at(double r) const { return c0 + c1 * r + c2 * r * r; }
};

struct BoundReport {
  std::vector<ClassBound> per_class;
  double ps_min = 0.0;
  PowerEnvelope total_power_envelope;
  /// Messages about clipped or degenerate values.
  std::vector<std::string> diagnostics;
};

/// Regulation constants used for the A_{l~ij} terms. The sum of l~ij runs
/// over points without their power mark (P_j already sits inside l~ij), so
/// the unit-mark constants (1, 2 pi/(sqrt(12) H_j), pi/(sqrt(12) H_j^2))
/// are the ones that bound it. power_scaled multiplies them by P_j, which
/// undercounts the sum whenever P_j < 1.
enum class TildeRegulation { unit_mark, power_scaled };

BoundReport rayleigh_ps_lower_multiclass(const NetworkScenario& scenario, const PathLossModel& model,
                                         AellMethod method = AellMethod::closed_form_2f1,
                                         TildeRegulation tilde = TildeRegulation::unit_mark,
                                         const QuadratureConfig& cfg = {});

/// Coefficients of P_total(o, r) <= c0 + c1 r + c2 r^2 for the superposed
/// classes under their active power rules.
PowerEnvelope total_power_envelope(const NetworkScenario& scenario);

/// Hardcore regulation constants of every class, in class order.
std::vector<RegulationParams> class_regulation_params(const NetworkScenario& scenario);

}  // namespace snc
