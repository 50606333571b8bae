#include "snc/hypergeometric.hpp"

#include <cmath>

#include "snc/error.hpp"

namespace snc {

double gauss_2f1_a1(double a, double z, const QuadratureConfig& cfg) {
  if (!(a > 0.0 && a < 1.0)) throw DomainError("gauss_2f1_a1: a must lie in (0, 1)");
  if (!(z <= 0.0) || !std::isfinite(z)) throw DomainError("gauss_2f1_a1: z must be finite and <= 0");
  if (z == 0.0) return 1.0;
  const double inv_a = 1.0 / a;
  auto f = [=](double u) { return 1.0 / (1.0 - z * std::pow(u, inv_a)); };
  return integrate(f, 0.0, 1.0, cfg).value;
}

}  // namespace snc
