#pragma once

#include "snc/quadrature.hpp"

namespace snc {

/// Gauss hypergeometric 2F1(a, 1; a + 1; z) for 0 < a < 1 and z <= 0.
///
/// Evaluated from a \int_0^1 t^(a-1) / (1 - z t) dt after the substitution
/// u = t^a, which removes the endpoint singularity:
///   2F1(a, 1; a + 1; z) = \int_0^1 du / (1 - z u^(1/a)).
double gauss_2f1_a1(double a, double z, const QuadratureConfig& cfg = {});

}  // namespace snc
