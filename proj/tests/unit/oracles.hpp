#pragma once
// Independent reference computations built on Boost quadrature. Nothing here
// calls into the library's own integrators.

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>

namespace oracle {

template <class F>
double finite(F f, double a, double b) {
  if (b <= a) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-14);
}

template <class F>
double tail(F f, double a) {
  boost::math::quadrature::exp_sinh<double> es;
  return es.integrate([&](double t) { return f(a + t); }, 0.0, std::numeric_limits<double>::infinity());
}

// ∫_0^R w(r) r^m dr for ℓ(r) = min{1, r^-α}, split at the kink.
inline double ell_moment(double alpha, double R, int m) {
  auto ell = [alpha](double r) { return r <= 1.0 ? 1.0 : std::pow(r, -alpha); };
  auto f = [&](double r) { return ell(r) * std::pow(r, m); };
  double v = finite(f, 0.0, std::min(R, 1.0));
  if (R > 1.0) v += std::isinf(R) ? tail(f, 1.0) : finite(f, 1.0, R);
  return v;
}

// Euler integral 2F1(1,a;a+1;z) = a ∫_0^1 t^(a-1)/(1-zt) dt, via tanh-sinh.
inline double hyp2f1_a1(double a, double z) {
  boost::math::quadrature::tanh_sinh<double> ts;
  return a * ts.integrate([&](double t) { return std::pow(t, a - 1.0) / (1.0 - z * t); }, 0.0, 1.0);
}

// Pfaff-transformed series, convergent for z <= 0:
// 2F1(1,a;a+1;z) = (1-z)^-1 Σ_n (1)_n (1)_n/((a+1)_n n!) w^n  with w = z/(z-1);
// the coefficient ratio is (n+1)/(a+1+n).
inline double hyp2f1_a1_pfaff(double a, double z) {
  const double w = z / (z - 1.0);
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 2000000; ++n) {
    term *= (n + 1.0) / (a + 1.0 + n) * w;
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return sum / (1.0 - z);
}

}  // namespace oracle
