#include "snc/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "snc/error.hpp"

namespace snc {
namespace {

// Kronrod 15 abscissae (positive half, descending) and weights; Gauss 7
// weights apply to the odd-indexed Kronrod nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk15(const Integrand& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double kron = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = h * kXgk[static_cast<std::size_t>(j)];
    const double s = f(c - dx) + f(c + dx);
    kron += kWgk[static_cast<std::size_t>(j)] * s;
    if (j % 2 == 1) gauss += kWg[static_cast<std::size_t>(j / 2)] * s;
  }
  kron *= h;
  gauss *= h;
  return {a, b, kron, std::abs(kron - gauss)};
}

}  // namespace

void QuadratureConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
    throw ParameterError("quadrature tolerances must be positive");
  if (max_subintervals < 1) throw ParameterError("quadrature needs at least one subinterval");
}

QuadratureResult integrate(const Integrand& f, double a, double b, const QuadratureConfig& cfg) {
  cfg.validate();
  if (a == b) return {};
  if (!std::isfinite(a) || !std::isfinite(b))
    throw ParameterError("integrate: bounds must be finite (use integrate_tail)");
  const double sign = b < a ? -1.0 : 1.0;
  if (b < a) std::swap(a, b);

  std::priority_queue<Segment> heap;
  auto first = gk15(f, a, b);
  double total = first.value;
  double err = first.error;
  heap.push(first);
  int count = 1;
  while (err > std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)) && count < cfg.max_subintervals) {
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // interval exhausted at double precision
      heap.push(worst);
      break;
    }
    const auto left = gk15(f, worst.a, mid);
    const auto right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  // Re-sum to drop the cancellation noise accumulated by the running totals.
  double value = 0.0;
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  return {sign * value, error, count};
}

QuadratureResult integrate_tail(const Integrand& f, double a, double decay,
                                const QuadratureConfig& cfg) {
  if (!(a > 0.0)) throw ParameterError("integrate_tail: lower bound must be positive");
  if (!(decay > 1.0)) throw DivergenceError("integrate_tail: integrand decay exponent must exceed 1");
  const double k = 1.0 / (decay - 1.0);
  auto mapped = [&](double t) {
    const double r = a * std::pow(t, -k);
    if (!std::isfinite(r)) return 0.0;
    return f(r) * k * r / t;
  };
  return integrate(mapped, 0.0, 1.0, cfg);
}

}  // namespace snc
