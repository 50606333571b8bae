#include "snc/point_pattern.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "snc/error.hpp"
#include "snc/rng.hpp"
#include "spatial_grid.hpp"

namespace snc {

void SimulationWindow::validate() const {
  if (!is_finite(center)) throw ParameterError("window center must be finite");
  if (!(guard >= 0.0)) throw ParameterError("window guard must be >= 0");
  if (!(radius > guard)) throw ParameterError("window radius must exceed the guard width");
}

double MarkedPointPattern::total_power() const {
  double s = 0.0;
  for (const auto& p : points) s += p.power;
  return s;
}

double MarkedPointPattern::min_same_class_distance() const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (points[i].class_id == points[j].class_id)
        best = std::min(best, distance(points[i].location, points[j].location));
  return best;
}

MarkedPointPattern MarkedPointPattern::superpose(std::span<const MarkedPointPattern> parts) {
  MarkedPointPattern out;
  if (parts.empty()) return out;
  out.window = parts.front().window;
  for (const auto& p : parts) out.points.insert(out.points.end(), p.points.begin(), p.points.end());
  return out;
}

MarkedPointPattern sample_ppp(double intensity, const SimulationWindow& window,
                              std::uint64_t rng_seed) {
  if (!(intensity > 0.0) || !std::isfinite(intensity))
    throw ParameterError("sample_ppp: intensity must be positive");
  window.validate();
  Rng rng(rng_seed);
  std::poisson_distribution<std::int64_t> count_dist(intensity * window.area());
  const auto n = count_dist(rng);
  MarkedPointPattern out;
  out.window = window;
  out.points.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    const double r = window.radius * std::sqrt(uniform01(rng));
    const double phi = 2.0 * std::numbers::pi * uniform01(rng);
    out.points.push_back({{window.center.x + r * std::cos(phi), window.center.y + r * std::sin(phi)},
                          1.0,
                          kUnsetClass});
  }
  return out;
}

MarkedPointPattern matern2_thin(const MarkedPointPattern& parent, double hardcore_H,
                                std::span<const double> timestamps) {
  if (!(hardcore_H > 0.0)) throw ParameterError("matern2_thin: hardcore distance must be positive");
  if (timestamps.size() != parent.points.size())
    throw ParameterError("matern2_thin: need one timestamp per parent point");

  std::vector<Point2> locs;
  locs.reserve(parent.points.size());
  for (const auto& p : parent.points) locs.push_back(p.location);
  const detail::SpatialGrid grid(locs, hardcore_H);
  const double h2 = hardcore_H * hardcore_H;

  MarkedPointPattern out;
  out.window = parent.window;
  for (std::size_t i = 0; i < locs.size(); ++i) {
    bool keep = true;
    grid.for_candidates(locs[i], hardcore_H, [&](std::uint32_t j) {
      if (!keep || j == i) return;
      if (distance_sq(locs[i], locs[j]) >= h2) return;
      if (timestamps[j] < timestamps[i] || (timestamps[j] == timestamps[i] && j < i)) keep = false;
    });
    if (keep) out.points.push_back(parent.points[i]);
  }
  return out;
}

MarkedPointPattern matern2_thin(const MarkedPointPattern& parent, double hardcore_H,
                                std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  std::vector<double> ts(parent.points.size());
  for (auto& t : ts) t = uniform01(rng);
  return matern2_thin(parent, hardcore_H, ts);
}

MarkedPointPattern triangular_lattice(double spacing, const SimulationWindow& window,
                                      const LatticePlacement& placement) {
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw ParameterError("triangular_lattice: spacing must be positive");
  window.validate();
  MarkedPointPattern out;
  out.window = window;
  const Point2 origin = window.center + placement.offset;
  const double shift = std::hypot(placement.offset.x, placement.offset.y);
  const auto rings = static_cast<std::int64_t>(std::floor((window.radius - shift) / spacing));
  if (rings < 0) {
    out.points.push_back({window.center, 1.0, kUnsetClass});
    return out;
  }
  const double c = std::cos(placement.rotation);
  const double s = std::sin(placement.rotation);
  const double h = std::sqrt(3.0) / 2.0;
  out.points.reserve(static_cast<std::size_t>(hexagonal_ring_total(rings)));
  for (std::int64_t k = 0; k <= rings; ++k) {
    for (std::int64_t q = -k; q <= k; ++q) {
      for (std::int64_t r = -k; r <= k; ++r) {
        const std::int64_t ring = std::max({std::abs(q), std::abs(r), std::abs(q + r)});
        if (ring != k) continue;
        const double lx = spacing * (static_cast<double>(q) + 0.5 * static_cast<double>(r));
        const double ly = spacing * h * static_cast<double>(r);
        out.points.push_back(
            {{origin.x + c * lx - s * ly, origin.y + s * lx + c * ly}, 1.0, kUnsetClass});
      }
    }
  }
  return out;
}

MarkedPointPattern triangular_lattice(double spacing, const SimulationWindow& window,
                                      std::optional<std::uint64_t> jitter_seed) {
  LatticePlacement placement;
  if (jitter_seed) {
    // Uniform point of the fundamental rhombus spanned by the two lattice vectors.
    Rng rng(*jitter_seed);
    const double u = uniform01(rng);
    const double v = uniform01(rng);
    placement.rotation = uniform01(rng) * std::numbers::pi / 3.0;
    const double lx = spacing * (u + 0.5 * v);
    const double ly = spacing * std::sqrt(3.0) / 2.0 * v;
    const double c = std::cos(placement.rotation);
    const double s = std::sin(placement.rotation);
    placement.offset = {c * lx - s * ly, s * lx + c * ly};
  }
  return triangular_lattice(spacing, window, placement);
}

}  // namespace snc
