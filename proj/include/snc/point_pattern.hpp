#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "snc/geometry.hpp"

namespace snc {

inline constexpr int kUnsetClass = -1;

struct MarkedPoint {
  Point2 location{};
  double power = 1.0;
  int class_id = kUnsetClass;

  friend bool operator==(const MarkedPoint&, const MarkedPoint&) = default;
};

/// Finite realization of a marked point process inside a window. Generated
/// patterns are never mutated afterwards and can be shared across threads.
struct MarkedPointPattern {
  std::vector<MarkedPoint> points;
  SimulationWindow window;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  double total_power() const;
  /// Smallest distance between two points of the same class (+inf if none).
  double min_same_class_distance() const;
  /// Superposition of patterns sharing one window; marks are kept.
  static MarkedPointPattern superpose(std::span<const MarkedPointPattern> parts);
};

/// Homogeneous PPP on the window disc. Powers are 1, classes unset.
MarkedPointPattern sample_ppp(double intensity, const SimulationWindow& window,
                              std::uint64_t rng_seed);

/// Matern type-II thinning with explicit timestamps (one per parent point).
/// A point survives iff no other parent point closer than `hardcore_H` has
/// a smaller timestamp; equal timestamps are resolved by point index.
MarkedPointPattern matern2_thin(const MarkedPointPattern& parent, double hardcore_H,
                                std::span<const double> timestamps);

/// Matern type-II thinning with i.i.d. uniform(0,1) timestamps.
MarkedPointPattern matern2_thin(const MarkedPointPattern& parent, double hardcore_H,
                                std::uint64_t rng_seed);

/// Rigid placement of a lattice: translation of its origin from the window
/// center and rotation in radians.
struct LatticePlacement {
  Point2 offset{};
  double rotation = 0.0;
};

/// Triangular lattice built from complete hexagonal rings about the lattice
/// origin (ring k holds 6k nodes); the largest ring that fits in the window
/// is the last one kept. Without a jitter seed the origin is the window
/// center; with one, the origin is shifted uniformly inside a lattice cell
/// and the lattice rotated uniformly in [0, pi/3).
MarkedPointPattern triangular_lattice(double spacing, const SimulationWindow& window,
                                      std::optional<std::uint64_t> jitter_seed = std::nullopt);

MarkedPointPattern triangular_lattice(double spacing, const SimulationWindow& window,
                                      const LatticePlacement& placement);

/// Number of nodes in rings 0..k: 1 + 3k(k+1).
constexpr std::int64_t hexagonal_ring_total(std::int64_t k) { return 1 + 3 * k * (k + 1); }

}  // namespace snc
