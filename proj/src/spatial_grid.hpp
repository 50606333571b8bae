#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "snc/geometry.hpp"

namespace snc::detail {

/// Uniform bucket grid over a set of points for fixed-radius neighbor queries.
class SpatialGrid {
 public:
  SpatialGrid(std::span<const Point2> pts, double cell) : cell_(cell) {
    if (pts.empty()) return;
    min_x_ = max_x_ = pts[0].x;
    min_y_ = max_y_ = pts[0].y;
    for (const auto& p : pts) {
      min_x_ = std::min(min_x_, p.x);
      max_x_ = std::max(max_x_, p.x);
      min_y_ = std::min(min_y_, p.y);
      max_y_ = std::max(max_y_, p.y);
    }
    // Cap the grid size for sparse inputs with a tiny radius.
    const double span = std::max(max_x_ - min_x_, max_y_ - min_y_);
    if (span / cell_ > 4096.0) cell_ = span / 4096.0;
    nx_ = static_cast<std::int64_t>((max_x_ - min_x_) / cell_) + 1;
    ny_ = static_cast<std::int64_t>((max_y_ - min_y_) / cell_) + 1;
    start_.assign(static_cast<std::size_t>(nx_ * ny_ + 1), 0);
    std::vector<std::int64_t> cell_of(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
      cell_of[i] = index(cx(pts[i].x), cy(pts[i].y));
      ++start_[static_cast<std::size_t>(cell_of[i]) + 1];
    }
    for (std::size_t c = 1; c < start_.size(); ++c) start_[c] += start_[c - 1];
    items_.resize(pts.size());
    auto fill = start_;
    for (std::size_t i = 0; i < pts.size(); ++i)
      items_[static_cast<std::size_t>(fill[static_cast<std::size_t>(cell_of[i])]++)] =
          static_cast<std::uint32_t>(i);
  }

  /// Calls f(index) for every point in cells overlapping the square of
  /// half-width r around q; the caller filters by exact distance.
  template <class F>
  void for_candidates(Point2 q, double r, F&& f) const {
    if (items_.empty()) return;
    const auto x0 = std::max<std::int64_t>(0, cx(q.x - r));
    const auto x1 = std::min<std::int64_t>(nx_ - 1, cx(q.x + r));
    const auto y0 = std::max<std::int64_t>(0, cy(q.y - r));
    const auto y1 = std::min<std::int64_t>(ny_ - 1, cy(q.y + r));
    for (auto iy = y0; iy <= y1; ++iy)
      for (auto ix = x0; ix <= x1; ++ix) {
        const auto c = static_cast<std::size_t>(index(ix, iy));
        for (auto k = start_[c]; k < start_[c + 1]; ++k) f(items_[static_cast<std::size_t>(k)]);
      }
  }

 private:
  std::int64_t cx(double x) const {
    return static_cast<std::int64_t>(std::floor((x - min_x_) / cell_));
  }
  std::int64_t cy(double y) const {
    return static_cast<std::int64_t>(std::floor((y - min_y_) / cell_));
  }
  std::int64_t index(std::int64_t ix, std::int64_t iy) const { return iy * nx_ + ix; }

  double cell_;
  double min_x_ = 0, max_x_ = 0, min_y_ = 0, max_y_ = 0;
  std::int64_t nx_ = 0, ny_ = 0;
  std::vector<std::int64_t> start_;
  std::vector<std::uint32_t> items_;
};

}  // namespace snc::detail
