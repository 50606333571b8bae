#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "snc/bounds.hpp"
#include "snc/error.hpp"
#include "snc/montecarlo.hpp"
#include "snc/point_pattern.hpp"
#include "snc/scenario.hpp"

using namespace snc;

namespace {

const PathLossModel kAlpha4 = PathLossModel::bounded_power_law(4.0);

MarkedPointPattern with_points(std::vector<MarkedPoint> pts) {
  MarkedPointPattern m;
  m.window = {{0, 0}, 50.0, 0.0};
  m.points = std::move(pts);
  return m;
}

BipolarLink link_from(const MarkedPointPattern& p, std::size_t idx, Point2 rx) {
  return {p.points[idx], idx, rx, distance(p.points[idx].location, rx)};
}

NetworkScenario small_scenario(std::size_t classes = 1) {
  NetworkScenario s;
  s.window = {{0, 0}, 40.0, 10.0};
  s.seed = 77;
  s.classes = {ClassSpec{0.1, 1.0, PowerRule::constant(1.0)}};
  if (classes == 2) {
    s.classes[0].power_rule = PowerRule::beta_control(1.0);
    s.classes.push_back(ClassSpec{0.05, 1.0, PowerRule::beta_control(1.0)});
  }
  return s;
}

}  // namespace

TEST_CASE("interference and success probability on hand-built patterns") {
  auto p = with_points({{{0, 0}, 1.0, 0}});
  auto l = link_from(p, 0, {1, 0});
  CHECK(interference_nofading(p, l, kAlpha4) == 0.0);
  CHECK(conditional_ps_rayleigh(p, l, 1.0, 0.0, kAlpha4) == 1.0);
  CHECK(conditional_ps_rayleigh(p, l, 2.0, 0.5, kAlpha4) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));

  p = with_points({{{0, 0}, 1.0, 0}, {{3, 0}, 1.0, 0}});
  l = link_from(p, 0, {1, 0});
  CHECK(interference_nofading(p, l, kAlpha4) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(conditional_ps_rayleigh(p, l, 1.0, 0.0, kAlpha4) == doctest::Approx(16.0 / 17.0).epsilon(1e-15));

  CHECK_THROWS_AS(conditional_ps_rayleigh(p, l, 0.0, 0.0, kAlpha4), ParameterError);
  CHECK_THROWS_AS(conditional_ps_rayleigh(p, l, 1.0, -1.0, kAlpha4), ParameterError);
  BipolarLink stranger{{{9, 9}, 1.0, 0}, 0, {10, 9}, 1.0};
  CHECK_THROWS_AS(interference_nofading(p, stranger, kAlpha4), ConsistencyError);
}

TEST_CASE("adding an interferer strictly degrades the link") {
  auto p = with_points({{{0, 0}, 1.0, 0}, {{3, 0}, 1.0, 0}});
  const auto l = link_from(p, 0, {1, 0});
  const double ps0 = conditional_ps_rayleigh(p, l, 0.5, 0.0, kAlpha4);
  const double i0 = interference_nofading(p, l, kAlpha4);
  for (Point2 extra : {Point2{1, 1}, Point2{-4, 2}, Point2{20, -7}}) {
    auto q = p;
    q.points.push_back({extra, 0.7, 1});
    CHECK(conditional_ps_rayleigh(q, l, 0.5, 0.0, kAlpha4) < ps0);
    CHECK(interference_nofading(q, l, kAlpha4) > i0);
  }
}

TEST_CASE("trial records reproduce the direct geometric computation") {
  const auto s = small_scenario(2);
  const auto run = run_trials(s, kAlpha4, 2);
  REQUIRE(!run.records.empty());
  std::size_t checked = 0;
  for (std::uint64_t t = 0; t < 2; ++t) {
    const auto real = build_scenario_pattern(s, t);
    for (const auto& r : run.records) {
      if (r.trial_id != t) continue;
      const auto& l = real.links[r.link_id];
      CHECK(r.class_id == l.transmitter.class_id);
      const double theta = s.classes[r.class_id].theta;
      const double ps = conditional_ps_rayleigh(real.pattern, l, theta, s.noise_W, kAlpha4);
      CHECK(std::abs(r.ps_conditional - ps) <= 1e-12 * ps);
      const double I = interference_nofading(real.pattern, l, kAlpha4);
      CHECK(std::abs(r.interference_nofading - I) <= 1e-12 * I);
      CHECK(s.window.in_evaluation_region(l.receiver));
      ++checked;
    }
  }
  CHECK(checked == run.records.size());
}

TEST_CASE("every link meets the analytic bounds") {
  auto s = small_scenario(1);
  const auto run = run_trials(s, kAlpha4, 20);
  CHECK(run.records.size() >= 10000);
  std::size_t bad = 0;
  for (const auto& r : run.records) bad += !r.compliant;
  CHECK(bad == 0);
  const auto two = run_trials(small_scenario(2), kAlpha4, 5);
  bad = 0;
  for (const auto& r : two.records) bad += !r.compliant;
  CHECK(bad == 0);
}

TEST_CASE("runs are deterministic and independent of the thread count") {
  const auto s = small_scenario(2);
  TrialOptions one, three;
  three.threads = 3;
  const auto a = run_trials(s, kAlpha4, 4, one);
  const auto b = run_trials(s, kAlpha4, 4, three);
  REQUIRE(a.records.size() == b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].trial_id == b.records[i].trial_id);
    CHECK(a.records[i].link_id == b.records[i].link_id);
    CHECK(a.records[i].ps_conditional == b.records[i].ps_conditional);
    CHECK(a.records[i].interference_nofading == b.records[i].interference_nofading);
  }
}

TEST_CASE("threshold sweeps share geometry with single runs") {
  std::vector<NetworkScenario> variants;
  for (double th : {0.05, 0.1, 0.3}) {
    auto s = small_scenario(1);
    s.classes[0].theta = th;
    variants.push_back(s);
  }
  const auto sweep = run_trials_sweep(variants, kAlpha4, 2);
  REQUIRE(sweep.size() == 3);
  for (std::size_t v = 0; v < 3; ++v) {
    const auto single = run_trials(variants[v], kAlpha4, 2);
    REQUIRE(single.records.size() == sweep[v].records.size());
    for (std::size_t i = 0; i < single.records.size(); ++i)
      CHECK(single.records[i].ps_conditional == doctest::Approx(sweep[v].records[i].ps_conditional).epsilon(1e-12));
  }
  auto odd = variants;
  odd[1].classes[0].hardcore_H = 2.0;
  CHECK_THROWS_AS(run_trials_sweep(odd, kAlpha4, 1), ParameterError);
}

TEST_CASE("empty trials are reported, not dropped silently") {
  auto s = small_scenario(1);
  s.base_intensity = 1e-9;
  const auto run = run_trials(s, kAlpha4, 3);
  CHECK(run.records.empty());
  CHECK(run.empty_trials.size() == 3);
}

TEST_CASE("a wide guard makes truncation negligible") {
  // Same realization seen through two radii: links near the center should not
  // notice the points beyond the inner window.
  const double guard = 450.0, inner = 500.0;
  const auto parent = sample_ppp(0.3, {{0, 0}, 2 * inner, 0.0}, 123);
  const auto big = matern2_thin(parent, 1.0, std::uint64_t(321));
  MarkedPointPattern small;
  small.window = {{0, 0}, inner, guard};
  for (const auto& p : big.points)
    if (small.window.contains(p.location)) small.points.push_back(p);
  std::size_t links = 0;
  for (std::size_t k = 0; k < small.points.size() && links < 30; ++k) {
    if (!small.window.in_evaluation_region(small.points[k].location)) continue;
    const Point2 rx = small.points[k].location + Point2{1.0, 0.0};
    const BipolarLink ls{small.points[k], k, rx, 1.0};
    std::size_t kb = 0;
    while (!(big.points[kb] == small.points[k])) ++kb;
    const BipolarLink lb{big.points[kb], kb, rx, 1.0};
    const double a = conditional_ps_rayleigh(small, ls, 0.1, 0.0, kAlpha4);
    const double b = conditional_ps_rayleigh(big, lb, 0.1, 0.0, kAlpha4);
    CHECK(std::abs(a - b) <= 1e-6 * a);
    ++links;
  }
  CHECK(links > 0);
}

TEST_CASE("meta distribution") {
  std::vector<TrialRecord> recs(4);
  const double ps[] = {0.2, 0.5, 0.9, 1.0};
  for (int i = 0; i < 4; ++i) {
    recs[i].ps_conditional = ps[i];
    recs[i].class_id = i % 2;
  }
  const std::vector<double> grid{0.0, 0.5, 0.95, 1.0};
  const auto md = meta_distribution(recs, std::nullopt, grid);
  CHECK(md.links == 4);
  CHECK(md.ps_min_empirical == 0.2);
  CHECK(md.ccdf == std::vector<double>{1.0, 0.5, 0.25, 0.0});
  const auto c1 = meta_distribution(recs, 1, grid);
  CHECK(c1.links == 2);
  CHECK(c1.ps_min_empirical == 0.5);
  CHECK_THROWS_AS(meta_distribution(recs, 5, grid), ParameterError);

  std::vector<TrialRecord> ones(3);
  for (auto& r : ones) r.ps_conditional = 1.0;
  const std::vector<double> below{0.3, 0.999};
  CHECK(meta_distribution(ones, std::nullopt, below).ccdf == std::vector<double>{1.0, 1.0});
}

TEST_CASE("empirical ccdf sits at 1 at the analytic bound") {
  const auto run = run_trials(small_scenario(1), kAlpha4, 3);
  const std::vector<double> g{run.bounds.per_class[0].ps_lower * (1 - 1e-9)};
  const auto md = meta_distribution(run.records, 0, g);
  CHECK(md.ccdf[0] == 1.0);
}
