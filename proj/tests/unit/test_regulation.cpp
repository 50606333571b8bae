#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "snc/error.hpp"
#include "snc/pathloss.hpp"
#include "snc/point_pattern.hpp"
#include "snc/regulation.hpp"
#include "snc/weight.hpp"

using namespace snc;

namespace {

SimulationWindow disc(double R) { return SimulationWindow{{0.0, 0.0}, R, 0.0}; }

MarkedPointPattern make(std::vector<Point2> pts, double P = 1.0) {
  MarkedPointPattern m;
  m.window = disc(1000.0);
  for (auto p : pts) m.points.push_back({p, P, 0});
  return m;
}

// Dense radius scan: smallest bound - P(B(y,r)) over a fine r grid plus the jump radii.
double brute_ball_margin(const MarkedPointPattern& pat, const RegulationParams& prm, Point2 y, double rmax) {
  std::vector<double> radii;
  for (int k = 0; k <= 20000; ++k) radii.push_back(rmax * k / 20000.0);
  for (const auto& p : pat.points) radii.push_back(distance(p.location, y));
  double worst = kInfinity;
  for (double r : radii) {
    double mass = 0.0;
    for (const auto& p : pat.points)
      if (distance(p.location, y) <= r) mass += p.power;
    worst = std::min(worst, prm.envelope(r) - mass);
  }
  return worst;
}

}  // namespace

TEST_CASE("hardcore regulation constants") {
  const auto a = mhcpp_regulation_params(1.0, 1.0);
  CHECK(a.sigma == 1.0);
  CHECK(a.rho == doctest::Approx(1.813799).epsilon(1e-6));
  CHECK(a.nu == doctest::Approx(0.906900).epsilon(1e-6));
  CHECK(a.rho == doctest::Approx(2 * std::numbers::pi / std::sqrt(12.0)).epsilon(1e-15));
  const auto z = mhcpp_regulation_params(0.0, 1.0);
  CHECK(z == RegulationParams{0.0, 0.0, 0.0});
  const auto b = mhcpp_regulation_params(2.0, 0.5);
  CHECK(b.sigma == 2.0);
  CHECK(b.rho == doctest::Approx(7.255197).epsilon(1e-6));
  CHECK(b.nu == doctest::Approx(7.255197).epsilon(1e-6));
  CHECK_THROWS_AS(mhcpp_regulation_params(1.0, 0.0), ParameterError);
  CHECK_THROWS_AS(mhcpp_regulation_params(-1.0, 1.0), ParameterError);
  // scaling: sigma, rho, nu scale as P, P/H, P/H^2
  const auto c = mhcpp_regulation_params(3.0, 2.0);
  CHECK(c.sigma == doctest::Approx(3.0 * a.sigma));
  CHECK(c.rho == doctest::Approx(1.5 * a.rho));
  CHECK(c.nu == doctest::Approx(0.75 * a.nu));
}

TEST_CASE("superposed constants add") {
  const std::vector<RegulationParams> parts{{1, 2, 3}, {2, 3, 4}};
  CHECK(superpose_params(parts) == RegulationParams{3, 5, 7});
  CHECK_THROWS_AS(superpose_params(std::vector<RegulationParams>{}), ParameterError);
  CHECK_THROWS_AS(superpose_params(std::vector<RegulationParams>{{-1, 0, 0}}), ParameterError);
}

TEST_CASE("ball check: trivial and violating cases") {
  const std::vector<Point2> origin{{0.0, 0.0}};
  const auto empty = make({});
  auto r = check_ball_regulation(empty, {1, 0, 0}, origin);
  CHECK(r.compliant);
  CHECK(r.worst_margin == 1.0);

  auto heavy = make({{0.0, 0.0}}, 5.0);
  r = check_ball_regulation(heavy, {1, 0, 0}, origin);
  CHECK_FALSE(r.compliant);
  CHECK(r.worst_margin == doctest::Approx(-4.0));
  CHECK(r.witness.radius == 0.0);
  CHECK(r.violating_centers == 1);
}

TEST_CASE("ball check agrees with a dense radius scan") {
  const auto pat = matern2_thin(sample_ppp(0.6, disc(8.0), 17), 1.0, std::uint64_t(3));
  const RegulationParams prm{0.7, 0.9, 0.3};
  const auto centers = random_centers({0, 0}, 6.0, 40, 5);
  CheckOptions o;
  o.keep_per_center = true;
  const auto rep = check_ball_regulation(pat, prm, centers, o);
  REQUIRE(rep.per_center.size() == centers.size());
  for (std::size_t i = 0; i < centers.size(); ++i)
    CHECK(rep.per_center[i].margin == doctest::Approx(brute_ball_margin(pat, prm, centers[i], 30.0)).epsilon(1e-12));
}

TEST_CASE("lattice with spacing 2H satisfies the hardcore constants") {
  const auto lat = triangular_lattice(2.0, disc(15.0), std::uint64_t(8));
  const auto prm = mhcpp_regulation_params(1.0, 1.0);
  const auto centers = random_centers({0, 0}, 10.0, 2000, 1);
  CHECK(check_ball_regulation(lat, prm, centers).compliant);
}

TEST_CASE("a spacing-H hexagon exceeds the constants at radius H") {
  // Seven points of a unit triangular lattice respect a hardcore distance of 1
  // but put mass 7 inside B(0,1), above sigma + rho + nu = 3.72.
  const auto hex = triangular_lattice(1.0, disc(1.05));
  REQUIRE(hex.size() == 7);
  REQUIRE(hex.min_same_class_distance() >= 1.0 - 1e-12);
  const std::vector<Point2> origin{{0.0, 0.0}};
  const auto rep = check_ball_regulation(hex, mhcpp_regulation_params(1.0, 1.0), origin);
  CHECK_FALSE(rep.compliant);
  CHECK(rep.witness.radius == doctest::Approx(1.0));
  CHECK(rep.witness.measured == 7.0);
  // guard discs of radius H/2 give the packing-consistent constants
  CHECK(check_ball_regulation(hex, mhcpp_regulation_params(1.0, 0.5), origin).compliant);
}

TEST_CASE("Matern patterns satisfy the half-distance packing constants") {
  const auto prm = mhcpp_regulation_params(1.0, 0.5);
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto pat = matern2_thin(sample_ppp(0.3, disc(12.0), s), 1.0, s + 100);
    CHECK(check_ball_regulation(pat, prm, random_centers({0, 0}, 10.0, 500, s)).compliant);
  }
}

TEST_CASE("unit weight reduces to the ball-at-R check exactly") {
  const auto pat = matern2_thin(sample_ppp(0.5, disc(12.0), 2), 1.0, std::uint64_t(2));
  const RegulationParams prm{1.0, 1.2, 0.6};
  const auto centers = random_centers({0, 0}, 8.0, 100, 9);
  for (double R : {0.5, 2.0, 5.5}) {
    const auto a = check_shotnoise_regulation(pat, prm, unit_weight(), centers, R);
    const auto b = check_ball_at_radius(pat, prm, centers, R);
    CHECK(a.compliant == b.compliant);
    CHECK(a.worst_margin == b.worst_margin);
    CHECK(a.violating_centers == b.violating_centers);
  }
}

TEST_CASE("shot-noise check on an empty pattern is compliant") {
  const auto m = PathLossModel::bounded_power_law(4.0);
  const std::vector<Point2> origin{{0.0, 0.0}};
  const auto rep = check_shotnoise_regulation(make({}), {1, 1, 1}, pathloss_weight(m), origin, kInfinity);
  CHECK(rep.compliant);
  CHECK(rep.worst_margin > 0.0);
}

TEST_CASE("shot-noise check rejects an increasing weight") {
  WeightFunction up;
  up.id = "up";
  up.eval = [](double r) { return r; };
  up.support_end = 10.0;
  const std::vector<Point2> origin{{0.0, 0.0}};
  CHECK_THROWS_AS(check_shotnoise_regulation(make({{1, 0}}), {1, 1, 1}, up, origin, 10.0), DomainError);
}

TEST_CASE("ball regulation implies shot-noise regulation on the same centers") {
  const auto m = PathLossModel::bounded_power_law(4.0);
  const auto prm = mhcpp_regulation_params(1.0, 0.5);
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto pat = matern2_thin(sample_ppp(0.3, disc(15.0), 40 + s), 1.0, s);
    const auto centers = random_centers({0, 0}, 10.0, 300, s);
    REQUIRE(check_ball_regulation(pat, prm, centers).compliant);
    CHECK(check_shotnoise_regulation(pat, prm, pathloss_weight(m), centers, kInfinity).compliant);
    for (double r : {0.5, 1.0, 2.0, 4.0})
      CHECK(check_shotnoise_regulation(pat, prm, step_weight(r), centers, kInfinity).compliant);
  }
}

TEST_CASE("annulus bound: reference values and monotone refinement") {
  const auto m = PathLossModel::bounded_power_law(4.0);
  const auto w = pathloss_weight(m);
  const auto one = make({{7.5, 0.0}});
  CHECK(annuli_shotnoise_bound(one, {0, 0}, w, 15.0, 1) == 1.0);
  CHECK(annuli_shotnoise_bound(one, {0, 0}, w, 15.0, 10) == doctest::Approx(std::pow(7.5, -4.0)).epsilon(1e-14));
  const auto off = make({{7.9, 0.0}});
  CHECK(annuli_shotnoise_bound(off, {0, 0}, w, 15.0, 10) == doctest::Approx(std::pow(7.5, -4.0)).epsilon(1e-14));

  const auto pat = matern2_thin(sample_ppp(0.3, disc(20.0), 6), 1.0, std::uint64_t(6));
  const double exact = exact_shotnoise(pat, {0, 0}, w, 15.0);
  double prev = kInfinity;
  for (std::int64_t n = 1; n <= (1 << 20); n *= 2) {
    const double b = annuli_shotnoise_bound(pat, {0, 0}, w, 15.0, n);
    CHECK(b >= exact);
    CHECK(b <= prev);
    prev = b;
  }
  // first-order convergence: error at most the weight's variation across one annulus
  const std::int64_t n = 1000000;
  const double width = 15.0 / n;
  double slack = 0.0;
  for (const auto& p : pat.points) {
    const double d = distance(p.location, {0, 0});
    if (d < 15.0) slack += p.power * (w(std::max(0.0, d - width)) - w(d));
  }
  const double b = annuli_shotnoise_bound(pat, {0, 0}, w, 15.0, n);
  CHECK(b - exact <= slack * (1 + 1e-9) + 1e-15);
  CHECK_THROWS_AS(annuli_shotnoise_bound(pat, {0, 0}, w, 15.0, 0), ParameterError);
}

TEST_CASE("regulation closes under superposition") {
  const auto a = matern2_thin(sample_ppp(0.3, disc(12.0), 1), 1.0, std::uint64_t(1));
  const auto b = matern2_thin(sample_ppp(0.3, disc(12.0), 2), 2.0, std::uint64_t(2));
  const auto pa = mhcpp_regulation_params(1.0, 0.5), pb = mhcpp_regulation_params(1.0, 1.0);
  const auto centers = random_centers({0, 0}, 9.0, 500, 3);
  REQUIRE(check_ball_regulation(a, pa, centers).compliant);
  REQUIRE(check_ball_regulation(b, pb, centers).compliant);
  const std::vector<MarkedPointPattern> parts{a, b};
  const std::vector<RegulationParams> prms{pa, pb};
  CHECK(check_ball_regulation(MarkedPointPattern::superpose(parts), superpose_params(prms), centers).compliant);
}

TEST_CASE("center generators") {
  const auto g = grid_centers({0, 0}, 2.0, 1.0);
  for (auto p : g) CHECK(distance(p, {0, 0}) <= 2.0 + 1e-12);
  CHECK(g.size() == 13);
  const auto r = random_centers({1, 1}, 3.0, 100, 4);
  CHECK(r.size() == 100);
  for (auto p : r) CHECK(distance(p, {1, 1}) <= 3.0);
  CHECK(random_centers({1, 1}, 3.0, 100, 4) == r);
  CHECK_THROWS_AS(grid_centers({0, 0}, 1.0, 0.0), ParameterError);
}
