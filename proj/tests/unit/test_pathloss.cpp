#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "snc/error.hpp"
#include "snc/hypergeometric.hpp"
#include "snc/pathloss.hpp"
#include "snc/weight.hpp"

using namespace snc;

TEST_CASE("bounded power law evaluates piecewise") {
  const auto m = PathLossModel::bounded_power_law(4.0);
  CHECK(m(0.5) == 1.0);
  CHECK(m(1.0) == 1.0);
  CHECK(m(2.0) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK(m.from_distance_sq(4.0) == doctest::Approx(0.0625).epsilon(1e-15));
  CHECK_THROWS_AS(m(-0.1), ParameterError);
  CHECK_THROWS_AS(PathLossModel::bounded_power_law(0.0), ParameterError);
  CHECK_THROWS_AS(PathLossModel::bounded_power_law(NAN), ParameterError);
}

TEST_CASE("path loss is non-increasing on random pairs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 50.0);
  for (double alpha : {2.5, 3.0, 4.0, 5.5}) {
    const auto m = PathLossModel::bounded_power_law(alpha);
    for (int k = 0; k < 10000; ++k) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      REQUIRE(m(a) >= m(b));
    }
  }
}

TEST_CASE("path loss from squared distance matches direct evaluation") {
  for (double alpha : {2.5, 3.0, 4.0, 6.0}) {
    const auto m = PathLossModel::bounded_power_law(alpha);
    for (double r : {0.0, 0.3, 1.0, 1.7, 9.0, 123.0})
      CHECK(m.from_distance_sq(r * r) == doctest::Approx(m(r)).epsilon(1e-14));
  }
}

TEST_CASE("integral of l over the plane: reference values") {
  const auto m = PathLossModel::bounded_power_law(4.0);
  CHECK(integral_ell(m, kInfinity, Moment::unit) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(integral_ell(m, kInfinity, Moment::radial) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(integral_ell(m, 0.0, Moment::unit) == 0.0);
  CHECK(oracle::ell_moment(4.0, kInfinity, 0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(oracle::ell_moment(4.0, kInfinity, 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("closed form, adaptive quadrature and Boost oracle agree") {
  QuadratureConfig numeric;
  numeric.tail_policy = TailPolicy::adaptive_truncation;
  for (double alpha : {2.1, 2.5, 3.0, 4.0, 6.0}) {
    const auto m = PathLossModel::bounded_power_law(alpha);
    for (double R : {0.5, 1.0, 3.0, 40.0, kInfinity}) {
      for (Moment mo : {Moment::unit, Moment::radial}) {
        const int k = mo == Moment::unit ? 0 : 1;
        const double ref = oracle::ell_moment(alpha, R, k);
        const double exact = m.exact_integral(R, mo);
        const double num = integral_ell(m, R, mo, numeric);
        CAPTURE(alpha);
        CAPTURE(R);
        CAPTURE(k);
        CHECK(exact == doctest::Approx(ref).epsilon(1e-9));
        CHECK(num == doctest::Approx(ref).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("divergent integrals raise and name the moment") {
  const auto m2 = PathLossModel::bounded_power_law(2.0);
  try {
    (void)integral_ell(m2, kInfinity, Moment::radial);
    FAIL("expected divergence");
  } catch (const DivergenceError& e) {
    CHECK(std::string(e.what()).find("r l(r)") != std::string::npos);
  }
  CHECK_THROWS_AS((void)integral_ell(PathLossModel::bounded_power_law(1.0), kInfinity, Moment::unit),
                  DivergenceError);
  // finite radius is always fine
  CHECK(integral_ell(m2, 10.0, Moment::radial) == doctest::Approx(oracle::ell_moment(2.0, 10.0, 1)));
}

TEST_CASE("tabulated path loss interpolates and integrates") {
  const auto t = PathLossModel::table({0.0, 1.0, 2.0}, {1.0, 1.0, 0.0625}, 4.0);
  CHECK(t(0.5) == 1.0);
  CHECK(t(1.5) == doctest::Approx(0.53125));
  CHECK(t(4.0) == doctest::Approx(0.0625 / 16.0));
  auto f = [&](double r) { return t(r); };
  const double ref = oracle::finite(f, 0.0, 1.0) + oracle::finite(f, 1.0, 2.0) + oracle::tail(f, 2.0);
  CHECK(integral_ell(t, kInfinity, Moment::unit) == doctest::Approx(ref).epsilon(1e-8));
  CHECK_THROWS_AS(PathLossModel::table({0.0, 1.0}, {1.0, 2.0}), ParameterError);
  CHECK_THROWS_AS(PathLossModel::table({0.5, 1.0}, {1.0, 0.5}), ParameterError);
  const auto no_tail = PathLossModel::table({0.0, 1.0}, {1.0, 0.0});
  CHECK(integral_ell(no_tail, kInfinity, Moment::unit) == doctest::Approx(0.5));
}

TEST_CASE("2F1(1,a;a+1;z) special values") {
  CHECK(gauss_2f1_a1(0.3, 0.0) == 1.0);
  CHECK(gauss_2f1_a1(0.5, -1.0) == doctest::Approx(std::atan(1.0)).epsilon(1e-9));
  CHECK(gauss_2f1_a1(0.75, -1.0) == doctest::Approx(oracle::hyp2f1_a1(0.75, -1.0)).epsilon(1e-9));
  // arctan identity: 2F1(1,1/2;3/2;-x^2) = atan(x)/x
  for (double x : {0.1, 0.7, 3.0, 10.0})
    CHECK(gauss_2f1_a1(0.5, -x * x) == doctest::Approx(std::atan(x) / x).epsilon(1e-9));
}

TEST_CASE("2F1 grid against two independent oracles") {
  for (int ia = 1; ia <= 9; ++ia) {
    const double a = 0.1 * ia;
    for (double z : {-1e-6, -0.01, -0.3, -1.0, -2.5, -7.0, -20.0, -55.0, -100.0}) {
      const double got = gauss_2f1_a1(a, z);
      CAPTURE(a);
      CAPTURE(z);
      CHECK(got == doctest::Approx(oracle::hyp2f1_a1(a, z)).epsilon(1e-9));
      CHECK(got == doctest::Approx(oracle::hyp2f1_a1_pfaff(a, z)).epsilon(1e-9));
    }
  }
}

TEST_CASE("2F1 domain checks") {
  CHECK_THROWS_AS(gauss_2f1_a1(0.0, -1.0), DomainError);
  CHECK_THROWS_AS(gauss_2f1_a1(1.0, -1.0), DomainError);
  CHECK_THROWS_AS(gauss_2f1_a1(0.5, 0.5), DomainError);
  CHECK_THROWS_AS(gauss_2f1_a1(0.5, -INFINITY), DomainError);
}

TEST_CASE("cross-class shot-noise weight") {
  const auto m = PathLossModel::bounded_power_law(4.0);
  const auto w = shotnoise_weight_ij(1.0, 1.0, 1.0, 1.0, m);
  CHECK(w(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(w(2.0) == doctest::Approx(std::log1p(1.0 / 16.0)).epsilon(1e-15));
  CHECK(w(2.0) == doctest::Approx(0.0606246218).epsilon(1e-9));
  CHECK(w(1e6) < 1e-23);
  CHECK_NOTHROW(require_non_increasing(w, 100.0));
  CHECK_THROWS_AS(shotnoise_weight_ij(1.0, 1.0, 1.0, 0.0, m), ConsistencyError);
  CHECK_THROWS_AS(shotnoise_weight_ij(1.0, 0.0, 1.0, 1.0, m), ParameterError);
}

TEST_CASE("weight integrals against the Boost oracle") {
  const auto m = PathLossModel::bounded_power_law(3.0);
  const auto w = shotnoise_weight_ij(0.5, 2.0, 1.5, 1.0, m);
  auto f0 = [&](double r) { return w(r); };
  auto f1 = [&](double r) { return w(r) * r; };
  const double ref0 = oracle::finite(f0, 0.0, 1.0) + oracle::tail(f0, 1.0);
  const double ref1 = oracle::finite(f1, 0.0, 1.0) + oracle::tail(f1, 1.0);
  CHECK(weight_integral(w, kInfinity, Moment::unit) == doctest::Approx(ref0).epsilon(1e-8));
  CHECK(weight_integral(w, kInfinity, Moment::radial) == doctest::Approx(ref1).epsilon(1e-8));
  const auto s = step_weight(2.5);
  CHECK(weight_integral(s, kInfinity, Moment::unit) == doctest::Approx(2.5));
  CHECK(weight_integral(s, kInfinity, Moment::radial) == doctest::Approx(3.125));
  CHECK_THROWS_AS(weight_integral(unit_weight(), kInfinity, Moment::unit), DivergenceError);
}

TEST_CASE("non-monotone weight is rejected") {
  WeightFunction bump;
  bump.id = "bump";
  bump.eval = [](double r) { return r < 1.0 ? 0.5 : (r < 2.0 ? 1.0 : 0.0); };
  CHECK_THROWS_AS(require_non_increasing(bump, 5.0), DomainError);
}
