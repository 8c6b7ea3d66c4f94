#include <doctest.h>

#include <cmath>
#include <numbers>

#include "decaylab/errors.hpp"
#include "decaylab/quadrature.hpp"
#include "decaylab/special_functions.hpp"

using namespace decaylab;
using special::KummerArgs;
using special::ProfileParams;

namespace {

// Exponential integral E1 by its convergent series; an oracle independent of
// the quadrature path used for U.
double e1_series(double s) {
  double sum = 0.0, term = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -s / k;
    sum += term / k;
  }
  return -std::numbers::egamma - std::log(s) - sum;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("special_functions") {

TEST_CASE("gamma matches tgamma on [0.1, 50]") {
  for (double x = 0.1; x <= 50.0; x += 0.137) CHECK(rel(special::gamma(x), std::tgamma(x)) < 1e-12);
}

TEST_CASE("gamma reference values") {
  CHECK(special::gamma(4.5) == doctest::Approx(11.631728396567448929).epsilon(1e-14));
  CHECK(special::gamma(0.5) == doctest::Approx(std::sqrt(std::numbers::pi)).epsilon(1e-14));
  CHECK(special::gamma(1.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("gamma reflection and poles") {
  CHECK(rel(special::gamma(-0.5), -2 * std::sqrt(std::numbers::pi)) < 1e-13);
  CHECK(special::gamma_sign(-0.5) == -1);
  CHECK(special::gamma_sign(-1.5) == 1);
  CHECK_THROWS_AS(special::gamma(0.0), PoleError);
  CHECK_THROWS_AS(special::gamma(-3.0), PoleError);
}

TEST_CASE("log gamma avoids overflow") {
  CHECK(rel(special::log_abs_gamma(200.0), std::lgamma(200.0)) < 1e-13);
  CHECK(std::isfinite(special::log_abs_gamma(1e5)));
}

TEST_CASE("gamma in long double") {
  CHECK(std::abs(special::gamma(4.5L) - 11.631728396567448929L) < 1e-12L);
}

TEST_CASE("Kummer M reference value") {
  CHECK(special::kummer_m(KummerArgs{0.5, 1.5}, 1.0) == doctest::Approx(1.4626517459071816088).epsilon(1e-14));
}

TEST_CASE("Kummer M closed forms") {
  for (double s : {0.0, 0.5, 3.0, 25.0, 60.0, 200.0}) {
    CHECK(rel(special::kummer_m(KummerArgs{2.0, 2.0}, s), std::exp(s)) < 1e-13);
  }
  // M(1, 2; s) = (e^s - 1)/s
  for (double s : {0.3, 5.0, 45.0, 120.0}) {
    CHECK(rel(special::kummer_m(KummerArgs{1.0, 2.0}, s), std::expm1(s) / s) < 1e-12);
  }
  // b = 0 gives 1 exactly; b = -1 the linear polynomial 1 - s/c
  CHECK(special::kummer_m(KummerArgs{0.0, 1.5}, 80.0) == 1.0);
  CHECK(special::kummer_m(KummerArgs{-1.0, 1.5}, 90.0) == doctest::Approx(1 - 90.0 / 1.5));
}

TEST_CASE("Kummer M errors") {
  CHECK_THROWS_AS(special::kummer_m(KummerArgs{0.5, -2.0}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(special::kummer_m(KummerArgs{0.5, 1.5}, -1.0), InvalidArgument);
  CHECK_THROWS_AS(special::kummer_m(KummerArgs{0.5, 1.5}, 800.0), OverflowError);
}

TEST_CASE("Kummer U against the exponential integral") {
  CHECK(special::kummer_u(KummerArgs{1.0, 1.0}, 2.0) == doctest::Approx(0.3613286168882225847).epsilon(1e-11));
  for (double s : {0.2, 1.0, 3.0, 7.5}) {
    CHECK(rel(special::kummer_u(KummerArgs{1.0, 1.0}, s), std::exp(s) * e1_series(s)) < 1e-10);
  }
  // U(b, b + 1; s) = s^{-b}
  CHECK(rel(special::kummer_u(KummerArgs{0.4, 1.4}, 3.0), std::pow(3.0, -0.4)) < 1e-11);
  CHECK_THROWS_AS(special::kummer_u(KummerArgs{-0.5, 1.0}, 1.0), InvalidArgument);
}

TEST_CASE("profile reference values") {
  const ProfileParams p{0.0, 3, 0.5};
  CHECK(special::varphi(p, 1.0) == doctest::Approx(0.7468241328124270254).epsilon(1e-13));
  CHECK(special::varphi_derivative(p, 1.0) == doctest::Approx(-0.1894723458204923519).epsilon(1e-12));
  CHECK(special::varphi(p, 0.0) == 1.0);
}

TEST_CASE("profile identities at beta = 0 and beta = c") {
  for (const auto& [alpha, dim] : {std::pair{0.0, 3}, std::pair{0.5, 3}, std::pair{0.9, 2}}) {
    const double c = ProfileParams{alpha, dim, 0.0}.cexp();
    for (double s = 0.0; s <= 100.0; s += 0.7) {
      CHECK(std::abs(special::varphi(ProfileParams{alpha, dim, 0.0}, s) - 1) < 1e-12);
      CHECK(std::abs(special::varphi(ProfileParams{alpha, dim, c}, s) * std::exp(s) - 1) < 1e-12);
    }
  }
}

TEST_CASE("profile derivatives against finite differences") {
  for (double beta : {0.3, 1.0, 2.2}) {
    const ProfileParams p{0.5, 3, beta};
    for (double s : {0.5, 4.0, 39.0, 41.0, 150.0}) {
      const double h = 1e-4 * s;
      const auto f = [&](double x) { return special::varphi(p, x); };
      const double d1 = (f(s + h) - f(s - h)) / (2 * h);
      const double d2 = (f(s + h) - 2 * f(s) + f(s - h)) / (h * h);
      const auto jet = special::varphi_jet(p, s);
      CHECK(std::abs(jet.d1 - d1) < 1e-7 * (std::abs(d1) + std::abs(jet.value) / s));
      CHECK(std::abs(jet.d2 - d2) < 1e-4 * (std::abs(d2) + std::abs(jet.value) / (s * s)));
    }
  }
}

TEST_CASE("profile continuous across the series/asymptotic switch") {
  const ProfileParams p{0.0, 3, 0.7};
  const double below = special::varphi(p, std::nextafter(special::kSeriesSwitch, 0.0));
  const double above = special::varphi(p, std::nextafter(special::kSeriesSwitch, 100.0));
  CHECK(rel(below, above) < 1e-13);
}

TEST_CASE("profile parameter validation") {
  CHECK_THROWS_AS(special::varphi(ProfileParams{1.0, 3, 0.5}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(special::varphi(ProfileParams{0.0, 1, 0.5}, 1.0), InvalidArgument);
  CHECK_THROWS_AS(special::varphi(ProfileParams{0.0, 3, 0.5}, -1.0), InvalidArgument);
}

TEST_CASE("adaptive Gauss-Kronrod") {
  const auto r = quadrature::integrate<double>([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(r.value - 2.0 / 3.0) < 1e-11);
  const auto g = quadrature::integrate<double>([](double x) { return std::exp(-x * x); }, -6.0, 6.0, 1e-13);
  CHECK(std::abs(g.value - std::sqrt(std::numbers::pi)) < 1e-12);
  CHECK_THROWS_AS(quadrature::integrate<double>([](double x) { return 1 / x; }, 0.0, 1.0, 1e-12, 0.0, 50),
                  ConvergenceError);
}

}  // TEST_SUITE
