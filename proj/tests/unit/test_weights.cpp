#include <doctest.h>

#include <cmath>
#include <sstream>
#include <vector>

#include "decaylab/errors.hpp"
#include "decaylab/weights.hpp"

using namespace decaylab;

TEST_SUITE("weights") {

TEST_CASE("Phi reference value") {
  // t0 = 0 evaluates at the literal time; t0 = 1 shifts it by one
  CHECK(phi_weight(WeightSpec{{0.0, 3, 0.5}, 0.0}, 1.0, 4.0) ==
        doctest::Approx(0.48977577436051167464).epsilon(1e-13));
  CHECK(phi_weight(make_weight_spec(0.0, 3, 0.5, 1.0), 1.0, 3.0) ==
        doctest::Approx(0.48977577436051167464).epsilon(1e-13));
}

TEST_CASE("time derivative shifts the exponent") {
  const auto spec = WeightSpec{{0.0, 3, 1.5}, 0.0};
  CHECK(phi_time_derivative(spec, 1.0, 1.0) == doctest::Approx(-0.97350097883925608531).epsilon(1e-12));
  for (double alpha : {0.0, 0.5}) {
    const auto s2 = make_weight_spec(alpha, 3, 0.8, 2.0);
    for (double r : {1.0, 2.5, 7.0}) {
      for (double t : {0.5, 3.0, 40.0}) {
        CHECK(phi_time_derivative(s2, r, t) ==
              doctest::Approx(-0.8 * phi_weight(s2.with_beta(1.8), r, t)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("initial trace") {
  const auto spec = WeightSpec{{0.5, 2, 0.4}, 0.0};
  CHECK(phi_initial_trace(spec, 1.5) == doctest::Approx(0.72822818683231709184).epsilon(1e-13));
  CHECK(phi_weight(spec, 1.5, 1e-4) == doctest::Approx(0.72824245884530510566).epsilon(1e-11));
  // the formula without (2-alpha)^{2beta} and with r^{+(2-alpha)beta} is far off
  CHECK(std::abs(0.8564538941446668478 / phi_initial_trace(spec, 1.5) - 1) > 0.15);
}

TEST_CASE("psi") {
  const auto spec = make_weight_spec(0.5, 3, 1.5, 2.0);
  const double rho = std::pow(3.0, 1.5) / 2.25;
  CHECK(psi(spec, 3.0, 1.0) == doctest::Approx(std::pow(3.0 + rho, 1.5)).epsilon(1e-14));
  CHECK(parabolic_radius(0.5, 3.0) == doctest::Approx(rho).epsilon(1e-15));
}

TEST_CASE("envelope constants") {
  // beta = c: varphi = e^{-s}, upper constant max e^{-s}(1+s)^{3/2}. The scan
  // is a log grid, so only a few digits.
  const auto edge = make_weight_spec(0.0, 3, 1.5, 1.0);
  CHECK(phi_upper_constant(edge) == doctest::Approx(1.1142679722372073256).epsilon(1e-4));
  CHECK_THROWS_AS(phi_envelope_constants(edge), RegimeError);
  const auto env = phi_envelope_constants(make_weight_spec(0.0, 3, 0.5, 1.0));
  CHECK(env.lower > 0);
  CHECK(env.lower <= 1.0);
  CHECK(env.upper >= 1.0);
}

TEST_CASE("Phi sits between the envelope times Psi^{-beta}") {
  for (double beta : {0.3, 1.0, 1.5}) {
    const auto spec = make_weight_spec(0.5, 3, beta, 4.0);
    const auto env = phi_envelope_constants(spec);
    for (double r = 1.0; r < 300.0; r *= 1.7) {
      for (double t : {0.0, 10.0, 500.0}) {
        const double ratio = phi_weight(spec, r, t) * psi(spec, r, t);
        CHECK(ratio >= env.lower * (1 - 1e-9));
        CHECK(ratio <= env.upper * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("starred exponents") {
  const auto s = starred_exponents(0.5, 1.5);
  CHECK(s.eps > 0);
  CHECK(s.lambda_star > 0.5);
  CHECK(s.lambda_star < 1.5);
  CHECK((1 - 2 * s.eps) * s.lambda_star == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("validation") {
  CHECK_THROWS_AS(make_weight_spec(1.2, 3, 0.5, 1.0), InvalidArgument);
  CHECK_THROWS_AS(make_weight_spec(0.0, 3, 0.5, -1.0), InvalidArgument);
  CHECK_THROWS_AS(phi_weight(WeightSpec{{0.0, 3, 0.5}, 0.0}, 1.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(make_weight_spec(0.0, 3, 0.5, 0.5), InvalidArgument);
}

TEST_CASE("tables") {
  std::ostringstream prof, weight;
  const std::vector<double> s{0.0, 1.0};
  write_profile_table(prof, special::ProfileParams{0.0, 3, 0.5}, s);
  CHECK(prof.str().rfind("s,varphi\n0,1\n1,0.74682413281242", 0) == 0);
  const std::vector<double> r{1.0}, t{3.0};
  write_weight_table(weight, make_weight_spec(0.0, 3, 0.5, 1.0), r, t);
  CHECK(weight.str().rfind("r,t,Phi\n1,3,0.4897757743605", 0) == 0);
}

}  // TEST_SUITE
