#include <doctest.h>

#include <cmath>
#include <numbers>

#include "decaylab/errors.hpp"
#include "decaylab/initial_data.hpp"
#include "decaylab/radial_grid.hpp"
#include "decaylab/radial_wave.hpp"

using namespace decaylab;

TEST_SUITE("radial_grid") {

TEST_CASE("sphere areas") {
  CHECK(sphere_area(2) == doctest::Approx(2 * std::numbers::pi));
  CHECK(sphere_area(3) == doctest::Approx(4 * std::numbers::pi));
  CHECK(sphere_area(4) == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("annulus volume") {
  const RadialGrid grid({0.0, 3, 1.0}, 5.0, 4095);
  const double v = integrate(grid, RadialField::Ones(grid.size()));
  CHECK(std::abs(v / 519.40998539351248209 - 1) < 1e-6);
}

TEST_CASE("build_grid covers support plus light cone") {
  const auto grid = build_grid({0.0, 3, 1.0}, 1.5, 10.0, 0.05);
  CHECK(grid.interior() == 231);
  CHECK(grid.r_outer() == doctest::Approx(12.6));
  CHECK(grid.dr() == doctest::Approx(0.05));
  CHECK(grid.nodes()[grid.size() - 1] == grid.r_outer());
  CHECK(grid.half_nodes().size() == grid.size() - 1);
  CHECK_THROWS_AS(build_grid({0.0, 3, 1.0}, 1.5, 10.0, 0.5), InvalidArgument);
  CHECK_THROWS_AS(build_grid({0.0, 3, 1.0}, 1.5, -1.0, 0.05), InvalidArgument);
  CHECK_THROWS_AS(build_grid({1.0, 3, 1.0}, 1.5, 1.0, 0.05), InvalidArgument);
  CHECK_THROWS_AS(build_grid({0.0, 1, 1.0}, 1.5, 1.0, 0.05), InvalidArgument);
}

TEST_CASE("discrete Laplacian is exact on the radial fundamental solution") {
  // r^{2-N} is harmonic; the flux form reproduces it up to O(dr^2)
  const RadialGrid grid({0.0, 3, 1.0}, 3.0, 399);
  const RadialField u = grid.nodes().array().inverse();
  const RadialField lap = laplacian(grid, u);
  CHECK(lap.segment(1, grid.size() - 2).cwiseAbs().maxCoeff() < 1e-4);
  CHECK(lap[0] == 0.0);
}

TEST_CASE("summation by parts") {
  // -sum u Lap(v) dV = sum grad u grad v dS for u, v vanishing at both ends
  const RadialGrid grid({0.5, 3, 1.0}, 4.0, 59);
  RadialField u = grid.zeros(), v = grid.zeros();
  for (Eigen::Index i = 1; i + 1 < grid.size(); ++i) {
    u[i] = std::sin(0.7 * i);
    v[i] = std::cos(1.3 * i) + 0.1 * i;
  }
  const double lhs = -integrate(grid, u.cwiseProduct(laplacian(grid, v)));
  const double rhs = integrate_half(grid, gradient(grid, u).cwiseProduct(gradient(grid, v)));
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
}

}  // TEST_SUITE

TEST_SUITE("initial_data") {

TEST_CASE("descriptor round trip") {
  for (const char* text : {"bump:center=2,width=0.5,amp=1", "bump:center=3,width=1,amp=-2,vel=0.5",
                           "polytail:power=5,cutoff=16,amp=1"}) {
    const auto d = parse_descriptor(text);
    CHECK(d.to_string() == text);
    CHECK(parse_descriptor(d.to_string()).to_string() == d.to_string());
  }
  CHECK(parse_descriptor("bump:amp=2,center=3").to_string() == "bump:center=3,width=0.5,amp=2");
  CHECK(parse_descriptor("polytail").family() == "polytail");
}

TEST_CASE("descriptor errors") {
  CHECK_THROWS_AS(parse_descriptor("gauss:center=2"), InvalidArgument);
  CHECK_THROWS_AS(parse_descriptor("bump:depth=2"), InvalidArgument);
  CHECK_THROWS_AS(parse_descriptor("bump:center=two"), InvalidArgument);
  CHECK_THROWS_AS(parse_descriptor("bump:center"), InvalidArgument);
  const ModelParams params{0.0, 3, 1.0};
  CHECK_THROWS_AS(parse_descriptor("bump:center=1.2,width=0.5").validate(params), InvalidArgument);
  CHECK_THROWS_AS(parse_descriptor("polytail:cutoff=1.5").validate(params), InvalidArgument);
}

TEST_CASE("support extents") {
  const ModelParams params{0.0, 3, 1.0};
  CHECK(parse_descriptor("bump:center=2,width=0.5").support_extent(params) == doctest::Approx(1.5));
  CHECK(parse_descriptor("polytail:cutoff=16").support_extent(params) == doctest::Approx(31.0));
}

TEST_CASE("bump derivatives") {
  const BumpProfile b{2.0, 0.5, 1.5};
  for (double r : {1.6, 1.9, 2.05, 2.4}) {
    const double h = 1e-5;
    CHECK(b.d1(r) == doctest::Approx((b.value(r + h) - b.value(r - h)) / (2 * h)).epsilon(1e-8));
    CHECK(b.d2(r) == doctest::Approx((b.d1(r + h) - b.d1(r - h)) / (2 * h)).epsilon(1e-8));
  }
  CHECK(b.value(1.5) == 0.0);
  CHECK(b.value(2.0) == 1.5);
}

TEST_CASE("bump integrals") {
  const RadialGrid grid({0.0, 3, 1.0}, 3.0, 1999);
  const auto data = sample(parse_descriptor("bump:center=2,width=0.5,amp=1"), grid);
  CHECK(integrate(grid, data.u0.cwiseAbs2()) == doctest::Approx(15.105968454352169071).epsilon(1e-6));
  const RadialField g = gradient(grid, data.u0);
  CHECK(integrate_half(grid, g.cwiseAbs2()) == doctest::Approx(295.75151353251553498).epsilon(1e-5));
  CHECK(data.u1.isZero());
  CHECK(data.family == "bump");
}

TEST_CASE("velocity factor") {
  const RadialGrid grid({0.0, 3, 1.0}, 3.0, 99);
  const auto data = sample(parse_descriptor("bump:center=2,width=0.5,vel=-2"), grid);
  CHECK((data.u1 + 2 * data.u0).isZero());
}

TEST_CASE("second time data matches the radial Laplacian") {
  // r = 2.1 is node 1100 at dr = 1e-3
  const RadialGrid grid({0.0, 3, 1.0}, 3.0, 1999);
  const auto data = sample(parse_descriptor("bump:center=2,width=0.5"), grid);
  const RadialField u2 = second_time_data(data, grid);
  CHECK(grid.nodes()[1100] == doctest::Approx(2.1));
  CHECK(u2[1100] == doctest::Approx(23.930002285714285714).epsilon(1e-5));
}

TEST_CASE("polytail profile") {
  const PolyTailProfile p{5.0, 16.0, 1.0};
  CHECK(p.value(1.0, 1.0) == 0.0);
  CHECK(p.value(4.0, 1.0) == doctest::Approx(std::pow(4.0, -5)));
  CHECK(p.value(32.0, 1.0) == 0.0);
  CHECK(p.value(24.0, 1.0) > 0.0);
}

TEST_CASE("support of sampled fields") {
  const RadialGrid grid({0.0, 3, 1.0}, 5.0, 399);
  const auto data = sample(parse_descriptor("bump:center=2,width=0.5"), grid);
  const double extent = support_extent_of(grid, data.u0, data.u1, 0.0);
  CHECK(extent <= 1.5 + 1e-12);
  CHECK(extent > 1.45);
}

}  // TEST_SUITE
