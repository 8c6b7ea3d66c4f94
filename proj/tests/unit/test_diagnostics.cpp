#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "decaylab/diagnostics.hpp"
#include "decaylab/errors.hpp"
#include "decaylab/radial_heat.hpp"

using namespace decaylab;

namespace {

RadialGrid fine_grid(double alpha = 0.0) { return RadialGrid({alpha, 3, 1.0}, 3.0, 1999); }

WaveState sine_state(const RadialGrid& grid) {
  WaveState s{grid.zeros(), grid.zeros(), 0.0};
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    s.u[i] = std::sin(std::numbers::pi * (grid.nodes()[i] - 1) / 2);
  }
  s.u[0] = s.u[grid.size() - 1] = 0.0;
  return s;
}

}  // namespace

TEST_SUITE("diagnostics") {

TEST_CASE("unweighted gradient energy of a sine") {
  const auto grid = fine_grid();
  const WaveState s = sine_state(grid);
  CHECK(energy_dx(0.0, 1.0, s, grid) == doctest::Approx(140.64371758847880724).epsilon(1e-6));
  CHECK(energy_dt(0.0, 1.0, s, grid) == 0.0);
}

TEST_CASE("weighted energies scale with Psi") {
  // with r fixed, Psi^beta = (t0 + t + rho)^beta; a constant field isolates it
  const RadialGrid grid({0.0, 3, 1.0}, 1.0 + 1e-3, 1);
  WaveState s{grid.zeros(), RadialField::Ones(grid.size()), 2.0};
  const double rho0 = grid.parabolic_nodes()[0];
  const double rho1 = grid.parabolic_nodes()[1];
  const double expected = grid.volume_weights()[0] * std::pow(5.0 + rho0, 1.5) +
                          grid.volume_weights()[2] * std::pow(5.0 + grid.parabolic_nodes()[2], 1.5) +
                          grid.volume_weights()[1] * std::pow(5.0 + rho1, 1.5);
  CHECK(energy_dt(1.5, 3.0, s, grid) == doctest::Approx(expected).epsilon(1e-14));
}

TEST_CASE("data norms") {
  const auto grid = fine_grid();
  const auto data = sample(parse_descriptor("bump:center=2,width=0.5"), grid);
  const auto norms = data_norms(data, grid, 2.0);
  CHECK(norms.e0 == doctest::Approx(1247.7459189344285788).epsilon(1e-5));
  CHECK(norms.low == doctest::Approx(15.105968454352169071).epsilon(1e-6));
  CHECK(norms.e1 > 0);
  const auto half = fine_grid(0.5);
  const auto d2 = sample(parse_descriptor("bump:center=2,width=0.5"), half);
  CHECK(data_norms(d2, half, 1.0).low == doctest::Approx(10.659651701690487652).epsilon(1e-6));
}

TEST_CASE("gamma range") {
  const ModelParams p{0.5, 3, 1.0};
  CHECK(gamma_in_range(0.5, p));
  CHECK(gamma_in_range(3.9, p));
  CHECK_FALSE(gamma_in_range(4.0, p));
  CHECK_FALSE(gamma_in_range(0.4, p));
}

TEST_CASE("energy weights for gamma") {
  const auto w = EnergyWeights::for_gamma(1.5, 0.5, 16.0);
  CHECK(w.beta == doctest::Approx(1.0));
  CHECK(w.lambda == doctest::Approx(0.0));
  CHECK(w.t0 == 16.0);
}

TEST_CASE("E_phi regime and value at a static bump") {
  const auto grid = fine_grid();
  const auto data = sample(parse_descriptor("bump:center=2,width=0.5"), grid);
  const WaveState s = initial_state(data);
  // lambda = 0: Phi_0 = 1 so the integrand is a u^2
  CHECK(energy_phi(0.0, 16.0, s, grid) == doctest::Approx(15.105968454352169071).epsilon(1e-6));
  CHECK(energy_phi(1.0, 16.0, s, grid) > 0);
  CHECK_THROWS_AS(energy_phi(1.5, 16.0, s, grid), RegimeError);
  CHECK_THROWS_AS(energy_phi(-0.1, 16.0, s, grid), RegimeError);
  CHECK(std::isnan(energy_phi_or_nan(1.5, 16.0, s, grid)));
  CHECK(energy_star(0.5, 16.0, s, grid) == 0.0);
}

TEST_CASE("Hardy inequalities on a sine") {
  const auto grid = fine_grid(0.5);
  const WaveState s = sine_state(grid);
  for (double lambda : {-0.5, 0.0, 1.0, 2.5}) {
    const auto h = hardy_check(s.u, lambda, 4.0, grid);
    CHECK(h.lhs > 0);
    CHECK(h.lhs <= h.rhs);
  }
  CHECK_THROWS_AS(hardy_check(s.u, -0.7, 4.0, grid), RegimeError);
  const auto p = power_hardy_check(s.u, grid);
  CHECK(p.lhs <= p.rhs);
  CHECK(power_hardy_constant({0.0, 3, 1.0}) == doctest::Approx(2.25));
  CHECK(power_hardy_constant({0.5, 3, 1.0}) == doctest::Approx(1.5625));
}

TEST_CASE("rate fit recovers an exact power") {
  std::vector<std::pair<double, double>> series;
  for (double t = 1.0; t <= 100.0; t *= 1.3) series.emplace_back(t, 7.0 * std::pow(t, -1.25));
  const auto fit = fit_decay_rate(series, {2.0, 60.0});
  CHECK(fit.slope == doctest::Approx(-1.25).epsilon(1e-12));
  CHECK(std::exp(fit.intercept) == doctest::Approx(7.0).epsilon(1e-12));
  CHECK(fit.residual < 1e-12);
  CHECK(fit.points > 5);
  CHECK_THROWS_AS(fit_decay_rate(series, {200.0, 300.0}), InvalidArgument);
  series.emplace_back(50.0, 0.0);
  CHECK_THROWS_AS(fit_decay_rate(series, {2.0, 60.0}), InvalidArgument);
}

TEST_CASE("diffusion gap") {
  const auto grid = fine_grid();
  const auto data = sample(parse_descriptor("bump:center=2,width=0.5"), grid);
  const std::vector<WaveState> wave{{data.u0, data.u1, 0.0}, {data.u0, data.u1, 3.0}};
  const std::vector<HeatState> heat{{data.u0, 0.0}, {grid.zeros(), 3.0}};
  const auto gap = diffusion_gap(wave, heat, grid, 2.0);
  REQUIRE(gap.size() == 2);
  CHECK(gap[0].gap == 0.0);
  CHECK(gap[1].gap * gap[1].gap == doctest::Approx(15.105968454352169071).epsilon(1e-6));
  CHECK(gap[1].normalized == doctest::Approx(gap[1].gap * 2.0));  // (1+3)^{1/2}
  CHECK_THROWS_AS(diffusion_gap(wave, {heat[0]}, grid, 2.0), InvalidArgument);
  CHECK_THROWS_AS(diffusion_gap(wave, {heat[0], {grid.zeros(), 2.0}}, grid, 2.0), InvalidArgument);
}

TEST_CASE("dissipation meter") {
  const RadialGrid grid({0.0, 3, 1.0}, 2.0, 9);
  WaveState a{grid.zeros(), RadialField::Constant(grid.size(), 2.0), 0.0};
  WaveState b = a;
  b.t = 0.5;
  WaveState c = a;
  c.t = 1.0;
  DissipationMeter meter(grid, 0.0, 1.0);
  CHECK(meter.total() == 0.0);
  meter(a, b);
  meter(b, c);
  // beta = 0: the rate is a constant 4 * volume
  const double rate = 4 * integrate_dmu(grid, RadialField::Ones(grid.size()));
  CHECK(meter.total() == doctest::Approx(rate));
  CHECK(meter.history().size() == 3);
  CHECK(meter.at(0.4) == doctest::Approx(0.5 * rate));
  CHECK(meter.at(0.0) == 0.0);
  CHECK(meter.at(10.0) == doctest::Approx(rate));
}

TEST_CASE("energy record collects every functional") {
  const auto grid = fine_grid();
  const auto data = sample(parse_descriptor("bump:center=2,width=0.5,vel=1"), grid);
  const WaveState s = initial_state(data);
  const auto w = EnergyWeights::for_gamma(2.0, 0.0, 16.0);
  const auto rec = energy_record(w, s, grid);
  CHECK(rec.e_dx == energy_dx(1.0, 16.0, s, grid));
  CHECK(rec.e_dt == energy_dt(1.0, 16.0, s, grid));
  CHECK(rec.e_a == energy_a(1.0, 16.0, 0.0, s.u, grid));
  CHECK(rec.e_phi == energy_phi(0.0, 16.0, s, grid));
  CHECK(rec.e_star == energy_star(0.0, 16.0, s, grid));
  CHECK(rec.dissip == 0.0);
}

}  // TEST_SUITE
