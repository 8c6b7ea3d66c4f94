#include "decaylab/radial_wave.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "decaylab/errors.hpp"

namespace decaylab {

namespace {

void clear_boundary(RadialField& f) {
  f[0] = 0.0;
  f[f.size() - 1] = 0.0;
}

Eigen::VectorXd damping_of(const RadialGrid& grid, Damping damping) {
  return damping == Damping::on ? grid.damping() : Eigen::VectorXd::Zero(grid.size());
}

// Advances (u, ut) given L u; returns the new state and leaves L u^{n+1} in lap.
WaveState advance(const WaveState& s, const RadialGrid& grid, const Eigen::VectorXd& a, double dt,
                  RadialField& lap) {
  WaveState next;
  next.u = s.u + dt * s.ut + (0.5 * dt * dt) * (lap - a.cwiseProduct(s.ut));
  clear_boundary(next.u);
  lap = laplacian(grid, next.u);
  next.ut = ((2.0 / dt) * (next.u - s.u) + dt * lap).array() / (2.0 + dt * a.array());
  clear_boundary(next.ut);
  if (!next.u.allFinite() || !next.ut.allFinite()) {
    throw NumericalError("wave solver produced a non-finite value at t = " +
                         std::to_string(s.t + dt));
  }
  next.t = s.t + dt;
  return next;
}

}  // namespace

void check_cfl(const RadialGrid& grid, double dt) {
  if (dt == 0 || !std::isfinite(dt)) throw CflError("time step must be finite and nonzero");
  if (std::abs(dt) > 0.9 * grid.dr()) {
    throw CflError("time step " + std::to_string(dt) + " violates dt <= 0.9 dr = " +
                   std::to_string(0.9 * grid.dr()));
  }
}

RadialField second_time_data(const InitialData& data, const RadialGrid& grid) {
  RadialField u2 = -laplacian(grid, data.u0) + grid.damping().cwiseProduct(data.u1);
  clear_boundary(u2);
  return u2;
}

WaveState initial_state(const InitialData& data) {
  WaveState s{data.u0, data.u1, 0.0};
  clear_boundary(s.u);
  clear_boundary(s.ut);
  return s;
}

WaveState step_wave(const WaveState& state, const RadialGrid& grid, double dt, Damping damping) {
  check_cfl(grid, dt);
  RadialField lap = laplacian(grid, state.u);
  return advance(state, grid, damping_of(grid, damping), dt, lap);
}

double discrete_energy(const WaveState& state, const RadialGrid& grid, double dt,
                       Damping damping) {
  const Eigen::VectorXd a = damping_of(grid, damping);
  const RadialField base =
      state.u + (0.5 * dt * dt) * (laplacian(grid, state.u) - a.cwiseProduct(state.ut));
  const RadialField up = base + dt * state.ut;
  const RadialField down = base - dt * state.ut;
  const Eigen::VectorXd gu = gradient(grid, state.u);
  const double forward = integrate(grid, ((up - state.u) / dt).cwiseAbs2()) +
                         integrate_half(grid, gradient(grid, up).cwiseProduct(gu));
  const double backward = integrate(grid, ((state.u - down) / dt).cwiseAbs2()) +
                          integrate_half(grid, gradient(grid, down).cwiseProduct(gu));
  return 0.5 * (forward + backward);
}

double plain_energy(const WaveState& state, const RadialGrid& grid) {
  return integrate(grid, state.ut.cwiseAbs2()) + integrate_half(grid, gradient(grid, state.u).cwiseAbs2());
}

std::vector<WaveState> run_wave(const InitialData& data, const RadialGrid& grid,
                                const WaveRunOptions& options, const WaveObserver& observer) {
  if (data.u0.size() != grid.size() || data.u1.size() != grid.size()) {
    throw InvalidArgument("initial data do not match the grid");
  }
  if (!(options.t_final >= 0)) throw InvalidArgument("final time must be non-negative");
  check_cfl(grid, options.dt);
  const double dt = options.dt;
  const auto steps = static_cast<long long>(std::llround(options.t_final / dt));

  const std::size_t count = options.sample_times.size();
  std::vector<long long> wanted(count);
  for (std::size_t j = 0; j < count; ++j) {
    wanted[j] = std::clamp<long long>(std::llround(options.sample_times[j] / dt), 0, steps);
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return wanted[a] < wanted[b]; });

  std::vector<WaveState> out(count);
  std::size_t next_sample = 0;
  auto collect = [&](long long step, const WaveState& s) {
    while (next_sample < count && wanted[order[next_sample]] == step) {
      out[order[next_sample++]] = s;
    }
  };

  const Eigen::VectorXd a = damping_of(grid, options.damping);
  WaveState state = initial_state(data);
  RadialField lap = laplacian(grid, state.u);
  collect(0, state);
  for (long long k = 1; k <= steps; ++k) {
    WaveState next = advance(state, grid, a, dt, lap);
    next.t = static_cast<double>(k) * dt;
    if (observer) observer(state, next);
    state = std::move(next);
    collect(k, state);
  }
  return out;
}

}  // namespace decaylab
