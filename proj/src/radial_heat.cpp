#include "decaylab/radial_heat.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "decaylab/errors.hpp"

namespace decaylab {

double dmu_inner(const RadialField& f, const RadialField& g, const RadialGrid& grid) {
  return integrate_dmu(grid, f.cwiseProduct(g));
}

double l2_dmu_norm(const RadialField& f, const RadialGrid& grid) {
  return std::sqrt(integrate_dmu(grid, f.cwiseAbs2()));
}

RadialField heat_operator(const RadialGrid& grid, const RadialField& f) {
  // r^alpha = 1 / a(r)
  return laplacian(grid, f).cwiseQuotient(grid.damping());
}

RadialField asymptotic_profile(const InitialData& data, const RadialGrid& grid) {
  return data.u0 + data.u1.cwiseQuotient(grid.damping());
}

HeatStepper::HeatStepper(const RadialGrid& grid, double dt) : grid_(&grid), dt_(dt) {
  if (!(dt > 0) || !std::isfinite(dt)) throw InvalidArgument("heat time step must be positive");
  const Eigen::Index m = grid.size();
  lower_ = grid.laplacian_down().cwiseQuotient(grid.damping());
  upper_ = grid.laplacian_up().cwiseQuotient(grid.damping());
  pivot_ = Eigen::VectorXd::Zero(m);
  factor_ = Eigen::VectorXd::Zero(m);
  const double h = 0.5 * dt;
  double previous_factor = 0.0;
  for (Eigen::Index i = 1; i < m - 1; ++i) {
    const double diag = 1 + h * (lower_[i] + upper_[i]);
    const double sub = i > 1 ? -h * lower_[i] : 0.0;
    const double denom = diag - sub * previous_factor;
    // Strict diagonal dominance keeps denom >= 1 for dt > 0.
    if (!(denom > 0)) throw NumericalError("singular Crank-Nicolson system");
    pivot_[i] = denom;
    factor_[i] = -h * upper_[i] / denom;
    previous_factor = factor_[i];
  }
}

HeatState HeatStepper::step(const HeatState& state) const {
  const Eigen::Index m = grid_->size();
  const double h = 0.5 * dt_;
  const RadialField& v = state.v;
  RadialField x = RadialField::Zero(m);
  // forward sweep on the right-hand side (I + dt/2 L) v
  double previous = 0.0;
  for (Eigen::Index i = 1; i < m - 1; ++i) {
    const double rhs =
        v[i] + h * (upper_[i] * (v[i + 1] - v[i]) - lower_[i] * (v[i] - v[i - 1]));
    const double sub = i > 1 ? -h * lower_[i] : 0.0;
    x[i] = (rhs - sub * previous) / pivot_[i];
    previous = x[i];
  }
  for (Eigen::Index i = m - 3; i >= 1; --i) x[i] -= factor_[i] * x[i + 1];
  if (!x.allFinite()) throw NumericalError("heat solver produced a non-finite value");
  return {std::move(x), state.t + dt_};
}

HeatState step_heat(const HeatState& state, const RadialGrid& grid, double dt) {
  return HeatStepper(grid, dt).step(state);
}

std::vector<HeatState> run_heat(const RadialField& f, const RadialGrid& grid, double t_final,
                                double dt, const std::vector<double>& sample_times,
                                const HeatObserver& observer) {
  if (f.size() != grid.size()) throw InvalidArgument("heat datum does not match the grid");
  if (!(t_final >= 0)) throw InvalidArgument("final time must be non-negative");
  const HeatStepper stepper(grid, dt);
  const auto steps = static_cast<long long>(std::llround(t_final / dt));

  const std::size_t count = sample_times.size();
  std::vector<long long> wanted(count);
  for (std::size_t j = 0; j < count; ++j) {
    wanted[j] = std::clamp<long long>(std::llround(sample_times[j] / dt), 0, steps);
  }
  std::vector<std::size_t> order(count);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return wanted[a] < wanted[b]; });

  std::vector<HeatState> out(count);
  std::size_t next_sample = 0;
  auto collect = [&](long long step, const HeatState& s) {
    while (next_sample < count && wanted[order[next_sample]] == step) {
      out[order[next_sample++]] = s;
    }
  };

  HeatState state{f, 0.0};
  state.v[0] = state.v[grid.size() - 1] = 0.0;
  collect(0, state);
  for (long long k = 1; k <= steps; ++k) {
    HeatState next = stepper.step(state);
    next.t = static_cast<double>(k) * dt;
    if (observer) observer(state, next);
    state = std::move(next);
    collect(k, state);
  }
  return out;
}

}  // namespace decaylab
