#include "decaylab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <limits>
#include <string>

#include "decaylab/errors.hpp"
#include "decaylab/weights.hpp"

namespace decaylab {

namespace {

// Psi^beta(r, time) at nodes or half nodes; time is absolute.
Eigen::VectorXd psi_power(const Eigen::VectorXd& parabolic, double time, double beta) {
  return (parabolic.array() + time).pow(beta).matrix();
}

Eigen::VectorXd node_psi(const RadialGrid& grid, double time, double beta) {
  return psi_power(grid.parabolic_nodes(), time, beta);
}

Eigen::VectorXd half_psi(const RadialGrid& grid, double time, double beta) {
  return psi_power(grid.parabolic_half_nodes(), time, beta);
}

}  // namespace

double energy_dx(double beta, double t0, const WaveState& state, const RadialGrid& grid) {
  const Eigen::VectorXd g = gradient(grid, state.u);
  return integrate_half(grid, g.cwiseAbs2().cwiseProduct(half_psi(grid, t0 + state.t, beta)));
}

double energy_dt(double beta, double t0, const WaveState& state, const RadialGrid& grid) {
  return integrate(grid, state.ut.cwiseAbs2().cwiseProduct(node_psi(grid, t0 + state.t, beta)));
}

double energy_a(double beta, double t0, double t, const RadialField& w, const RadialGrid& grid) {
  return integrate_dmu(grid, w.cwiseAbs2().cwiseProduct(node_psi(grid, t0 + t, beta)));
}

double energy_phi(double lambda, double t0, const WaveState& state, const RadialGrid& grid) {
  const ModelParams& p = grid.params();
  const double c = p.cexp();
  if (!(lambda >= 0 && lambda < c)) {
    throw RegimeError("E_Phi needs 0 <= lambda < " + std::to_string(c) + ", got " +
                      std::to_string(lambda));
  }
  const StarredExponents star = starred_exponents(lambda, c);
  const WeightSpec spec{{p.alpha, p.dim, star.lambda_star}, t0};
  const double power = -1 + 2 * star.eps;
  const Eigen::VectorXd& r = grid.nodes();
  Eigen::VectorXd integrand(grid.size());
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    const double u = state.u[i];
    const double density = 2 * u * state.ut[i] + grid.damping()[i] * u * u;
    integrand[i] = density == 0 ? 0.0 : density * std::pow(phi_weight(spec, r[i], state.t), power);
  }
  return integrate(grid, integrand);
}

double energy_phi_or_nan(double lambda, double t0, const WaveState& state, const RadialGrid& grid) {
  const double c = grid.params().cexp();
  if (!(lambda >= 0 && lambda < c)) return std::numeric_limits<double>::quiet_NaN();
  return energy_phi(lambda, t0, state, grid);
}

double energy_star(double lambda, double t0, const WaveState& state, const RadialGrid& grid) {
  return 2 * integrate(grid, state.u.cwiseProduct(state.ut).cwiseProduct(
                                 node_psi(grid, t0 + state.t, lambda)));
}

HardySides hardy_check(const RadialField& w, double lambda, double t0, const RadialGrid& grid) {
  const ModelParams& p = grid.params();
  const double shift = (p.dim - 2) / (2 - p.alpha);
  if (!(lambda > -shift)) {
    throw RegimeError("weighted Hardy inequality needs lambda > " + std::to_string(-shift));
  }
  const double k = std::min(p.cexp(), shift + lambda);
  const double lhs = integrate_dmu(grid, w.cwiseAbs2().cwiseProduct(node_psi(grid, t0, lambda - 1)));
  const Eigen::VectorXd g = gradient(grid, w);
  const double grad = integrate_half(grid, g.cwiseAbs2().cwiseProduct(half_psi(grid, t0, lambda)));
  return {lhs, 4 / (k * k) * grad};
}

double power_hardy_constant(const ModelParams& params) {
  const double h = (params.dim - params.alpha) / 2;
  return h * h;
}

HardySides power_hardy_check(const RadialField& w, const RadialGrid& grid) {
  const double alpha = grid.params().alpha;
  const double lhs = integrate_dmu(grid, w.cwiseAbs2());
  const Eigen::VectorXd g = gradient(grid, w);
  const Eigen::VectorXd weight = grid.half_nodes().array().pow(2 - alpha);
  const double rhs = integrate_half(grid, g.cwiseAbs2().cwiseProduct(weight));
  return {lhs, rhs / power_hardy_constant(grid.params())};
}

std::vector<GapSample> diffusion_gap(const std::vector<WaveState>& wave,
                                     const std::vector<HeatState>& heat, const RadialGrid& grid,
                                     double gamma) {
  if (wave.size() != heat.size()) throw InvalidArgument("trajectories differ in length");
  const double alpha = grid.params().alpha;
  const double exponent = (gamma - alpha) / (2 * (2 - alpha));
  std::vector<GapSample> out;
  out.reserve(wave.size());
  for (std::size_t j = 0; j < wave.size(); ++j) {
    const WaveState& u = wave[j];
    const HeatState& v = heat[j];
    if (u.u.size() != grid.size() || v.v.size() != grid.size()) {
      throw InvalidArgument("trajectory sample does not match the grid");
    }
    if (std::abs(u.t - v.t) > 1e-9 * std::max(1.0, std::abs(u.t))) {
      throw InvalidArgument("trajectories sampled at different times: " + std::to_string(u.t) +
                            " vs " + std::to_string(v.t));
    }
    const double gap = l2_dmu_norm(u.u - v.v, grid);
    out.push_back({u.t, gap, gap * std::pow(1 + u.t, exponent)});
  }
  return out;
}

RateFit fit_decay_rate(const std::vector<std::pair<double, double>>& series,
                       std::pair<double, double> window) {
  std::vector<std::pair<double, double>> points;
  for (const auto& [t, value] : series) {
    if (t < window.first || t > window.second) continue;
    if (!(value > 0) || !(t > 0)) {
      throw InvalidArgument("rate fit needs positive values and times; got " +
                            std::to_string(value) + " at t = " + std::to_string(t));
    }
    points.emplace_back(std::log(t), std::log(value));
  }
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n < 2) throw InvalidArgument("rate fit needs at least two samples in the window");
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    design(i, 0) = points[i].first;
    design(i, 1) = 1.0;
    rhs[i] = points[i].second;
  }
  const Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  const double rms = std::sqrt((design * coef - rhs).squaredNorm() / static_cast<double>(n));
  return {coef[0], coef[1], rms, static_cast<int>(n)};
}

bool gamma_in_range(double gamma, const ModelParams& params) {
  return gamma >= params.alpha && gamma < params.dim + 2 - 2 * params.alpha;
}

DataNorms data_norms(const InitialData& data, const RadialGrid& grid, double gamma) {
  const RadialField u2 = second_time_data(data, grid);
  const Eigen::ArrayXd r = grid.nodes().array();
  const Eigen::ArrayXd rh = grid.half_nodes().array();
  const Eigen::VectorXd g0 = gradient(grid, data.u0);
  const Eigen::VectorXd g1 = gradient(grid, data.u1);

  DataNorms out{};
  out.e0 = integrate_half(grid, (g0.array().square() * rh.pow(gamma)).matrix()) +
           integrate(grid, (data.u1.array().square() * r.pow(gamma)).matrix());
  out.e1 = integrate_half(grid, (g1.array().square() * rh.pow(gamma + 2)).matrix()) +
           integrate(grid, (u2.array().square() * r.pow(gamma + 2)).matrix());
  out.low = integrate_dmu(grid, data.u0.cwiseAbs2());
  return out;
}

EnergyWeights EnergyWeights::for_gamma(double gamma, double alpha, double t0) {
  const double beta = gamma / (2 - alpha);
  return {beta, t0, beta - 1};
}

EnergyRecord energy_record(const EnergyWeights& w, const WaveState& state, const RadialGrid& grid) {
  EnergyRecord rec;
  rec.t = state.t;
  rec.e_dx = energy_dx(w.beta, w.t0, state, grid);
  rec.e_dt = energy_dt(w.beta, w.t0, state, grid);
  rec.e_a = energy_a(w.beta, w.t0, state.t, state.u, grid);
  rec.e_phi = energy_phi_or_nan(std::max(w.lambda, 0.0), w.t0, state, grid);
  rec.e_star = energy_star(w.lambda, w.t0, state, grid);
  return rec;
}

DissipationMeter::DissipationMeter(const RadialGrid& grid, double beta, double t0)
    : grid_(&grid), beta_(beta), t0_(t0) {}

void DissipationMeter::operator()(const WaveState& before, const WaveState& after) {
  if (history_.empty()) {
    last_rate_ = energy_a(beta_, t0_, before.t, before.ut, *grid_);
    history_.emplace_back(before.t, 0.0);
  }
  const double rate = energy_a(beta_, t0_, after.t, after.ut, *grid_);
  total_ += 0.5 * (after.t - before.t) * (last_rate_ + rate);
  last_rate_ = rate;
  history_.emplace_back(after.t, total_);
}

double DissipationMeter::at(double t) const {
  if (history_.empty()) return 0.0;
  auto it = std::lower_bound(history_.begin(), history_.end(), t,
                             [](const std::pair<double, double>& p, double x) { return p.first < x; });
  if (it == history_.end()) return history_.back().second;
  if (it != history_.begin() && std::abs(std::prev(it)->first - t) < std::abs(it->first - t)) --it;
  return it->second;
}

}  // namespace decaylab
