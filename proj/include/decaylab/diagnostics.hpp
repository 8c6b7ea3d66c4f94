#ifndef DECAYLAB_DIAGNOSTICS_HPP
#define DECAYLAB_DIAGNOSTICS_HPP

// Weighted energy functionals along damped-wave trajectories, weighted Hardy
// inequalities, power-law rate fits and the wave/heat gap.
//
// Weights are evaluated at the shifted time t0 + t. Gradient integrals use
// the solver's half-node differences, so the discrete integration-by-parts
// identities hold exactly.

#include <utility>
#include <vector>

#include "decaylab/initial_data.hpp"
#include "decaylab/radial_heat.hpp"
#include "decaylab/radial_wave.hpp"

namespace decaylab {

/// int |grad u|^2 Psi^beta(x, t0 + t) dx
double energy_dx(double beta, double t0, const WaveState& state, const RadialGrid& grid);
/// int |u_t|^2 Psi^beta dx
double energy_dt(double beta, double t0, const WaveState& state, const RadialGrid& grid);
/// int |w|^2 a(x) Psi^beta(x, t0 + t) dx for any field w at time t.
double energy_a(double beta, double t0, double t, const RadialField& w, const RadialGrid& grid);

/// int (2 u u_t + a |u|^2) Phi_{lambda*}(x, t0 + t)^{-1 + 2 eps*} dx.
/// Throws RegimeError unless 0 <= lambda < (N - alpha)/(2 - alpha).
double energy_phi(double lambda, double t0, const WaveState& state, const RadialGrid& grid);

/// 2 int u u_t Psi^lambda dx (signed).
double energy_star(double lambda, double t0, const WaveState& state, const RadialGrid& grid);

struct HardySides {
  double lhs;
  double rhs;
};

/// lhs = int |w|^2 |x|^{-alpha} Psi^{lambda-1}(x, t0) dx,
/// rhs = 4 min{(N-alpha)/(2-alpha), (N-2)/(2-alpha) + lambda}^{-2} int |grad w|^2 Psi^lambda(x, t0) dx.
/// Throws RegimeError for lambda <= -(N-2)/(2-alpha).
HardySides hardy_check(const RadialField& w, double lambda, double t0, const RadialGrid& grid);

/// ((N - alpha)/2)^2, the constant of the power-weight Hardy inequality.
double power_hardy_constant(const ModelParams& params);

/// lhs = int |w|^2 |x|^{-alpha} dx, rhs = ((N-alpha)/2)^{-2} int |grad w|^2 |x|^{2-alpha} dx.
HardySides power_hardy_check(const RadialField& w, const RadialGrid& grid);

struct GapSample {
  double t;
  double gap;         // ||u(t) - v(t)||_{L^2_dmu}
  double normalized;  // gap * (1 + t)^{(gamma - alpha) / (2 (2 - alpha))}
};

/// Pairs the two trajectories sample by sample; they must share the grid and
/// the sample times.
std::vector<GapSample> diffusion_gap(const std::vector<WaveState>& wave,
                                     const std::vector<HeatState>& heat, const RadialGrid& grid,
                                     double gamma);

struct RateFit {
  double slope;
  double intercept;
  double residual;  // root-mean-square residual in log space
  int points;
};

/// Least-squares fit of log(value) = slope log(t) + intercept over samples
/// with t_lo <= t <= t_hi. Throws InvalidArgument on a nonpositive value in
/// the window or fewer than two points.
RateFit fit_decay_rate(const std::vector<std::pair<double, double>>& series,
                       std::pair<double, double> window);

struct DataNorms {
  double e0;   // int (|grad u0|^2 + |u1|^2) |x|^gamma dx
  double e1;   // int (|grad u1|^2 + |u2|^2) |x|^{gamma+2} dx
  double low;  // int |u0|^2 |x|^{-alpha} dx
};

/// True when gamma lies in [alpha, N + 2 - 2 alpha).
bool gamma_in_range(double gamma, const ModelParams& params);

/// Computed for any gamma; use gamma_in_range to warn about values outside
/// the theory.
DataNorms data_norms(const InitialData& data, const RadialGrid& grid, double gamma);

struct EnergyRecord {
  double t = 0;
  double e_dx = 0;
  double e_dt = 0;
  double e_a = 0;
  double e_phi = 0;
  double e_star = 0;
  double dissip = 0;  // int_0^t E_a^beta[t0, u_t](s) ds
};

/// Exponents of one diagnostic run: beta for the Psi-weighted energies, and
/// lambda for E_Phi and E_* (lambda = beta - 1 by default).
struct EnergyWeights {
  double beta;
  double t0;
  double lambda;

  static EnergyWeights for_gamma(double gamma, double alpha, double t0);
};

/// Accumulates the dissipation integral by the trapezoid rule, one step at a
/// time. Attach it to run_wave as the observer.
class DissipationMeter {
 public:
  DissipationMeter(const RadialGrid& grid, double beta, double t0);
  void operator()(const WaveState& before, const WaveState& after);
  double total() const { return total_; }
  /// Total at each time passed to the observer so far (t, value).
  const std::vector<std::pair<double, double>>& history() const { return history_; }
  /// Total at the recorded time nearest t.
  double at(double t) const;

 private:
  const RadialGrid* grid_;
  double beta_, t0_;
  double total_ = 0.0;
  double last_rate_ = 0.0;
  std::vector<std::pair<double, double>> history_;
};

/// Everything except dissip, which needs the full trajectory.
EnergyRecord energy_record(const EnergyWeights& w, const WaveState& state, const RadialGrid& grid);

/// E_Phi at lambda if lambda lies in the regime, else NaN.
double energy_phi_or_nan(double lambda, double t0, const WaveState& state, const RadialGrid& grid);

}  // namespace decaylab

#endif  // DECAYLAB_DIAGNOSTICS_HPP
