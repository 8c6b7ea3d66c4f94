#ifndef DECAYLAB_RADIAL_WAVE_HPP
#define DECAYLAB_RADIAL_WAVE_HPP

// Radial damped wave equation u_tt - Delta u + r^{-alpha} u_t = 0 on
// r_inner < r < r_outer, u = 0 at both ends.
//
// Leapfrog in time with the damping averaged over levels n-1 and n+1:
//
//   (u^{n+1} - 2u^n + u^{n-1}) / dt^2 + a (u^{n+1} - u^{n-1}) / (2 dt) = L u^n
//
// The state carries u^n and the centred velocity (u^{n+1} - u^{n-1}) / (2 dt),
// which determines u^{n-1} and u^{n+1} algebraically.

#include <functional>
#include <vector>

#include "decaylab/initial_data.hpp"
#include "decaylab/radial_grid.hpp"

namespace decaylab {

struct WaveState {
  RadialField u;
  RadialField ut;
  double t = 0.0;
};

enum class Damping { on, off };

/// Throws CflError unless |dt| <= 0.9 dr.
void check_cfl(const RadialGrid& grid, double dt);

/// u2 = -Delta_h u0 + a u1 (zero at the boundary nodes).
RadialField second_time_data(const InitialData& data, const RadialGrid& grid);

WaveState initial_state(const InitialData& data);

/// One time step. Negative dt steps backwards (exactly reversible when
/// undamped). Throws CflError, or NumericalError on NaN/Inf.
WaveState step_wave(const WaveState& state, const RadialGrid& grid, double dt,
                    Damping damping = Damping::on);

/// Discrete energy conserved by the undamped scheme and nonincreasing under
/// damping: the mean of the staggered energies
///   |(u^{n+1} - u^n)/dt|^2 + <grad u^{n+1}, grad u^n>
/// on either side of the current level.
double discrete_energy(const WaveState& state, const RadialGrid& grid, double dt,
                       Damping damping = Damping::on);

/// int (|u_t|^2 + |grad u|^2) dx with the solver's own stencils.
double plain_energy(const WaveState& state, const RadialGrid& grid);

struct WaveRunOptions {
  double t_final = 0.0;
  double dt = 0.0;
  std::vector<double> sample_times;
  Damping damping = Damping::on;
};

/// Called after every step with the states before and after it.
using WaveObserver = std::function<void(const WaveState& before, const WaveState& after)>;

/// Advances the data to t_final in round(t_final/dt) steps and returns the
/// states at the step nearest each requested sample time, in request order.
std::vector<WaveState> run_wave(const InitialData& data, const RadialGrid& grid,
                                const WaveRunOptions& options, const WaveObserver& observer = {});

}  // namespace decaylab

#endif  // DECAYLAB_RADIAL_WAVE_HPP
