#ifndef DECAYLAB_RADIAL_HEAT_HPP
#define DECAYLAB_RADIAL_HEAT_HPP

// Degenerate heat flow v_t = r^alpha Delta v with Dirichlet ends: the
// semigroup e^{tL} of L = a(x)^{-1} Delta on L^2(a(x)dx), discretised in
// space by the flux-form Laplacian (exactly symmetric in the discrete dmu
// inner product) and in time by Crank-Nicolson.

#include <functional>
#include <vector>

#include "decaylab/initial_data.hpp"
#include "decaylab/radial_grid.hpp"

namespace decaylab {

struct HeatState {
  RadialField v;
  double t = 0.0;
};

/// (int |f|^2 a(x) dx)^{1/2}.
double l2_dmu_norm(const RadialField& f, const RadialGrid& grid);

/// <f, g>_{L^2_{dmu}} by the grid's measure quadrature.
double dmu_inner(const RadialField& f, const RadialField& g, const RadialGrid& grid);

/// r^alpha Delta_h f, zero at the boundary nodes.
RadialField heat_operator(const RadialGrid& grid, const RadialField& f);

/// u0 + r^alpha u1, the datum whose heat orbit approximates the damped wave.
RadialField asymptotic_profile(const InitialData& data, const RadialGrid& grid);

/// Crank-Nicolson stepper with the tridiagonal factorisation of
/// (I - dt/2 L) computed once.
class HeatStepper {
 public:
  HeatStepper(const RadialGrid& grid, double dt);
  HeatState step(const HeatState& state) const;
  double dt() const { return dt_; }

 private:
  const RadialGrid* grid_;
  double dt_;
  Eigen::VectorXd lower_, upper_;  // r^alpha times the Laplacian coefficients
  Eigen::VectorXd pivot_, factor_;  // Thomas elimination data
};

HeatState step_heat(const HeatState& state, const RadialGrid& grid, double dt);

using HeatObserver = std::function<void(const HeatState& before, const HeatState& after)>;

/// Same sampling contract as run_wave.
std::vector<HeatState> run_heat(const RadialField& f, const RadialGrid& grid, double t_final,
                                double dt, const std::vector<double>& sample_times,
                                const HeatObserver& observer = {});

}  // namespace decaylab

#endif  // DECAYLAB_RADIAL_HEAT_HPP
