#ifndef DECAYLAB_RADIAL_GRID_HPP
#define DECAYLAB_RADIAL_GRID_HPP

#include <Eigen/Dense>

namespace decaylab {

/// Damping a(x) = |x|^{-alpha} on the exterior of the ball of radius r_inner
/// in R^N.
struct ModelParams {
  double alpha = 0.0;
  int dim = 3;
  double r_inner = 1.0;

  void validate() const;
  double cexp() const { return (dim - alpha) / (2 - alpha); }
};

template <typename Scalar>
using RadialFieldT = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
/// Nodal values on a RadialGrid, boundary nodes included.
using RadialField = RadialFieldT<double>;

/// Surface area of the unit sphere in R^N, 2 pi^{N/2} / Gamma(N/2).
double sphere_area(int dim);

/// Uniform grid r_i = r_inner + i dr, i = 0..n+1, on [r_inner, r_outer].
/// Nodes 0 and n+1 carry the Dirichlet boundary values; the n interior nodes
/// hold the unknowns. Half nodes r_{i+1/2} carry first differences.
///
/// All quadrature weights include the sphere-area factor, so a dot product
/// with a field is an integral over the annulus in R^N.
class RadialGrid {
 public:
  RadialGrid(const ModelParams& params, double r_outer, Eigen::Index interior);

  const ModelParams& params() const { return params_; }
  double r_inner() const { return params_.r_inner; }
  double r_outer() const { return r_outer_; }
  double dr() const { return dr_; }
  Eigen::Index interior() const { return interior_; }
  Eigen::Index size() const { return interior_ + 2; }

  const Eigen::VectorXd& nodes() const { return nodes_; }
  const Eigen::VectorXd& half_nodes() const { return half_nodes_; }
  /// Trapezoid weights for int f r^{N-1} dr (end weights halved).
  const Eigen::VectorXd& volume_weights() const { return volume_weights_; }
  /// Trapezoid weights for int f r^{N-1-alpha} dr, i.e. the measure a(x)dx.
  const Eigen::VectorXd& measure_weights() const { return measure_weights_; }
  /// Midpoint weights r_{i+1/2}^{N-1} dr for integrands living on half nodes.
  const Eigen::VectorXd& flux_weights() const { return flux_weights_; }
  /// a(r_i) = r_i^{-alpha}.
  const Eigen::VectorXd& damping() const { return damping_; }
  /// r^{2-alpha} / (2-alpha)^2 at nodes and at half nodes.
  const Eigen::VectorXd& parabolic_nodes() const { return parabolic_nodes_; }
  const Eigen::VectorXd& parabolic_half_nodes() const { return parabolic_half_nodes_; }

  /// Flux-form Laplacian coefficients: (Lu)_i = up_i (u_{i+1} - u_i) - down_i (u_i - u_{i-1}).
  const Eigen::VectorXd& laplacian_up() const { return lap_up_; }
  const Eigen::VectorXd& laplacian_down() const { return lap_down_; }

  RadialField zeros() const { return RadialField::Zero(size()); }
  bool same_layout(const RadialGrid& other) const;

 private:
  ModelParams params_;
  double r_outer_;
  Eigen::Index interior_;
  double dr_;
  Eigen::VectorXd nodes_, half_nodes_;
  Eigen::VectorXd volume_weights_, measure_weights_, flux_weights_;
  Eigen::VectorXd damping_, parabolic_nodes_, parabolic_half_nodes_;
  Eigen::VectorXd lap_up_, lap_down_;
};

/// Grid whose outer radius r_inner + support + t_final + 2 dr lies beyond the
/// reach of any wave started from data supported in [r_inner, r_inner + support].
/// The requested spacing is rounded down so the nodes tile the interval.
RadialGrid build_grid(const ModelParams& params, double support_extent, double t_final, double dr);

/// First differences (u_{i+1} - u_i) / dr at the n+1 half nodes.
template <typename Derived>
Eigen::VectorXd gradient(const RadialGrid& grid, const Eigen::MatrixBase<Derived>& u) {
  const Eigen::Index m = grid.size() - 1;
  return (u.tail(m) - u.head(m)) / grid.dr();
}

/// Radial Laplacian u'' + (N-1)/r u' in flux (conservative) form at interior
/// nodes; the boundary entries are zero. Second order, and symmetric with
/// respect to volume_weights().
RadialField laplacian(const RadialGrid& grid, const Eigen::Ref<const RadialField>& u);

/// int_Omega f dx.
template <typename Derived>
double integrate(const RadialGrid& grid, const Eigen::MatrixBase<Derived>& f) {
  return grid.volume_weights().dot(f);
}

/// int_Omega f a(x) dx.
template <typename Derived>
double integrate_dmu(const RadialGrid& grid, const Eigen::MatrixBase<Derived>& f) {
  return grid.measure_weights().dot(f);
}

/// int_Omega g dx for g sampled on half nodes.
template <typename Derived>
double integrate_half(const RadialGrid& grid, const Eigen::MatrixBase<Derived>& g) {
  return grid.flux_weights().dot(g);
}

}  // namespace decaylab

#endif  // DECAYLAB_RADIAL_GRID_HPP
