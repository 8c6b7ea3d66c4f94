#include "decaylab/radial_grid.hpp"

#include <cmath>
#include <numbers>

#include "decaylab/errors.hpp"
#include "decaylab/special_functions.hpp"

namespace decaylab {

void ModelParams::validate() const {
  if (!(alpha >= 0 && alpha < 1)) throw InvalidArgument("alpha must lie in [0, 1)");
  if (dim < 2) throw InvalidArgument("dimension must be at least 2");
  if (!(r_inner > 0)) throw InvalidArgument("inner radius must be positive");
}

double sphere_area(int dim) {
  return 2 * std::pow(std::numbers::pi, dim / 2.0) / special::gamma(dim / 2.0);
}

RadialGrid::RadialGrid(const ModelParams& params, double r_outer, Eigen::Index interior)
    : params_(params), r_outer_(r_outer), interior_(interior) {
  params_.validate();
  if (interior < 1) throw InvalidArgument("grid needs at least one interior node");
  if (!(r_outer > params.r_inner)) throw InvalidArgument("outer radius must exceed inner radius");
  dr_ = (r_outer - params.r_inner) / static_cast<double>(interior + 1);

  const Eigen::Index m = size();
  const double omega = sphere_area(params.dim);
  const int p = params.dim - 1;
  const double alpha = params.alpha;
  const double scale = (2 - alpha) * (2 - alpha);

  nodes_.resize(m);
  for (Eigen::Index i = 0; i < m; ++i) nodes_[i] = params.r_inner + static_cast<double>(i) * dr_;
  nodes_[m - 1] = r_outer;
  half_nodes_ = (nodes_.head(m - 1) + nodes_.tail(m - 1)) / 2;

  volume_weights_ = omega * dr_ * nodes_.array().pow(p);
  measure_weights_ = omega * dr_ * nodes_.array().pow(p - alpha);
  volume_weights_[0] /= 2;
  volume_weights_[m - 1] /= 2;
  measure_weights_[0] /= 2;
  measure_weights_[m - 1] /= 2;
  flux_weights_ = omega * dr_ * half_nodes_.array().pow(p);

  damping_ = nodes_.array().pow(-alpha);
  parabolic_nodes_ = nodes_.array().pow(2 - alpha) / scale;
  parabolic_half_nodes_ = half_nodes_.array().pow(2 - alpha) / scale;

  lap_up_ = Eigen::VectorXd::Zero(m);
  lap_down_ = Eigen::VectorXd::Zero(m);
  const double inv_dr2 = 1 / (dr_ * dr_);
  for (Eigen::Index i = 1; i < m - 1; ++i) {
    lap_up_[i] = std::pow(half_nodes_[i] / nodes_[i], p) * inv_dr2;
    lap_down_[i] = std::pow(half_nodes_[i - 1] / nodes_[i], p) * inv_dr2;
  }
}

bool RadialGrid::same_layout(const RadialGrid& other) const {
  return interior_ == other.interior_ && params_.dim == other.params_.dim &&
         params_.alpha == other.params_.alpha && params_.r_inner == other.params_.r_inner &&
         r_outer_ == other.r_outer_;
}

RadialGrid build_grid(const ModelParams& params, double support_extent, double t_final, double dr) {
  params.validate();
  if (!(dr > 0)) throw InvalidArgument("grid spacing must be positive");
  if (dr > 0.25) throw InvalidArgument("grid resolution too coarse (dr > 0.25)");
  if (!(t_final >= 0)) throw InvalidArgument("final time must be non-negative");
  if (!(support_extent >= 0)) throw InvalidArgument("support extent must be non-negative");
  const double length = support_extent + t_final + 2 * dr;
  const auto cells = static_cast<Eigen::Index>(std::ceil(length / dr - 1e-9));
  return RadialGrid(params, params.r_inner + length, std::max<Eigen::Index>(cells - 1, 1));
}

RadialField laplacian(const RadialGrid& grid, const Eigen::Ref<const RadialField>& u) {
  const Eigen::Index m = grid.size();
  RadialField out = RadialField::Zero(m);
  const auto& up = grid.laplacian_up();
  const auto& down = grid.laplacian_down();
  for (Eigen::Index i = 1; i < m - 1; ++i) {
    out[i] = up[i] * (u[i + 1] - u[i]) - down[i] * (u[i] - u[i - 1]);
  }
  return out;
}

}  // namespace decaylab
