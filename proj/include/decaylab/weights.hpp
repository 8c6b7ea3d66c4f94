#ifndef DECAYLAB_WEIGHTS_HPP
#define DECAYLAB_WEIGHTS_HPP

// Space-time weights built from the self-similar profile:
//
//   Psi^beta(r, t) = (t + r^{2-alpha} / (2-alpha)^2)^beta
//   Phi_beta(r, t) = t^{-beta} varphi_beta(r^{2-alpha} / ((2-alpha)^2 t))
//
// Every function taking a WeightSpec evaluates at the shifted time t0 + t.

#include <iosfwd>
#include <span>

#include "decaylab/special_functions.hpp"

namespace decaylab {

using special::ProfileParams;

struct WeightSpec {
  ProfileParams profile;  // alpha, N, and the exponent beta (or lambda)
  double t0 = 1.0;

  double beta() const { return profile.beta; }
  double alpha() const { return profile.alpha; }
  double cexp() const { return profile.cexp(); }

  /// Same alpha, N, t0 with a different exponent.
  WeightSpec with_beta(double beta) const {
    WeightSpec copy = *this;
    copy.profile.beta = beta;
    return copy;
  }

  /// Enforces t0 >= 1 on top of the profile checks. Specs with t0 = 0 may
  /// still be built directly to evaluate the unshifted weights.
  void validate() const;
};

WeightSpec make_weight_spec(double alpha, int dim, double beta, double t0);

/// The pair (eps*, lambda*) attached to an exponent lambda through
/// lambda = (1 - 3 eps*) c and lambda* = lambda / (1 - 2 eps*), c = cexp.
/// eps* is clamped to (0, 1/3]; lambda <= 0 gives eps* = 1/3.
struct StarredExponents {
  double eps;
  double lambda_star;
};
StarredExponents starred_exponents(double lambda, double cexp);

/// r^{2-alpha} / (2-alpha)^2, the spatial part of Psi.
double parabolic_radius(double alpha, double r);

double psi(const WeightSpec& spec, double r, double t);
double phi_weight(const WeightSpec& spec, double r, double t);
/// d/dt Phi_beta = -beta Phi_{beta+1}.
double phi_time_derivative(const WeightSpec& spec, double r, double t);

struct EnvelopeConstants {
  double lower;  // min of varphi_beta(s) (1+s)^beta
  double upper;  // max of |varphi_beta(s)| (1+s)^beta
};

/// Extrema of varphi_beta(s) (1+s)^beta on a fixed 1024-point grid: s = 0 and
/// 1023 log-spaced points on [1e-6, 1e6]. Throws RegimeError when
/// beta >= cexp, where no positive lower constant exists.
EnvelopeConstants phi_envelope_constants(const WeightSpec& spec);
/// Upper constant only; defined for every beta.
double phi_upper_constant(const WeightSpec& spec);

/// lim_{t -> 0} Phi_beta(r, t) = Gamma(c)/Gamma(c - beta) (2-alpha)^{2 beta} r^{-(2-alpha) beta}
/// for beta < c. The t0 shift is ignored (the limit is in absolute time).
double phi_initial_trace(const WeightSpec& spec, double r);

/// CSV "s,varphi" table.
void write_profile_table(std::ostream& out, const ProfileParams& profile,
                         std::span<const double> s_values);
/// CSV "r,t,Phi" table over the tensor product of the inputs.
void write_weight_table(std::ostream& out, const WeightSpec& spec, std::span<const double> radii,
                        std::span<const double> times);

}  // namespace decaylab

#endif  // DECAYLAB_WEIGHTS_HPP
