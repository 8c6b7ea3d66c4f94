#include "decaylab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "decaylab/format.hpp"

namespace decaylab {

namespace {

constexpr int kEnvelopePoints = 1024;

void require_positive_time(double time) {
  if (!(time > 0)) throw InvalidArgument("Phi_beta requires t0 + t > 0");
}

template <typename F>
void scan_envelope(const WeightSpec& spec, F&& visit) {
  const double beta = spec.beta();
  visit(special::varphi(spec.profile, 0.0));
  const double lo = std::log(1e-6);
  const double hi = std::log(1e6);
  for (int k = 0; k < kEnvelopePoints - 1; ++k) {
    const double s = std::exp(lo + (hi - lo) * k / (kEnvelopePoints - 2));
    visit(special::varphi(spec.profile, s) * std::pow(1 + s, beta));
  }
}

}  // namespace

void WeightSpec::validate() const {
  profile.validate();
  if (!(t0 >= 1)) throw InvalidArgument("time shift t0 must be at least 1");
}

WeightSpec make_weight_spec(double alpha, int dim, double beta, double t0) {
  WeightSpec spec{{alpha, dim, beta}, t0};
  spec.validate();
  return spec;
}

StarredExponents starred_exponents(double lambda, double cexp) {
  if (lambda <= 0) return {1.0 / 3.0, 3 * lambda};
  const double eps = std::clamp((1 - lambda / cexp) / 3, 1e-300, 1.0 / 3.0);
  return {eps, lambda / (1 - 2 * eps)};
}

double parabolic_radius(double alpha, double r) {
  return std::pow(r, 2 - alpha) / ((2 - alpha) * (2 - alpha));
}

double psi(const WeightSpec& spec, double r, double t) {
  return std::pow(spec.t0 + t + parabolic_radius(spec.alpha(), r), spec.beta());
}

double phi_weight(const WeightSpec& spec, double r, double t) {
  const double time = spec.t0 + t;
  require_positive_time(time);
  const double s = parabolic_radius(spec.alpha(), r) / time;
  return std::pow(time, -spec.beta()) * special::varphi(spec.profile, s);
}

double phi_time_derivative(const WeightSpec& spec, double r, double t) {
  if (spec.beta() == 0) {
    require_positive_time(spec.t0 + t);
    return 0.0;
  }
  return -spec.beta() * phi_weight(spec.with_beta(spec.beta() + 1), r, t);
}

EnvelopeConstants phi_envelope_constants(const WeightSpec& spec) {
  spec.profile.validate();
  if (!spec.profile.positive_regime()) {
    throw RegimeError("lower envelope constant exists only for beta < (N - alpha)/(2 - alpha)");
  }
  EnvelopeConstants out{std::numeric_limits<double>::infinity(), 0.0};
  scan_envelope(spec, [&](double v) {
    out.lower = std::min(out.lower, v);
    out.upper = std::max(out.upper, std::abs(v));
  });
  return out;
}

double phi_upper_constant(const WeightSpec& spec) {
  spec.profile.validate();
  double upper = 0.0;
  scan_envelope(spec, [&](double v) { upper = std::max(upper, std::abs(v)); });
  return upper;
}

double phi_initial_trace(const WeightSpec& spec, double r) {
  spec.profile.validate();
  if (!spec.profile.positive_regime()) {
    throw RegimeError("initial trace requires beta < (N - alpha)/(2 - alpha)");
  }
  if (!(r > 0)) throw InvalidArgument("initial trace requires r > 0");
  const double c = spec.cexp();
  const double beta = spec.beta();
  const double alpha = spec.alpha();
  const double log_ratio = special::log_abs_gamma(c) - special::log_abs_gamma(c - beta);
  return std::exp(log_ratio + 2 * beta * std::log(2 - alpha) - (2 - alpha) * beta * std::log(r));
}

void write_profile_table(std::ostream& out, const ProfileParams& profile,
                         std::span<const double> s_values) {
  out << "s,varphi\n";
  for (double s : s_values) {
    out << format_double(s) << ',' << format_double(special::varphi(profile, s)) << '\n';
  }
}

void write_weight_table(std::ostream& out, const WeightSpec& spec, std::span<const double> radii,
                        std::span<const double> times) {
  out << "r,t,Phi\n";
  for (double t : times) {
    for (double r : radii) {
      out << format_double(r) << ',' << format_double(t) << ','
          << format_double(phi_weight(spec, r, t)) << '\n';
    }
  }
}

}  // namespace decaylab
