#ifndef DECAYLAB_SPECIAL_FUNCTIONS_HPP
#define DECAYLAB_SPECIAL_FUNCTIONS_HPP

// Gamma, Kummer's confluent hypergeometric functions M and U, and the
// self-similar profile
//
//   varphi_beta(s) = e^{-s} M(c - beta, c; s),   c = (N - alpha) / (2 - alpha),
//
// which solves s f'' + (c + s) f' + beta f = 0 with f(0) = 1.
//
// All functions are pure and templated on the floating-point type.

#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <numbers>

#include "decaylab/errors.hpp"
#include "decaylab/quadrature.hpp"

namespace decaylab::special {

/// Below this argument M and varphi are summed from the power series; above
/// it the large-s asymptotic expansion is used.
inline constexpr double kSeriesSwitch = 40.0;

namespace detail {

// Lanczos approximation, g = 7, nine coefficients.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

template <std::floating_point Scalar>
bool is_nonpositive_integer(Scalar x) {
  return x <= 0 && std::floor(x) == x;
}

template <std::floating_point Scalar>
Scalar lanczos_sum(Scalar xm1) {
  Scalar a = Scalar(kLanczos[0]);
  for (int i = 1; i < 9; ++i) a += Scalar(kLanczos[i]) / (xm1 + Scalar(i));
  return a;
}

template <std::floating_point Scalar>
void require_not_pole(Scalar x) {
  if (is_nonpositive_integer(x)) throw PoleError("Gamma has a pole at non-positive integers");
}

}  // namespace detail

/// Gamma function. Lanczos approximation for x >= 1/2, reflection below.
template <std::floating_point Scalar>
Scalar gamma(Scalar x) {
  using std::numbers::pi_v;
  detail::require_not_pole(x);
  if (x < Scalar(0.5)) {
    return pi_v<Scalar> / (std::sin(pi_v<Scalar> * x) * gamma(Scalar(1) - x));
  }
  const Scalar xm1 = x - 1;
  const Scalar t = xm1 + Scalar(detail::kLanczosG) + Scalar(0.5);
  const Scalar a = detail::lanczos_sum(xm1);
  Scalar value;
  if (x < Scalar(140)) {
    value = std::sqrt(2 * pi_v<Scalar>) * std::pow(t, xm1 + Scalar(0.5)) * std::exp(-t) * a;
  } else {
    value = std::exp(Scalar(0.5) * std::log(2 * pi_v<Scalar>) + (xm1 + Scalar(0.5)) * std::log(t) -
                     t + std::log(a));
  }
  if (!std::isfinite(value)) throw OverflowError("Gamma overflows double range");
  return value;
}

/// log |Gamma(x)|.
template <std::floating_point Scalar>
Scalar log_abs_gamma(Scalar x) {
  using std::numbers::pi_v;
  detail::require_not_pole(x);
  if (x < Scalar(0.5)) {
    return std::log(pi_v<Scalar> / std::abs(std::sin(pi_v<Scalar> * x))) -
           log_abs_gamma(Scalar(1) - x);
  }
  const Scalar xm1 = x - 1;
  const Scalar t = xm1 + Scalar(detail::kLanczosG) + Scalar(0.5);
  return Scalar(0.5) * std::log(2 * pi_v<Scalar>) + (xm1 + Scalar(0.5)) * std::log(t) - t +
         std::log(detail::lanczos_sum(xm1));
}

/// Sign of Gamma(x): +1 for x > 0, alternating between the negative poles.
template <std::floating_point Scalar>
int gamma_sign(Scalar x) {
  detail::require_not_pole(x);
  if (x > 0) return 1;
  return static_cast<long long>(std::floor(x)) % 2 == 0 ? 1 : -1;
}

// ---------------------------------------------------------------------------

template <std::floating_point Scalar = double>
struct KummerArgsT {
  Scalar b;
  Scalar c;

  void validate() const {
    if (!std::isfinite(b) || !std::isfinite(c)) throw InvalidArgument("Kummer parameters must be finite");
    if (detail::is_nonpositive_integer(c)) {
      throw InvalidArgument("Kummer parameter c must not be zero or a negative integer");
    }
  }
};
using KummerArgs = KummerArgsT<double>;

namespace detail {

// e^{-s} M(b, c; s) and its first two derivatives in s, packaged together
// because both evaluation channels produce them at almost no extra cost.
template <std::floating_point Scalar>
struct Scaled {
  Scalar value;
  Scalar d1;
  Scalar d2;
};

// sum_{n} (b)_n / (c)_n s^n / n!, first term `first`. Stops once three
// consecutive terms fall below 1e-16 of the partial sum in the decreasing
// phase of the series.
template <std::floating_point Scalar>
Scalar kummer_series(Scalar b, Scalar c, Scalar s, Scalar first) {
  constexpr int kMaxTerms = 100000;
  Scalar sum = first;
  Scalar term = first;
  int small = 0;
  for (int n = 0; n < kMaxTerms; ++n) {
    const Scalar ratio_num = (b + n) * s;
    const Scalar ratio_den = (c + n) * (n + 1);
    term *= ratio_num / ratio_den;
    sum += term;
    if (std::abs(term) <= Scalar(1e-16) * std::abs(sum)) {
      ++small;
    } else {
      small = 0;
    }
    if (term == 0 || (small >= 3 && std::abs(ratio_num) < std::abs(ratio_den))) return sum;
  }
  throw ConvergenceError("Kummer series exceeded term cap", static_cast<double>(std::abs(term)));
}

// e^{-s} M(b, c; s) with derivatives, from the power series. Uses
//   M' = (b/c) M(b+1, c+1),  M'' = b(b+1)/(c(c+1)) M(b+2, c+2).
template <std::floating_point Scalar>
Scaled<Scalar> scaled_by_series(Scalar b, Scalar c, Scalar s) {
  const Scalar e = std::exp(-s);
  const Scalar m0 = kummer_series(b, c, s, e);
  const Scalar m1 = b == 0 ? Scalar(0) : b / c * kummer_series(b + 1, c + 1, s, e);
  const Scalar m2 = (b == 0 || b == -1) ? Scalar(0)
                                        : b * (b + 1) / (c * (c + 1)) * kummer_series(b + 2, c + 2, s, e);
  return {m0, m1 - m0, m2 - 2 * m1 + m0};
}

template <std::floating_point Scalar>
struct AsymptoticSum {
  Scaled<Scalar> scaled;
  Scalar relative_error;
};

// Large-s expansion of e^{-s} M(b, c; s) with e = c - b:
//   Gamma(c)/Gamma(b) s^{-e} sum_k (e)_k (1-b)_k / (k! s^k).
// The exponentially small companion term is dropped. Summation stops at the
// smallest term; relative_error reports its size.
template <std::floating_point Scalar>
AsymptoticSum<Scalar> scaled_by_asymptotics(Scalar b, Scalar c, Scalar s) {
  const Scalar e = c - b;
  const Scalar log_amp = log_abs_gamma(c) - log_abs_gamma(b) - e * std::log(s);
  const Scalar amp = Scalar(gamma_sign(c) * gamma_sign(b)) * std::exp(log_amp);

  Scalar term = 1;
  Scalar sum = 0, sum1 = 0, sum2 = 0;
  Scalar last = std::numeric_limits<Scalar>::infinity();
  Scalar tail = 0;
  for (int k = 0; k < 10000; ++k) {
    if (std::abs(term) > last) {
      tail = last;
      break;
    }
    sum += term;
    sum1 -= term * (e + k) / s;
    sum2 += term * (e + k) * (e + k + 1) / (s * s);
    last = std::abs(term);
    if (term == 0 || std::abs(term) < Scalar(1e-17) * std::abs(sum)) {
      tail = 0;
      break;
    }
    term *= (e + k) * (1 - b + k) / ((k + 1) * s);
    tail = std::abs(term);
  }
  const Scalar rel = sum == 0 ? Scalar(1) : tail / std::abs(sum);
  return {{amp * sum, amp * sum1, amp * sum2}, rel};
}

template <std::floating_point Scalar>
Scaled<Scalar> scaled_kummer(Scalar b, Scalar c, Scalar s) {
  // Terminating (polynomial) series: exact summation for every s.
  if (s <= Scalar(kSeriesSwitch) || is_nonpositive_integer(b)) return scaled_by_series(b, c, s);
  const auto asym = scaled_by_asymptotics(b, c, s);
  if (asym.relative_error <= Scalar(1e-14)) return asym.scaled;
  // Large parameters: the expansion has not settled yet. The scaled series
  // stays representable while e^{-s} is a normal number.
  if (s < Scalar(700)) return scaled_by_series(b, c, s);
  if (asym.relative_error <= Scalar(1e-8)) return asym.scaled;
  throw ConvergenceError("Kummer asymptotic expansion not accurate at this argument",
                         static_cast<double>(asym.relative_error));
}

}  // namespace detail

/// Kummer's function of the first kind M(b, c; s) for s >= 0.
///
/// Throws OverflowError when the value exceeds the double range (roughly
/// s > 700 for moderate b, c).
template <std::floating_point Scalar>
Scalar kummer_m(const KummerArgsT<Scalar>& args, Scalar s) {
  args.validate();
  if (!(s >= 0)) throw InvalidArgument("kummer_m requires s >= 0");
  if (s <= Scalar(kSeriesSwitch) || detail::is_nonpositive_integer(args.b)) {
    const Scalar value = detail::kummer_series(args.b, args.c, s, Scalar(1));
    if (!std::isfinite(value)) throw OverflowError("M(b, c; s) exceeds double range");
    return value;
  }
  const Scalar scaled = detail::scaled_kummer(args.b, args.c, s).value;
  if (scaled == 0) return 0;
  const Scalar log_abs = s + std::log(std::abs(scaled));
  if (log_abs >= std::log(std::numeric_limits<Scalar>::max())) {
    throw OverflowError("M(b, c; s) exceeds double range");
  }
  return std::copysign(std::exp(log_abs), scaled);
}

/// Kummer's function of the second kind U(b, c; s) for b > 0, s > 0, from
///   U = s^{-b} / Gamma(b) int_0^inf e^{-tau} tau^{b-1} (1 + tau/s)^{c-b-1} dtau,
/// the integral representation after sigma = tau / s, split at tau = 1.
template <std::floating_point Scalar>
Scalar kummer_u(const KummerArgsT<Scalar>& args, Scalar s, Scalar rel_tol = Scalar(1e-12)) {
  const Scalar b = args.b;
  const Scalar c = args.c;
  if (!(b > 0)) throw InvalidArgument("kummer_u requires b > 0");
  if (!(s > 0)) throw InvalidArgument("kummer_u requires s > 0");
  const Scalar p = c - b - 1;
  auto kernel = [&](Scalar tau) { return std::exp(-tau) * std::pow(1 + tau / s, p); };

  Scalar head;
  if (b < 1) {
    // tau = v^{1/b} absorbs the tau^{b-1} endpoint singularity.
    auto f = [&](Scalar v) { return v == 0 ? Scalar(1) : kernel(std::pow(v, 1 / b)); };
    head = quadrature::integrate<Scalar>(f, 0, 1, rel_tol / 4).value / b;
  } else {
    auto f = [&](Scalar tau) { return std::pow(tau, b - 1) * kernel(tau); };
    head = quadrature::integrate<Scalar>(f, 0, 1, rel_tol / 4).value;
  }
  // tau = 1 + x / (1 - x) maps [1, inf) onto [0, 1).
  auto g = [&](Scalar x) {
    if (x >= 1) return Scalar(0);
    const Scalar tau = 1 + x / (1 - x);
    return std::pow(tau, b - 1) * kernel(tau) / ((1 - x) * (1 - x));
  };
  const Scalar tail = quadrature::integrate<Scalar>(g, 0, 1, rel_tol / 4).value;
  return std::exp(-b * std::log(s) - log_abs_gamma(b)) * (head + tail);
}

// ---------------------------------------------------------------------------

/// Parameters of the profile varphi_beta: damping exponent alpha in [0, 1),
/// spatial dimension N >= 2, and the exponent beta (any real).
template <std::floating_point Scalar = double>
struct ProfileParamsT {
  Scalar alpha;
  int dim;
  Scalar beta;

  /// (N - alpha) / (2 - alpha)
  Scalar cexp() const { return (dim - alpha) / (2 - alpha); }
  /// varphi_beta stays strictly positive iff beta < cexp().
  bool positive_regime() const { return beta < cexp(); }
  KummerArgsT<Scalar> kummer_args() const { return {cexp() - beta, cexp()}; }

  void validate() const {
    if (!(alpha >= 0 && alpha < 1)) throw InvalidArgument("alpha must lie in [0, 1)");
    if (dim < 2) throw InvalidArgument("dimension must be at least 2");
    if (!std::isfinite(beta)) throw InvalidArgument("beta must be finite");
  }
};
using ProfileParams = ProfileParamsT<double>;

template <std::floating_point Scalar>
struct ProfileJet {
  Scalar value;
  Scalar d1;
  Scalar d2;
};

/// varphi_beta and its first two derivatives at s >= 0. The derivatives
/// come from differentiating the series (or the asymptotic expansion) term by
/// term, independently of the ODE.
template <std::floating_point Scalar>
ProfileJet<Scalar> varphi_jet(const ProfileParamsT<Scalar>& p, Scalar s) {
  p.validate();
  if (!(s >= 0)) throw InvalidArgument("varphi requires s >= 0");
  const auto args = p.kummer_args();
  const auto v = detail::scaled_kummer(args.b, args.c, s);
  return {v.value, v.d1, v.d2};
}

template <std::floating_point Scalar>
Scalar varphi(const ProfileParamsT<Scalar>& p, Scalar s) {
  return varphi_jet(p, s).value;
}

template <std::floating_point Scalar>
Scalar varphi_derivative(const ProfileParamsT<Scalar>& p, Scalar s) {
  return varphi_jet(p, s).d1;
}

template <std::floating_point Scalar>
Scalar varphi_second_derivative(const ProfileParamsT<Scalar>& p, Scalar s) {
  return varphi_jet(p, s).d2;
}

}  // namespace decaylab::special

#endif  // DECAYLAB_SPECIAL_FUNCTIONS_HPP
