#ifndef DECAYLAB_QUADRATURE_HPP
#define DECAYLAB_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <concepts>
#include <limits>
#include <queue>
#include <vector>

#include "decaylab/errors.hpp"

namespace decaylab::quadrature {

template <std::floating_point Scalar>
struct Result {
  Scalar value = 0;
  Scalar error = 0;
  int panels = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK qk15).
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7.
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <std::floating_point Scalar>
struct Panel {
  Scalar lo, hi, value, error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

template <std::floating_point Scalar, typename F>
Panel<Scalar> kronrod_panel(F& f, Scalar lo, Scalar hi) {
  const Scalar center = (lo + hi) / 2;
  const Scalar half = (hi - lo) / 2;
  const Scalar fc = f(center);
  Scalar kronrod = fc * Scalar(kKronrodWeights[7]);
  Scalar gauss = fc * Scalar(kGaussWeights[3]);
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = half * Scalar(kKronrodNodes[j]);
    const Scalar pair = f(center - dx) + f(center + dx);
    kronrod += Scalar(kKronrodWeights[j]) * pair;
    if (j % 2 == 1) gauss += Scalar(kGaussWeights[j / 2]) * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [lo, hi].
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |integral|). Throws
/// ConvergenceError carrying the achieved estimate when max_panels is hit.
template <std::floating_point Scalar, typename F>
Result<Scalar> integrate(F&& f, Scalar lo, Scalar hi, Scalar rel_tol,
                         Scalar abs_tol = 0, int max_panels = 4000) {
  std::priority_queue<detail::Panel<Scalar>> panels;
  panels.push(detail::kronrod_panel(f, lo, hi));
  Scalar value = panels.top().value;
  Scalar error = panels.top().error;
  int count = 1;
  while (error > std::max(abs_tol, rel_tol * std::abs(value))) {
    if (count >= max_panels) {
      throw ConvergenceError("adaptive quadrature did not converge",
                             static_cast<double>(error));
    }
    const auto worst = panels.top();
    panels.pop();
    const Scalar mid = (worst.lo + worst.hi) / 2;
    const auto left = detail::kronrod_panel(f, worst.lo, mid);
    const auto right = detail::kronrod_panel(f, mid, worst.hi);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
    ++count;
    // Floating-point drift in the running sums can leave a tiny negative
    // error; recompute from the panels when that happens.
    if (error < 0) {
      auto copy = panels;
      error = 0;
      while (!copy.empty()) {
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {value, error, count};
}

}  // namespace decaylab::quadrature

#endif  // DECAYLAB_QUADRATURE_HPP
