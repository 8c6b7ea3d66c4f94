#ifndef DECAYLAB_INITIAL_DATA_HPP
#define DECAYLAB_INITIAL_DATA_HPP

// Initial-data families and their descriptor strings:
//
//   bump:center=<x>,width=<w>,amp=<a>[,vel=<v>]
//   polytail:power=<p>,cutoff=<R>[,amp=<a>,vel=<v>]
//
// The profile is used for u0; u1 is vel times the same profile (vel
// defaults to 0).

#include <string>
#include <variant>

#include "decaylab/radial_grid.hpp"

namespace decaylab {

/// amp (1 - xi^2)^4 with xi = (r - center) / width, zero for |xi| >= 1.
struct BumpProfile {
  double center = 2.0;
  double width = 0.5;
  double amp = 1.0;

  double value(double r) const;
  double d1(double r) const;
  double d2(double r) const;
};

/// amp S(r - r_inner) r^{-power} eta(r / cutoff), where S is the C^2
/// smoothstep 10x^3 - 15x^4 + 6x^5 (clamped to [0, 1]) and eta = 1 - S(y - 1),
/// so eta = 1 on [0, 1] and 0 beyond 2.
struct PolyTailProfile {
  double power = 2.0;
  double cutoff = 16.0;
  double amp = 1.0;

  double value(double r, double r_inner) const;
};

struct DataDescriptor {
  std::variant<BumpProfile, PolyTailProfile> profile;
  double velocity = 0.0;  // u1 = velocity * profile

  std::string family() const;
  /// Canonical descriptor string; parse_descriptor(to_string()) round-trips.
  std::string to_string() const;
  /// Data are supported in [r_inner, r_inner + support_extent].
  double support_extent(const ModelParams& params) const;
  void validate(const ModelParams& params) const;
};

DataDescriptor parse_descriptor(const std::string& text);

struct InitialData {
  RadialField u0;
  RadialField u1;
  std::string family;
  double support_extent = 0.0;
};

InitialData sample(const DataDescriptor& descriptor, const RadialGrid& grid);

/// Data given as nodal samples. Boundary values are forced to zero and the
/// support extent is read off the samples.
InitialData from_samples(const RadialGrid& grid, RadialField u0, RadialField u1);

/// Largest r_i - r_inner at which |u| or |v| exceeds threshold (0 if none).
double support_extent_of(const RadialGrid& grid, const RadialField& u, const RadialField& v,
                         double threshold);

}  // namespace decaylab

#endif  // DECAYLAB_INITIAL_DATA_HPP
