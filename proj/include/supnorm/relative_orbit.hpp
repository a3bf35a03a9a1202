#pragma once

// Relative coadjoint orbits: the slice of a coadjoint orbit lying over a fixed
// weight of the rotation subgroup. For the one-sheeted hyperboloid attached to
// the parameter T, the slice at K-weight k (so height k/2 along the C-axis) is
// always a circle; for the two-sheeted hyperboloid of a lowest-weight module
// the slice is empty unless |k/2| >= T.

#include <cmath>
#include <optional>

#include "supnorm/sl2.hpp"

namespace supnorm {

struct OrbitCircle {
  double height;  // c-coordinate
  double radius;  // radius in the (a,b)-plane
  Vec3 point(double phi) const {
    return Vec3(radius * std::cos(phi), radius * std::sin(phi), height);
  }
  // Average of f over the circle with the uniform probability measure
  // (the pushforward of normalised Haar measure on the rotation group).
  template <class F>
  double average(F&& f, int n = 4096) const {
    double s = 0;
    for (int i = 0; i < n; i++) s += f(point(2 * M_PI * (i + 0.5) / n));
    return s / n;
  }
};

enum class HyperboloidSheets { One, Two };

// Slice of the orbit with parameter T at K-weight k. Returns nullopt when the
// slice is empty (only possible on the two-sheeted orbits).
inline std::optional<OrbitCircle> relative_orbit(HyperboloidSheets sheets,
                                                 double T, int k) {
  const double h = k / 2.0;
  if (sheets == HyperboloidSheets::One)
    return OrbitCircle{h, std::sqrt(T * T + h * h)};
  if (h * h < T * T) return std::nullopt;
  return OrbitCircle{h, std::sqrt(h * h - T * T)};
}

}  // namespace supnorm
