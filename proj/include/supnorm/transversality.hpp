#pragma once

// Quantitative transversality of the rotation orbit K.tau inside the coadjoint
// orbit: the distance from a perturbed point to the K-orbit controls the
// product ||y - 1|| * ||Ad(gamma) - 1||, which in turn bounds the volume of
// the band of rotations y with gamma*y close to K * (small box).

#include <cmath>

#include <Eigen/SVD>

#include "supnorm/sl2.hpp"

namespace supnorm {

// Distance from the point Ad(g) A to the K-orbit of A. The K-orbit is the
// unit circle {(cos s, sin s, 0)} in (a,b,c)-coordinates, so the distance has
// the closed form sqrt((beta - 1)^2 + c^2) with beta the (a,b)-radius.
inline double dist_to_K_orbit(const Mat2& g) {
  const Vec3 x = adjoint(g, Vec3(1, 0, 0));
  const double beta = std::hypot(x(0), x(1));
  return std::hypot(beta - 1.0, x(2));
}

// Operator 2-norm of Ad(g) - 1 acting on the coordinate space.
inline double ad_deviation(const Mat2& g) {
  const Mat3 m = adjoint_matrix(g) - Mat3::Identity();
  return m.jacobiSvd().singularValues()(0);
}

// Frobenius distance of a rotation exp(theta C) from the identity.
inline double rotation_deviation(double theta) {
  return (exp_elem(Vec3(0, 0, theta)) - Mat2::Identity()).norm();
}

inline Mat2 diag_element(double t) {
  Mat2 g;
  g << std::exp(t), 0, 0, std::exp(-t);
  return g;
}

// Left-hand side of the size estimate for gamma = diag(e^t, e^{-t}) and
// y = exp(theta C).
inline double size_estimate_lhs(double t, double theta) {
  return rotation_deviation(theta) * ad_deviation(diag_element(t));
}

inline double size_estimate_rhs(double t, double theta) {
  return dist_to_K_orbit(diag_element(t) * exp_elem(Vec3(0, 0, theta)));
}

// Volume (in K, total mass pi) of the band of rotations y = exp(theta C) with
// dist(gamma y tau, K tau) <= radius, for gamma = diag(e^t, e^{-t}).
// theta runs over [0, pi) since -1 acts trivially.
inline double k_band_volume(double t, double radius, int n = 200000) {
  int hits = 0;
  for (int i = 0; i < n; i++) {
    const double theta = M_PI * (i + 0.5) / n;
    if (size_estimate_rhs(t, theta) <= radius) hits++;
  }
  return M_PI * hits / n;
}

}  // namespace supnorm
