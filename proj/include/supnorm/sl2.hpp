#pragma once

// Real Lie algebra sl2(R) in the (A,B,C) coordinate system together with the
// coadjoint-orbit geometry used throughout: orbit parametrisations, the
// Jacobian factor j, and the symplectic measure on one-sheeted hyperboloids.

#include <array>
#include <cmath>
#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace supnorm {

using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// Basis of sl2(R):
//   A = diag(1,-1), B = ((0,1),(1,0)), C = ((0,-1),(1,0)).
// A generic element a*A + b*B + c*C has matrix ((a, b-c),(b+c, -a)).
inline Mat2 basis_A() { return (Mat2() << 1, 0, 0, -1).finished(); }
inline Mat2 basis_B() { return (Mat2() << 0, 1, 1, 0).finished(); }
inline Mat2 basis_C() { return (Mat2() << 0, -1, 1, 0).finished(); }

inline Mat2 to_matrix(const Vec3& x) {
  Mat2 m;
  m << x(0), x(1) - x(2), x(1) + x(2), -x(0);
  return m;
}

inline Vec3 from_matrix(const Mat2& m) {
  // Inverse of to_matrix on the traceless part.
  return Vec3(m(0, 0), 0.5 * (m(0, 1) + m(1, 0)), 0.5 * (m(1, 0) - m(0, 1)));
}

inline Vec3 bracket(const Vec3& x, const Vec3& y) {
  Mat2 m = to_matrix(x) * to_matrix(y) - to_matrix(y) * to_matrix(x);
  return from_matrix(m);
}

// ad X as a 3x3 matrix acting on (a,b,c) coordinates.
inline Mat3 ad(const Vec3& x) {
  const double a = x(0), b = x(1), c = x(2);
  Mat3 m;
  m << 0, -2 * c, 2 * b,
       2 * c, 0, -2 * a,
       2 * b, -2 * a, 0;
  return m;
}

// Trace pairing <u, x> = tr(to_matrix(u) to_matrix(x)) = 2(u1 x1 + u2 x2 - u3 x3).
inline double pairing(const Vec3& u, const Vec3& x) {
  return 2.0 * (u(0) * x(0) + u(1) * x(1) - u(2) * x(2));
}

// The invariant s2(X) = a^2 + b^2 - c^2 = -det(to_matrix(X)).
inline double casimir_invariant(const Vec3& x) {
  return x(0) * x(0) + x(1) * x(1) - x(2) * x(2);
}

// Jacobian of the exponential map: j(X) = sinh^2(sqrt(s2)) / s2, interpreted by
// continuity through s2 = 0 and as sin^2(sqrt(-s2)) / (-s2) for s2 < 0.
inline double jacobian_j(const Vec3& x) {
  const double s2 = casimir_invariant(x);
  const double as = std::abs(s2);
  if (as < 1e-8) {
    // sinh^2(r)/r^2 = 1 + r^2/3 + 2 r^4 / 45 + ..., with r^2 = s2.
    return 1.0 + s2 / 3.0 + 2.0 * s2 * s2 / 45.0;
  }
  const double r = std::sqrt(as);
  if (s2 > 0) {
    const double sh = std::sinh(r);
    return sh * sh / as;
  }
  const double sn = std::sin(r);
  return sn * sn / as;
}

// exp of a traceless real 2x2 matrix in closed form.
inline Mat2 exp2(const Mat2& x) {
  const double s2 = -x.determinant();
  const double as = std::abs(s2);
  double c, s;  // cosh(r), sinh(r)/r continued through r^2 = s2 <= 0
  if (as < 1e-10) {
    c = 1.0 + s2 / 2.0 + s2 * s2 / 24.0;
    s = 1.0 + s2 / 6.0 + s2 * s2 / 120.0;
  } else if (s2 > 0) {
    const double r = std::sqrt(s2);
    c = std::cosh(r);
    s = std::sinh(r) / r;
  } else {
    const double r = std::sqrt(-s2);
    c = std::cos(r);
    s = std::sin(r) / r;
  }
  return c * Mat2::Identity() + s * x;
}

inline Mat2 exp_elem(const Vec3& x) { return exp2(to_matrix(x)); }

// Adjoint action on coordinates: Ad(g) X corresponds to g to_matrix(X) g^{-1}.
inline Vec3 adjoint(const Mat2& g, const Vec3& x) {
  return from_matrix(g * to_matrix(x) * g.inverse());
}

// Ad(g) as a 3x3 matrix.
inline Mat3 adjoint_matrix(const Mat2& g) {
  Mat3 m;
  m.col(0) = adjoint(g, Vec3(1, 0, 0));
  m.col(1) = adjoint(g, Vec3(0, 1, 0));
  m.col(2) = adjoint(g, Vec3(0, 0, 1));
  return m;
}

// One-sheeted hyperboloid point tau_{v,phi} = (cosh v cos phi, cosh v sin phi, sinh v).
inline Vec3 orbit_point(double v, double phi) {
  return Vec3(std::cosh(v) * std::cos(phi), std::cosh(v) * std::sin(phi),
              std::sinh(v));
}

// g_{v,phi} = exp(phi C) exp(v B) moves A to tau_{2v, 2phi}.
inline Mat2 orbit_mover(double v, double phi) {
  return exp_elem(Vec3(0, 0, phi)) * exp_elem(Vec3(0, v, 0));
}

// Density of the symplectic measure on the orbit of T*A in (v,phi) coordinates:
// omega = (T cosh v / 4 pi) dv dphi.
inline double symplectic_density(double T, double v) {
  return T * std::cosh(v) / (4.0 * M_PI);
}

// Symplectic area of the box {|v| <= 1/bp, |phi| <= 1/cp} on the T-orbit.
inline double symplectic_box_area(double T, double bp, double cp) {
  return (T / M_PI) * (1.0 / cp) * std::sinh(1.0 / bp);
}

// vol(K) under the conventions used for the Kirillov formula.
inline constexpr double vol_K = M_PI;

}  // namespace supnorm
