#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "supnorm/sl2.hpp"

using namespace supnorm;

namespace {
Vec3 random_vec(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return Vec3(u(rng), u(rng), u(rng));
}
}  // namespace

TEST_CASE("structure constants of the A,B,C basis", "[sl2]") {
  const Vec3 A(1, 0, 0), B(0, 1, 0), C(0, 0, 1);
  REQUIRE((bracket(B, C) - 2 * A).norm() < 1e-14);
  REQUIRE((bracket(A, B) + 2 * C).norm() < 1e-14);
  REQUIRE((bracket(A, C) + 2 * B).norm() < 1e-14);
}

TEST_CASE("ad matrix agrees with the bracket", "[sl2]") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 50; i++) {
    const Vec3 x = random_vec(rng), y = random_vec(rng);
    REQUIRE((ad(x) * y - bracket(x, y)).norm() < 1e-12);
  }
}

TEST_CASE("trace pairing in coordinates", "[sl2]") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 50; i++) {
    const Vec3 u = random_vec(rng), x = random_vec(rng);
    const double tr = (to_matrix(u) * to_matrix(x)).trace();
    REQUIRE(pairing(u, x) == Catch::Approx(tr).margin(1e-12));
    REQUIRE(pairing(u, x) ==
            Catch::Approx(2 * (u(0) * x(0) + u(1) * x(1) - u(2) * x(2))));
  }
}

TEST_CASE("exp2 matches the scaling-and-squaring series", "[sl2]") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 40; i++) {
    const Vec3 x = random_vec(rng, 1.5);
    // Plain Taylor series after halving 20 times.
    Mat2 m = to_matrix(x) / std::pow(2.0, 20);
    Mat2 e = Mat2::Identity();
    Mat2 term = Mat2::Identity();
    for (int k = 1; k <= 12; k++) {
      term = term * m / double(k);
      e += term;
    }
    for (int k = 0; k < 20; k++) e = e * e;
    REQUIRE((exp_elem(x) - e).norm() < 1e-8);
  }
}

TEST_CASE("jacobian j is Ad-invariant and >= 1 near zero", "[sl2]") {
  std::mt19937_64 rng(10);
  for (int i = 0; i < 40; i++) {
    const Vec3 x = random_vec(rng, 0.7);
    const Mat2 g = exp_elem(random_vec(rng, 0.5));
    REQUIRE(jacobian_j(adjoint(g, x)) == Catch::Approx(jacobian_j(x)).epsilon(1e-9));
  }
  // Continuity through s2 = 0 and the normalisation j(0) = 1.
  REQUIRE(jacobian_j(Vec3(0, 0, 0)) == Catch::Approx(1.0));
  REQUIRE(jacobian_j(Vec3(1e-5, 0, 1e-5)) == Catch::Approx(1.0).epsilon(1e-8));
  REQUIRE(jacobian_j(Vec3(0.3, 0, 0)) == Catch::Approx(std::pow(std::sinh(0.3) / 0.3, 2)));
  REQUIRE(jacobian_j(Vec3(0, 0, 0.3)) == Catch::Approx(std::pow(std::sin(0.3) / 0.3, 2)));
}

TEST_CASE("orbit points are reached by conjugating A", "[sl2][orbits]") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> uv(-1.0, 1.0), uphi(0.0, 2 * M_PI);
  for (int i = 0; i < 30; i++) {
    const double v = uv(rng), phi = uphi(rng);
    const Mat2 g = orbit_mover(v / 2, phi / 2);
    const Vec3 moved = adjoint(g, Vec3(1, 0, 0));
    REQUIRE((moved - orbit_point(v, phi)).norm() < 1e-10);
  }
}

TEST_CASE("orbit points keep the invariant s2 = 1", "[sl2][orbits]") {
  for (double v : {-1.2, -0.3, 0.0, 0.4, 2.0})
    for (double phi : {0.0, 0.7, 2.0, 5.5})
      REQUIRE(casimir_invariant(orbit_point(v, phi)) == Catch::Approx(1.0));
}

TEST_CASE("Ad(exp tA) rotates B hyperbolically into C", "[sl2][orbits]") {
  for (double t : {-0.8, -0.2, 0.3, 1.1}) {
    const Mat2 g = exp_elem(Vec3(t, 0, 0));
    const Vec3 b = adjoint(g, Vec3(0, 1, 0));
    REQUIRE((b - Vec3(0, std::cosh(2 * t), -std::sinh(2 * t))).norm() < 1e-12);
  }
}

TEST_CASE("symplectic area of a truncated band", "[sl2][orbits]") {
  // Integrate the density T cosh(v)/(4 pi) over |v| <= 1/bp, |phi| <= 1/cp and
  // compare with the closed form (T/pi) (1/cp) sinh(1/bp).
  const double T = 10.0, bp = 2.0, cp = 3.0;
  const int n = 20000;
  double sum = 0;
  const double hv = 2.0 / bp / n;
  for (int i = 0; i < n; i++) {
    const double v = -1.0 / bp + (i + 0.5) * hv;
    sum += symplectic_density(T, v) * hv * (2.0 / cp);
  }
  REQUIRE(sum == Catch::Approx(symplectic_box_area(T, bp, cp)).epsilon(1e-6));
}
