#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "supnorm/counting.hpp"

using namespace supnorm::counting;
using Catch::Approx;

namespace {
// Random word in the standard generators, to keep entries moderate.
IMat random_sl2(std::mt19937& rng, int steps = 6) {
  IMat g{1, 0, 0, 1};
  const IMat S{0, -1, 1, 0};
  for (int s = 0; s < steps; s++) {
    const int64_t k = int64_t(rng() % 5) - 2;
    g = g * IMat{1, k, 0, 1} * S;
  }
  return g;
}
}  // namespace

TEST_CASE("point-pair invariant and its relation to hyperbolic distance",
          "[counting]") {
  REQUIRE(u_invariant({0, 1}, {0, 2}) == Approx(0.5));
  REQUIRE(u_invariant({0.3, 1.7}, {0.3, 1.7}) == Approx(0.0).margin(1e-15));
  // Symmetry and invariance under common translation.
  REQUIRE(u_invariant({0.1, 2}, {-0.4, 0.7}) ==
          Approx(u_invariant({-0.4, 0.7}, {0.1, 2})));
  REQUIRE(u_invariant({1.1, 2}, {0.6, 0.7}) ==
          Approx(u_invariant({0.1, 2}, {-0.4, 0.7})));
  // d(z,w)^2 / u -> 1 for nearby points.
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int s = 0; s < 50; s++) {
    const Cplx z{unif(rng), 1.5 + unif(rng)};
    const Cplx w = z + 1e-3 * Cplx{unif(rng), unif(rng)};
    const double u = u_invariant(z, w);
    if (u > 1e-4 || u < 1e-12) continue;
    const double d = hyperbolic_distance(z, w);
    REQUIRE(d * d / u > 0.9);
    REQUIRE(d * d / u < 1.1);
  }
}

TEST_CASE("determinant-one count at the base point picks out +-1 and +-S",
          "[counting]") {
  const CountQuery Q{{0, 1}, {1, 0, 0, 1}, 0.1, 1, 1, false};
  const auto det = count_M_detail(Q);
  REQUIRE(det.count == 4);
  REQUIRE(det.parabolic == 0);
}

TEST_CASE("count is monotone in the sieve modulus and the radius",
          "[counting]") {
  std::mt19937 rng(11);
  for (int s = 0; s < 5; s++) {
    const IMat gp = random_sl2(rng);
    const Cplx z{0.2 * double(s % 3), 2.0 + 0.5 * s};
    for (int64_t m : {4L, 35L, 49L}) {
      long prev_L = -1;
      for (int64_t L : {1L, 3L, 9L}) {
        const long cnt = count_M({z, gp, 0.3, L, m, false});
        if (prev_L >= 0) REQUIRE(cnt <= prev_L);
        prev_L = cnt;
      }
      long prev_d = -1;
      for (double dp : {0.02, 0.1, 0.4}) {
        const long cnt = count_M({z, gp, dp, 3, m, false});
        REQUIRE(cnt >= prev_d);
        prev_d = cnt;
      }
      // The trivial sieve makes the diagonal and off-diagonal variants agree.
      REQUIRE(count_M({z, gp, 0.3, 1, m, true}) ==
              count_M({z, gp, 0.3, 1, m, false}));
    }
  }
}

TEST_CASE("diagonal-sieved variant is conjugation-consistent", "[counting]") {
  // Sieving the diagonal of g_p^{-1} gamma g_p at L = 1 changes nothing, and
  // at L = p it is genuinely different from the off-diagonal sieve.
  const Cplx z{0.0, 2.0};
  std::mt19937 rng(29);
  bool differ = false;
  for (int s = 0; s < 8; s++) {
    const IMat gp = random_sl2(rng);
    const long a = count_M({z, gp, 0.25, 3, 35, true});
    const long b = count_M({z, gp, 0.25, 3, 35, false});
    REQUIRE(a >= 0);
    if (a != b) differ = true;
  }
  REQUIRE(differ);
}

TEST_CASE("Lagrange-Gauss reduction on the standard test lattices",
          "[counting]") {
  const auto r1 = gauss_reduce({0, 1}, {1, 0});  // z = i
  REQUIRE(r1.lambda1 == Approx(1.0));
  REQUIRE(r1.covolume == Approx(1.0));
  const auto r2 = gauss_reduce({0.5, 2}, {1, 0});  // z = 1/2 + 2i
  REQUIRE(r2.lambda1 == Approx(1.0));
  REQUIRE(r2.covolume == Approx(2.0));
  // Scaling the basis by 2 doubles lambda_1 and quadruples the covolume.
  const auto r3 = gauss_reduce({1, 4}, {2, 0});
  REQUIRE(r3.lambda1 == Approx(2.0 * r2.lambda1));
  REQUIRE(r3.covolume == Approx(4.0 * r2.covolume));
  // For Lambda_z = zZ + Z: lambda_1 >= min(y, 1).
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> unif(0.05, 3.0);
  for (int s = 0; s < 40; s++) {
    const Cplx z{unif(rng) - 1.5, unif(rng)};
    const auto r = gauss_reduce(z, {1, 0});
    REQUIRE(r.lambda1 >= std::min(z.imag(), 1.0) - 1e-12);
    REQUIRE(r.covolume == Approx(z.imag()));
  }
}

TEST_CASE("lattice points in balls: exact small cases and the general bounds",
          "[counting]") {
  // Z^2, radius 2.5 about the origin: 21 points, 16 of them primitive.
  REQUIRE(ball_count({1, 0}, {0, 1}, {0, 0}, 2.5, false) == 21);
  REQUIRE(ball_count({1, 0}, {0, 1}, {0, 0}, 2.5, true) == 16);
  // Below the first minimum the primitive count at the origin is at most 2.
  REQUIRE(ball_count({1, 0}, {0, 1}, {0, 0}, 0.9, true) <= 2);

  std::mt19937 rng(19);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int s = 0; s < 60; s++) {
    const Cplx b1{unif(rng), 1.0 + std::abs(unif(rng))};
    const Cplx b2{1.0 + std::abs(unif(rng)), unif(rng)};
    const auto rb = gauss_reduce(b1, b2);
    const double R = 0.1 + 2.5 * std::abs(unif(rng));
    const Cplx center{unif(rng), unif(rng)};
    const long all = ball_count(b1, b2, center, R, false);
    const long prim = ball_count(b1, b2, {0, 0}, R, true);
    const double C = 6.0;
    REQUIRE(double(all) <=
            C * (1.0 + R / rb.lambda1 + R * R / rb.covolume));
    REQUIRE(double(prim) <= C * (1.0 + R * R / rb.covolume));
  }
}

TEST_CASE("oversized search boxes are rejected rather than truncated",
          "[counting]") {
  REQUIRE_THROWS_AS(count_M({{0.0, 0.001}, {1, 0, 0, 1}, 1.0, 1, 100000000, false}),
                    std::overflow_error);
}

TEST_CASE("parabolic matrices keep a divisible upper entry after conjugation",
          "[counting]") {
  // Direct check of the conjugation helper on constructed parabolics.
  std::mt19937 rng(41);
  for (int s = 0; s < 200; s++) {
    const IMat xi = random_sl2(rng);
    const int64_t a = int64_t(rng() % 7) + 1, b = int64_t(rng() % 60) - 30;
    const IMat par = xi * IMat{a, b, 0, a} * xi.inv_unimodular();
    int64_t bb;
    REQUIRE(supnorm::counting::detail::parabolic_conjugate_b(par, bb));
    REQUIRE(std::abs(bb) == std::abs(b));
  }
  // And through the counter: every counted parabolic passes the p^l | b test.
  std::mt19937 rng2(43);
  for (int s = 0; s < 6; s++) {
    const IMat gp = random_sl2(rng2);
    const auto det = count_M_detail({{0, 2.0 + s}, gp, 0.3, 3, 49, false});
    REQUIRE(det.parabolic_b_checked == det.parabolic);
  }
}

TEST_CASE("packaged counting corollary at the calibration instance",
          "[counting]") {
  // X = 5, p = 3, l = 1, z = 3i, delta' = 0.05: the frozen constant C = 8
  // covers the identity g_p and a random sample.
  const auto rep = verify_counting_corollary({0, 3}, {1, 0, 0, 1}, 0.05, 3, 1,
                                             5, 8.0);
  INFO("lhs=" << rep.lhs << " rhs=" << rep.rhs);
  REQUIRE(rep.pass);
  REQUIRE(rep.lhs <= rep.rhs);
  REQUIRE(rep.m1_lhs <= rep.m1_rhs);
  REQUIRE(rep.is_lhs <= rep.is_rhs);

  std::mt19937 rng(47);
  for (int s = 0; s < 3; s++) {
    const auto r2 = verify_counting_corollary({0, 5}, random_sl2(rng), 0.05, 3,
                                              1, 5, 8.0);
    INFO("sample " << s << ": lhs=" << r2.lhs << " rhs=" << r2.rhs);
    REQUIRE(r2.pass);
  }
}
