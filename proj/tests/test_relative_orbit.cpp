#include <catch2/catch_amalgamated.hpp>

#include "supnorm/relative_orbit.hpp"
#include "supnorm/transversality.hpp"

using namespace supnorm;

TEST_CASE("one-sheeted slices are circles at every weight", "[relorbit]") {
  const double T = 25.0;
  for (int k = -12; k <= 12; k += 2) {
    const auto circ = relative_orbit(HyperboloidSheets::One, T, k);
    REQUIRE(circ.has_value());
    REQUIRE(circ->height == Catch::Approx(k / 2.0));
    // The slice lies on the hyperboloid a^2 + b^2 - c^2 = T^2.
    const Vec3 p = circ->point(1.3);
    REQUIRE(casimir_invariant(p) == Catch::Approx(T * T));
  }
}

TEST_CASE("two-sheeted slices appear only above the waist", "[relorbit]") {
  const double T = 6.0;
  REQUIRE_FALSE(relative_orbit(HyperboloidSheets::Two, T, 0).has_value());
  REQUIRE_FALSE(relative_orbit(HyperboloidSheets::Two, T, 10).has_value());
  const auto at = relative_orbit(HyperboloidSheets::Two, T, 12);
  REQUIRE(at.has_value());
  REQUIRE(at->radius == Catch::Approx(0.0).margin(1e-12));
  const auto above = relative_orbit(HyperboloidSheets::Two, T, 20);
  REQUIRE(above.has_value());
  REQUIRE(above->radius == Catch::Approx(8.0));
}

TEST_CASE("circle average of the constant symbol is 1", "[relorbit]") {
  const auto circ = relative_orbit(HyperboloidSheets::One, 10.0, 4);
  REQUIRE(circ->average([](const Vec3&) { return 1.0; }) == Catch::Approx(1.0));
}

TEST_CASE("Ad deviation of the diagonal flow is comparable to 2|t|", "[transv]") {
  // Eigenvalues of Ad(diag(e^t,e^{-t})) are 1, e^{2t}, e^{-2t}.
  for (double t : {0.002, 0.01, 0.05, 0.2}) {
    const double d = ad_deviation(diag_element(t));
    REQUIRE(d >= 2 * t);
    REQUIRE(d <= 2 * t * (1 + 2 * t));
  }
}

TEST_CASE("size estimate: product of deviations bounded by orbit distance",
          "[transv]") {
  // lhs <= C * rhs uniformly over a grid of small gamma and y.
  double worst = 0;
  for (double t : {0.005, 0.02, 0.05, 0.1, 0.2}) {
    for (double theta : {0.01, 0.05, 0.1, 0.3, 0.6, 1.0}) {
      const double lhs = size_estimate_lhs(t, theta);
      const double rhs = size_estimate_rhs(t, theta);
      REQUIRE(rhs > 0);
      worst = std::max(worst, lhs / rhs);
    }
  }
  REQUIRE(worst <= 4.0);
}

TEST_CASE("band volume obeys the T^{-1/2}/d(gamma) bound", "[transv]") {
  for (double T : {100.0, 400.0, 1600.0}) {
    const double rp = 1.0 / std::sqrt(T);
    for (double t : {0.05, 0.1, 0.3}) {
      const double vol = k_band_volume(t, rp, 40000);
      REQUIRE(vol <= 4.0 * (1.0 / std::sqrt(T)) / (2 * t));
    }
  }
}

TEST_CASE("band volume shrinks when the box radius shrinks", "[transv]") {
  const double t = 0.1;
  const double wide = k_band_volume(t, std::pow(1600.0, -0.1), 40000);
  const double narrow = k_band_volume(t, std::pow(1600.0, -0.5), 40000);
  REQUIRE(narrow < wide);
}
