#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "supnorm/amplifier.hpp"

using namespace supnorm::amp;
using supnorm::rat::Rat;
using Catch::Approx;

TEST_CASE("exact rational arithmetic", "[rational]") {
  REQUIRE(Rat(1, 2) + Rat(1, 3) == Rat(5, 6));
  REQUIRE(Rat(3, 4) * Rat(2, 9) == Rat(1, 6));
  REQUIRE(Rat(1) - Rat(1, 12) == Rat(11, 12));
  REQUIRE(Rat(-2, -4) == Rat(1, 2));
  REQUIRE(Rat(5, 6) / Rat(1, 2) == Rat(5, 3));
  REQUIRE(Rat(1, 3) < Rat(1, 2));
  REQUIRE(Rat(7, 3).str() == "7/3");
  REQUIRE(Rat(4, 2).str() == "2");
  REQUIRE_THROWS_AS(Rat(1, 0), std::domain_error);
}

TEST_CASE("Hecke basis products", "[amplifier]") {
  // kappa_l * kappa_l = kappa_{l^2} + kappa_1.
  auto sq = hecke_convolve(11, 11);
  REQUIRE(sq.size() == 2);
  REQUIRE(sq[121] == Cplx(1));
  REQUIRE(sq[1] == Cplx(1));
  // kappa_1 is the identity.
  auto id = hecke_convolve(1, 13);
  REQUIRE(id.size() == 1);
  REQUIRE(id[13] == Cplx(1));
  // kappa_{l^2} * kappa_{l^2} = kappa_{l^4} + kappa_{l^2} + kappa_1.
  auto sq2 = hecke_convolve(121, 121);
  REQUIRE(sq2.size() == 3);
  REQUIRE(sq2[14641] == Cplx(1));
  REQUIRE(sq2[121] == Cplx(1));
  REQUIRE(sq2[1] == Cplx(1));
  // Coprime arguments multiply.
  auto cp = hecke_convolve(11, 13);
  REQUIRE(cp.size() == 1);
  REQUIRE(cp[143] == Cplx(1));
}

TEST_CASE("amplifier coefficients", "[amplifier]") {
  const std::vector<int64_t> P{11, 13, 17};
  const std::vector<Cplx> ones(P.size(), 1.0);
  const HeckeVector A = build_amplifier(P, ones, ones);
  // a_1 = 2 #P.
  REQUIRE(A.at(1) == Cplx(6));
  // |a_m| = 1 on products of two distinct primes, 2 on squares.
  REQUIRE(std::abs(A.at(11 * 13)) == Approx(1.0));
  REQUIRE(std::abs(A.at(11 * 17)) == Approx(1.0));
  REQUIRE(std::abs(A.at(121)) == Approx(2.0));
  REQUIRE(std::abs(A.at(169)) == Approx(2.0));
  // |a_m| = 1 on squares of distinct products and on fourth powers.
  REQUIRE(std::abs(A.at(121 * 169)) == Approx(1.0));
  REQUIRE(std::abs(A.at(14641)) == Approx(1.0));
  // Support stays on the expected set.
  for (const auto& [m, c] : A) {
    int64_t rest = m;
    for (int64_t l : P)
      while (rest % l == 0) rest /= l;
    REQUIRE(rest == 1);
    REQUIRE(std::abs(c) > 0.5);
  }
  // With the two-prime set the small cases of the coefficient table hold too.
  const std::vector<int64_t> P2{11, 13};
  const std::vector<Cplx> o2(2, 1.0);
  REQUIRE(build_amplifier(P2, o2, o2).at(1) == Cplx(4));
}

TEST_CASE("amplifier positivity and lower bound", "[amplifier]") {
  const std::vector<int64_t> P{11, 13, 17};
  const auto rep = amplifier_lower_bound(P);
  INFO("grid_inf=" << rep.grid_inf << " min_ratio=" << rep.min_form_ratio);
  REQUIRE(rep.pass);
  REQUIRE(rep.grid_inf >= 0.74);
  REQUIRE(rep.min_form_ratio >= 1.0 / 8);
  // Spot values of |t| + |t^2 - 1|.
  REQUIRE(std::abs(0.0) + std::abs(0.0 - 1.0) == Approx(1.0));
  REQUIRE(std::abs(0.5) + std::abs(0.25 - 1.0) == Approx(1.25));
  // Positivity for arbitrary signs, not just the adapted choice.
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(-2.0, 2.0);
  for (int d = 0; d < 50; d++) {
    std::vector<double> lam(P.size());
    std::vector<Cplx> x1(P.size()), x2(P.size());
    for (size_t i = 0; i < P.size(); i++) {
      lam[i] = unif(rng);
      x1[i] = rng() % 2 ? 1.0 : -1.0;
      x2[i] = rng() % 2 ? 1.0 : -1.0;
    }
    REQUIRE(eigenvalue_form(build_amplifier(P, x1, x2), P, lam) >= -1e-9);
  }
}

TEST_CASE("exponent balancing on the three ledgers", "[exponents]") {
  const auto rep = derive_theorem_exponents();

  // Stage 1: X = T^{1/12}, square amplitude T^{11/12} + T^{1/2} y.
  REQUIRE(rep.naive_X.size() == 1);
  REQUIRE(rep.naive_X.at("T") == Rat(1, 12));
  REQUIRE(rep.naive_T == Rat(11, 12));
  REQUIRE(rep.naive_T_y == Rat(1, 2));

  // Stage 2: X = (T P)^{1/6}, result T^{5/6} N^{11/24}.
  REQUIRE(rep.amp_X.at("T") == Rat(1, 6));
  REQUIRE(rep.amp_X.at("P") == Rat(1, 6));
  REQUIRE(rep.amp_T == Rat(5, 6));
  REQUIRE(rep.amp_N == Rat(11, 24));

  // Stage 3: X = T^{1/6} P^{1/3} = (T N0)^{1/6}, result (T N0)^{5/6}.
  REQUIRE(rep.impr_X.at("T") == Rat(1, 6));
  REQUIRE(rep.impr_X.at("P") == Rat(1, 3));
  REQUIRE(rep.impr_T == Rat(5, 6));
  REQUIRE(rep.impr_N0 == Rat(5, 6));

  // Crossover height and the final exponent.
  REQUIRE(rep.cross_T == Rat(1, 6));
  REQUIRE(rep.cross_N == Rat(1, 12));
  REQUIRE(rep.final_exponent == Rat(5, 24));
}

TEST_CASE("the optimizer is optimal on a rational grid", "[exponents]") {
  const auto rep = derive_theorem_exponents();
  const std::map<std::string, Rat> wT{{"T", Rat(1)}};
  const std::map<std::string, Rat> wTP{{"T", Rat(1)}, {"P", Rat(1, 4)}};
  const std::map<std::string, Rat> wTP2{{"T", Rat(1)}, {"P", Rat(1, 2)}};
  REQUIRE(optimal_on_grid(rep.naive_bound, wT, rep.naive_res));
  REQUIRE(optimal_on_grid(rep.amp_bound, wTP, rep.amp_res, 24, 1));
  REQUIRE(optimal_on_grid(rep.impr_bound, wTP2, rep.impr_res, 24, 1));
}

TEST_CASE("degenerate ledgers are rejected", "[exponents]") {
  MonomialBound bad;
  Monomial m1, m2;
  m1.exp["X"] = Rat(1);
  m1.exp["T"] = Rat(1);
  m2.exp["X"] = Rat(2);
  bad.terms = {m1, m2};
  REQUIRE_THROWS_AS(optimize_X(bad, {{"T", Rat(1)}}), std::domain_error);
}
