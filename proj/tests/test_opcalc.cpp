#include <catch2/catch_amalgamated.hpp>

#include "supnorm/opcalc.hpp"

using namespace supnorm;

TEST_CASE("group action through the Cartan route", "[opcalc]") {
  const WeightModule M(20.0, 18);
  const GroupAction act(M);
  const Vec3 x(0.1, 0.0, 0.25);
  const MatXc a = act(x);
  // Exactly unitary by construction.
  REQUIRE((a * a.adjoint() - MatXc::Identity(M.dim(), M.dim())).norm() < 1e-12);
  // Agrees with the joint truncated exponential away from the cut.
  const MatXc b = expm_skew(x(0) * M.op_A() + x(1) * M.op_B() + x(2) * M.op_C());
  const int d = M.dim();
  REQUIRE((a.block(6, 6, d - 12, d - 12) - b.block(6, 6, d - 12, d - 12)).norm() <
          1e-4);
  // Rotations act diagonally by the weight character.
  const MatXc k = act(Vec3(0, 0, 0.3));
  VecXc v = VecXc::Zero(d);
  v(M.idx(4)) = 1.0;
  REQUIRE(std::abs((k * v)(M.idx(4)) - std::polar(1.0, 8 * 0.3)) < 1e-12);
}

TEST_CASE("quantisation of a weight-direction symbol is diagonal", "[opcalc]") {
  // A symbol centered on the C-axis with c1 = 0 quantises to a diagonal
  // operator whose entries sample the symbol at the slice heights.
  const double T = 36.0, h = 1.0 / T;
  const WeightModule M = WeightModule::standard(T);
  const GroupAction act(M);
  const SymbolSpec sym{1.0, Vec3(0, 0, 0.1),
                       Vec3(0.3, 0.3, std::pow(h, kDeltaPP))};
  const auto res = op_quantize(sym, h, act);
  double offdiag = 0;
  for (int m = 0; m < M.dim(); m++)
    for (int n = 0; n < M.dim(); n++)
      if (m != n) offdiag = std::max(offdiag, std::abs(res.op(m, n)));
  REQUIRE(offdiag < 1e-10);
}

TEST_CASE("real symbols quantise to self-adjoint operators", "[opcalc]") {
  const double T = 72.0, h = 1.0 / T;
  const WeightModule M = WeightModule::standard(T);
  const GroupAction act(M);
  const auto res = op_quantize(coin_symbol(h), h, act);
  REQUIRE_FALSE(res.grid_flag);
  REQUIRE((res.op - res.op.adjoint()).norm() <= 1e-6 * res.op.norm());
}

TEST_CASE("relative character against the slice average", "[opcalc]") {
  const double T = 72.0, h = 1.0 / T;
  const WeightModule M = WeightModule::standard(T);
  const GroupAction act(M);
  const SymbolSpec sym = coin_symbol(h);
  const auto res = op_quantize(sym, h, act);
  for (int n : {0, 2, 5}) {
    const auto rc = relative_character_check(res.op, sym, h, n, M);
    REQUIRE(rc.error <= std::pow(h, 1 - 2 * kDeltaP));
  }
  // The slice average of the coin symbol has the h^{delta'} size.
  const auto rc0 = relative_character_check(res.op, sym, h, 0, M);
  REQUIRE(rc0.rhs >= 0.2 * std::pow(h, kDeltaP));
  REQUIRE(rc0.rhs <= 2.0 * std::pow(h, kDeltaP));
}

TEST_CASE("symbols supported away from the orbit quantise to nothing",
          "[opcalc]") {
  const double T = 72.0, h = 1.0 / T;
  const WeightModule M = WeightModule::standard(T);
  const GroupAction act(M);
  const SymbolSpec far{1.0, Vec3(0, 0, 0.5), coin_symbol(h).widths};
  const auto res = op_quantize(far, h, act);
  const auto rc = relative_character_check(res.op, far, h, 0, M);
  REQUIRE(std::abs(rc.lhs) <= 1e-3);
  REQUIRE(std::abs(rc.rhs) <= 1e-3);
}

TEST_CASE("star product error is small at the calculus scale", "[opcalc]") {
  const double T = 72.0, h = 1.0 / T;
  const WeightModule M = WeightModule::standard(T);
  const GroupAction act(M);
  const SymbolSpec sym = coin_symbol(h);
  const auto a = op_quantize(sym, h, act);
  const auto a2 = op_quantize(sym.squared(), h, act);
  const double err = (a.op * a.op - a2.op).operatorNorm();
  // Bounded by the composition-rule scale h^{1-2delta'} with a modest constant.
  REQUIRE(err <= 2.0 * std::pow(h, 1 - 2 * kDeltaP));
}
