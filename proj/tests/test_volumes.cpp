#include <catch2/catch_amalgamated.hpp>

#include "supnorm/volumes.hpp"

using namespace supnorm::padic;
using Catch::Approx;

namespace {
TorusSpec split_torus(long p, int r, int j) {
  const MultCharacter chi = make_character(p, 2 * r, 1);
  return make_torus(TorusKind::SplitConjugate, compute_b_chi(chi, r),
                    ipow(p, j));
}
TorusSpec nonsplit_torus(long p, int j) {
  return make_torus(TorusKind::Nonsplit, 2, ipow(p, j));  // 2 is a non-residue
}
}  // namespace

TEST_CASE("distance to the thickened diagonal", "[volumes]") {
  const long p = 3;
  const int n = 1;
  // Diagonal units are members.
  REQUIRE(distance_dH(PadicMatrix(2, 0, 0, 5, p, 2), n).member);
  // Unit diagonal with off-diagonal valuation 1 sits at level 1.
  const auto d1 = distance_dH(PadicMatrix(1, 3, 6, 2, p, 2), n);
  REQUIRE_FALSE(d1.member);
  REQUIRE(d1.l == 1);
  // Long Weyl element: level 0.
  const auto dw = distance_dH(PadicMatrix(0, 8, 1, 0, p, 2), n);
  REQUIRE_FALSE(dw.member);
  REQUIRE(dw.l == 0);
  REQUIRE(dw.value(3.0) == Approx(1.0));
}

TEST_CASE("quadratic congruence counts obey the half-power bound",
          "[volumes]") {
  for (long p : {3L, 5L}) {
    for (int n : {1, 2, 3}) {
      // c2 unit, c0 = c2: only the trivial branch alpha = 1 survives in 1+pZ.
      REQUIRE(quadratic_count(1, 1, p, n) == 1);
      // 2 is never a square of 1 + pZ at p = 3, 5.
      REQUIRE(quadratic_count(1, 2, p, n) == 0);
      for (int l = 0; l <= n; l++) {
        const long c2 = ipow(p, l);
        long worst = 0;
        for (long c0 = 0; c0 < ipow(p, n); c0++)
          worst = std::max(worst, quadratic_count(c2, c0, p, n));
        REQUIRE(double(worst) <= std::pow(double(p), (n + l) / 2.0) + 1e-9);
      }
    }
  }
}

TEST_CASE("volume counts: identity, trivial shell, and w-symmetry of the "
          "torus hull",
          "[volumes]") {
  for (long p : {3L, 5L}) {
    for (const TorusSpec& T : {split_torus(p, 1, 1), nonsplit_torus(p, 1)}) {
      const auto dt = dt_set(T, p, 1);
      REQUIRE(volume_count(PadicMatrix::identity(p, 1), dt, p, 1) ==
              Approx(1.0));
      // D T is stable under left multiplication by the Weyl element, which is
      // what makes V invariant under gamma -> w gamma.
      const PadicMatrix w(0, p - 1, 1, 0, p, 1);
      for (long code : dt) {
        const long d = code % p, c = (code / p) % p, b = (code / p / p) % p,
                   a = code / p / p / p;
        REQUIRE(dt.count((w * PadicMatrix(a, b, c, d, p, 1)).code()) == 1);
      }
    }
  }
}

TEST_CASE("exhaustive volume bound at level one for both torus kinds",
          "[volumes]") {
  for (long p : {3L, 5L}) {
    for (const TorusSpec& T : {split_torus(p, 1, 1), nonsplit_torus(p, 1)}) {
      const auto rep = verify_volume_bound(p, 1, T);
      INFO("p=" << p << " kind=" << (T.kind == TorusKind::Nonsplit)
                << " C=" << rep.max_ratio);
      REQUIRE(rep.scanned == gl2_order(p, 2));
      REQUIRE(rep.max_ratio <= 1.0 + 1e-12);
      REQUIRE(rep.max_w_gap < 1e-12);
      REQUIRE(rep.trivial_shell == Approx(1.0));
      // Volumes shrink as the effective distance from the torus shell grows.
      double prev = 0;
      for (const auto& [leff, vmax] : rep.max_by_leff) {
        REQUIRE(vmax >= prev - 1e-12);
        prev = vmax;
      }
    }
  }
}

TEST_CASE("sampled volume bound at level two", "[volumes]") {
  const long p = 3;
  for (const TorusSpec& T : {split_torus(p, 2, 2), nonsplit_torus(p, 2)}) {
    const auto rep = verify_volume_bound(p, 2, T, 10000);
    INFO("C=" << rep.max_ratio);
    REQUIRE(rep.scanned == 10000);
    REQUIRE(rep.max_ratio <= 1.0 + 1e-12);
    REQUIRE(rep.max_w_gap < 1e-12);
  }
}

TEST_CASE("index computations for the thickened torus", "[volumes]") {
  for (long p : {3L, 5L}) {
    const double q = double(p);
    for (const TorusSpec& T : {split_torus(p, 1, 2), nonsplit_torus(p, 2)}) {
      const auto idx = volume_indices(p, 1, T);
      // vol(H(2n)) = q^{-4n} / (1 + 1/q) exactly.
      REQUIRE(idx.vol_h == Approx(std::pow(q, -4.0) / (1 + 1 / q)));
      // vol(U) ~ q^{-2n} and vol(U cap H) ~ q^{-5n} within bounded factors.
      REQUIRE(idx.vol_u * std::pow(q, 2.0) > 0.25);
      REQUIRE(idx.vol_u * std::pow(q, 2.0) < 4.0);
      REQUIRE(idx.vol_u_cap_h * std::pow(q, 5.0) > 0.25);
      REQUIRE(idx.vol_u_cap_h * std::pow(q, 5.0) < 4.0);
      // The benchmark constant vol(U cap H)/(vol(H) vol(U)) ~ q^n.
      const double bench = idx.vol_u_cap_h / (idx.vol_h * idx.vol_u);
      REQUIRE(bench / q > 0.5);
      REQUIRE(bench / q < 2.0 + 1e-12);
    }
  }
}

TEST_CASE("orbital-integral benchmark on the torus shell", "[volumes]") {
  // For gamma in H(2n), I_gamma(f*f) = dim(V_new) Q(v) with v the shifted
  // lift; this stays within a factor 2 of q^n.
  for (long p : {3L, 5L}) {
    const MultCharacter chi = make_character(p, 2, 1);
    const InducedModel M(chi);
    VecC vml = M.ml_vector();
    vml /= M.norm(vml);
    const VecC shifted = M.apply(M.shift_ct(1), vml);
    const double I = M.dim() * std::real(M.local_period_Q(shifted));
    const double qn = double(p);
    REQUIRE(I >= qn / 2.0);
    REQUIRE(I <= 2.0 * qn);
  }
}

TEST_CASE("matrix coefficient exponents match the volume-bound table",
          "[volumes]") {
  for (long p : {3L, 5L}) {
    const MultCharacter chi = make_character(p, 2, 1);
    const InducedModel M(chi);
    const auto table = coeff_exponent_table(M);
    const int n = M.r;
    bool saw_member = false;
    for (const auto& row : table) {
      INFO("l=" << row.l << " max=" << row.max_coeff
                << " bound=" << row.bound_vol);
      REQUIRE(row.max_coeff <= row.bound_vol + 1e-9);
      if (row.l == 2 * n + 1) {
        saw_member = true;
        REQUIRE(row.max_coeff == Approx(1.0));  // gamma in H: coefficient 1
      }
      // Where the stationary-phase row applies it is at least as strong.
      if (row.l >= n && row.l <= 2 * n)
        REQUIRE(row.bound_husa <= row.bound_vol + 1e-12);
    }
    REQUIRE(saw_member);
  }
}
