#include <catch2/catch_amalgamated.hpp>

#include "supnorm/induced.hpp"
#include "supnorm/principal_checks.hpp"

using namespace supnorm::padic;
using Catch::Approx;

namespace {
const InducedModel& model3() {
  static InducedModel M(make_character(3, 2, 1));
  return M;
}
const InducedModel& model5() {
  static InducedModel M(make_character(5, 2, 1));
  return M;
}
}  // namespace

TEST_CASE("induced model dimension and unitarity of the action", "[induced]") {
  const auto& M = model3();
  REQUIRE(M.dim() == 12);  // p^m (1 + 1/p)
  std::mt19937 rng(3);
  for (int s = 0; s < 20; s++) {
    const PadicMatrix g = M.group().elems[rng() % M.group().size()];
    const MatC A = M.action(g);
    REQUIRE((A.adjoint() * A - MatC::Identity(12, 12)).norm() < 1e-12);
  }
  // Homomorphism property on sampled pairs.
  for (int s = 0; s < 10; s++) {
    const PadicMatrix g = M.group().elems[rng() % M.group().size()];
    const PadicMatrix h = M.group().elems[rng() % M.group().size()];
    REQUIRE((M.action(g) * M.action(h) - M.action(g * h)).norm() < 1e-12);
  }
}

TEST_CASE("double coset partition of the maximal compact is exact",
          "[induced]") {
  for (const InducedModel* Mp : {&model3(), &model5()}) {
    const auto& M = *Mp;
    const CosetTable tab = M.double_coset_partition();
    REQUIRE(tab.cell_sizes.size() == size_t(2 * M.m + 1));
    long total = 0;
    for (long s : tab.cell_sizes) {
      REQUIRE(s > 0);
      total += s;
    }
    REQUIRE(total == M.group().size());
    REQUIRE(tab.partition_ok);
  }
}

TEST_CASE("the spherical-type vector is the unique Hecke-diagonal invariant",
          "[induced]") {
  const auto& M = model3();
  const VecC f = M.new_vector();
  REQUIRE(std::real(M.inner(f, f)) == Approx(0.5));
  // Right invariance under the full diagonal Hecke subgroup.
  for (const auto& k : M.hecke_kh())
    REQUIRE((M.apply(k, f) - f).norm() < 1e-12);
  REQUIRE(kh_invariant_dim(M) == Approx(1.0).margin(1e-9));
  REQUIRE(kh_invariant_dim(model5()) == Approx(1.0).margin(1e-9));
}

TEST_CASE("the lift vector spans the thickened-torus eigenspace", "[induced]") {
  for (const InducedModel* Mp : {&model3(), &model5()}) {
    const auto& M = *Mp;
    const VecC f = M.ml_vector();
    REQUIRE(std::real(M.inner(f, f)) == Approx(1.0 / (M.p + 1)));
    // Eigen-equation pi(d k1) f = chi_D(d) theta(k1) f on the generators and
    // on random products.
    std::mt19937 rng(7);
    const auto kr = M.congruence_kr();
    for (int s = 0; s < 25; s++) {
      long u = 1 + long(rng() % (M.pm - 1)), v = 1 + long(rng() % (M.pm - 1));
      if (u % M.p == 0 || v % M.p == 0) continue;
      const PadicMatrix d(u, 0, 0, v, M.p, M.m);
      const PadicMatrix k1 = kr[rng() % kr.size()];
      const Cplx ev = M.chi_D(d) * M.theta_tau(k1);
      REQUIRE((M.apply(d * k1, f) - ev * f).norm() < 1e-12);
    }
    REQUIRE(type_eigenspace_dim(M) == Approx(1.0).margin(1e-9));
    const ThickTorus T = thick_torus(M);
    REQUIRE(T.character_well_defined);
    // |D(O) K(r)| = phi(p^m)^2 p^{2(m-r)}: the intersection D cap K(r) has
    // index phi(p^r)^2 in D on both sides.
    const long phi = ipow(M.p, M.m - 1) * (M.p - 1);
    REQUIRE(long(T.elems.size()) == phi * phi * ipow(M.p, 2 * (M.m - M.r)));
  }
}

TEST_CASE("matrix coefficients of the lift live on the thickened torus",
          "[induced]") {
  for (const InducedModel* Mp : {&model3(), &model5()}) {
    const SupportScan scan = matrix_coeff_support_scan(*Mp);
    INFO("support size " << scan.support_size << ", exceptional "
                         << scan.exceptional << " (max "
                         << scan.max_exceptional_coeff << ")");
    REQUIRE(scan.support_size > 0);
    REQUIRE(scan.exceptional == 0);
  }
}

TEST_CASE("local periods of the distinguished vectors", "[induced]") {
  for (const InducedModel* Mp : {&model3(), &model5()}) {
    const auto& M = *Mp;
    const double q = double(M.p);
    const double zeta1 = 1.0 / (1.0 - 1.0 / q);
    VecC vnew = M.new_vector();
    vnew /= M.norm(vnew);
    VecC vml = M.ml_vector();
    vml /= M.norm(vml);
    REQUIRE(std::abs(M.local_period_Q(vnew) - Cplx(1.0)) < 1e-9);
    REQUIRE(std::abs(M.local_period_Q(vml)) < 1e-9);
    // The shifted lift carries the intermediate period zeta_q(1) q^{-r}.
    for (long t = 1; t < ipow(M.p, M.r); t++) {
      if (t % M.p == 0) continue;
      const VecC shifted = M.apply(M.shift_ct(t), vml);
      const Cplx Q = M.local_period_Q(shifted);
      REQUIRE(std::abs(Q - Cplx(zeta1 / q)) < 1e-9);
    }
  }
}

TEST_CASE("the new vector decomposes over shifted lifts", "[induced]") {
  for (const InducedModel* Mp : {&model3(), &model5()}) {
    const auto& M = *Mp;
    const double q = double(M.p);
    const NewformDecomposition dec = newform_decomposition(M);
    REQUIRE(dec.a_t.size() == size_t(M.p - 1));  // units mod p^r, r = 1
    const double expect_mag = std::sqrt(1.0 / (1.0 - 1.0 / q)) / std::sqrt(q);
    for (const Cplx& a : dec.a_t)
      REQUIRE(std::abs(a) == Approx(expect_mag).margin(1e-9));
    REQUIRE(dec.sum_squares == Approx(1.0).margin(1e-9));
    REQUIRE(dec.max_cross < 1e-9);
    REQUIRE(dec.residual < 1e-9);
  }
}

TEST_CASE("truncated coefficient of the new vector behaves like a projector",
          "[induced]") {
  // Exhaustive convolution check at p = 3, sampled at p = 5.
  {
    const auto& M = model3();
    const TruncatedCoeffReport rep = truncated_coeff_lemmas(M, 12);
    REQUIRE(rep.vnew_span_dim == Approx(12.0));  // q^m (1 + 1/q)
    REQUIRE(rep.conv_identity_err < 1e-9);
    REQUIRE(rep.projection_err < 1e-9);
    REQUIRE(rep.schur_err < 1e-9);
  }
  {
    const auto& M = model5();
    const TruncatedCoeffReport rep = truncated_coeff_lemmas(M, 3);
    REQUIRE(rep.vnew_span_dim == Approx(30.0));
    REQUIRE(rep.conv_identity_err < 1e-9);
    REQUIRE(rep.projection_err < 1e-9);
    REQUIRE(rep.schur_err < 1e-9);
  }
}

TEST_CASE("the thickened torus is its own type stabiliser", "[induced]") {
  const TypeStabiliser st = type_stabiliser(model3());
  INFO("stabiliser " << st.stabiliser_size << " vs torus " << st.torus_size);
  REQUIRE(st.equal);
}

TEST_CASE("distinct unipotent translates of the lift are orthogonal",
          "[induced]") {
  // Lower-triangular unipotent translates with parameters distinct mod p^r
  // have disjoint supports, hence vanishing inner products.
  for (const InducedModel* Mp : {&model3(), &model5()}) {
    const auto& M = *Mp;
    const VecC f = M.ml_vector();
    const long pr = ipow(M.p, M.r);
    std::vector<VecC> trans;
    for (long a = 0; a < pr; a++)
      trans.push_back(M.apply(PadicMatrix(1, 0, a, 1, M.p, M.m), f));
    for (size_t i = 0; i < trans.size(); i++) {
      REQUIRE(M.norm(trans[i]) == Approx(M.norm(f)));
      for (size_t j = 0; j < i; j++)
        REQUIRE(std::abs(M.inner(trans[i], trans[j])) < 1e-12);
    }
  }
}
