// Acceptance gate: runs every headline check at its pinned tolerance and
// prints exactly one PASS/FAIL line per criterion. Exit status is the number
// of failing criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "supnorm/amplifier.hpp"
#include "supnorm/bessel.hpp"
#include "supnorm/commutator.hpp"
#include "supnorm/counting.hpp"
#include "supnorm/gtlv.hpp"
#include "supnorm/opcalc.hpp"
#include "supnorm/orbit_fourier.hpp"
#include "supnorm/principal_checks.hpp"
#include "supnorm/volumes.hpp"

namespace {

int failures = 0;

template <typename F>
void criterion(int num, const std::string& name, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body(note);
  } catch (const std::exception& e) {
    note = std::string("exception: ") + e.what();
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  std::printf("%s  criterion %2d  %-28s [%6.1fs]%s%s\n", ok ? "PASS" : "FAIL",
              num, name.c_str(), secs, note.empty() ? "" : "  ",
              note.c_str());
  std::fflush(stdout);
  if (!ok) failures++;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const int n = int(x.size());
  for (int i = 0; i < n; i++) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

int main() {
  using namespace supnorm;
  using namespace supnorm::padic;

  criterion(1, "exact p-adic suite", [](std::string& note) {
    bool ok = true;
    for (long p : {3L, 5L}) {
      const MultCharacter chi = make_character(p, 2, 1);
      const InducedModel M(chi);
      const double q = double(p), zeta1 = 1.0 / (1.0 - 1.0 / q);

      const CosetTable tab = M.double_coset_partition();
      long total = 0;
      for (long s : tab.cell_sizes) total += s;
      ok &= tab.partition_ok && int(tab.cell_sizes.size()) == 2 * M.m + 1 &&
            total == long(M.group().size());

      ok &= std::abs(kh_invariant_dim(M) - 1.0) < 1e-9;
      ok &= std::abs(type_eigenspace_dim(M) - 1.0) < 1e-9;
      ok &= matrix_coeff_support_scan(M).exceptional == 0;

      VecC vml = M.ml_vector();
      vml /= M.norm(vml);
      for (long t = 1; t < p; t++) {
        const VecC shifted = M.apply(M.shift_ct(t), vml);
        ok &= std::abs(M.local_period_Q(shifted) - Cplx(zeta1 / q)) <= 1e-9;
      }

      const auto dec = newform_decomposition(M);
      ok &= std::abs(dec.sum_squares - 1.0) <= 1e-9;
      for (const Cplx& a : dec.a_t)
        ok &= std::abs(std::abs(a) - std::sqrt(zeta1 / q)) <= 1e-9;
      ok &= dec.max_cross <= 1e-9 && dec.residual <= 1e-9;

      ok &= M.dim() == p * p + p;  // p^2 (1 + 1/p)
      if (!ok && note.empty()) note = "p=" + std::to_string(p);
    }
    return ok;
  });

  criterion(2, "commutator closure", [](std::string& note) {
    bool ok = true;
    for (long p : {3L, 5L}) {
      const auto rep = commutator_closure(p, 1);
      ok &= rep.equals_target && rep.containment_ok;
    }
    (void)note;
    return ok;
  });

  criterion(3, "volume bound + benchmark", [](std::string& note) {
    bool ok = true;
    const long p = 3;
    const MultCharacter chi = make_character(p, 2, 1);
    const TorusSpec split = make_torus(TorusKind::SplitConjugate,
                                       compute_b_chi(chi, 1), p);
    const TorusSpec nonsplit = make_torus(TorusKind::Nonsplit, 2, p);
    for (const TorusSpec& T : {split, nonsplit}) {
      const auto rep = verify_volume_bound(p, 1, T);
      ok &= rep.scanned == gl2_order(p, 2);
      ok &= rep.max_ratio <= double(p);
      if (!ok && note.empty())
        note = "C=" + std::to_string(rep.max_ratio);
    }
    for (long pp : {3L, 5L}) {
      const InducedModel M(make_character(pp, 2, 1));
      VecC vml = M.ml_vector();
      vml /= M.norm(vml);
      const VecC shifted = M.apply(M.shift_ct(1), vml);
      const double I = M.dim() * std::real(M.local_period_Q(shifted));
      ok &= I >= double(pp) / 2.0 && I <= 2.0 * double(pp);
    }
    return ok;
  });

  criterion(4, "orbit transform quadrature", [](std::string& note) {
    bool ok = true;
    for (double T : {5.0, 10.0, 20.0})
      for (double t : {0.1, 0.2}) {
        const auto r = orbit_fourier(T, Vec3(t, 0, 0));
        const double exact = orbit_fourier_axis(T, t);
        ok &= r.converged &&
              std::abs(r.value - exact) <= 1e-4 * std::abs(exact);
      }
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-0.4, 0.4);
    const Vec3 x0(0.22, 0, 0);
    const double base = orbit_fourier(8.0, x0).value;
    for (int i = 0; i < 20; i++) {
      const Mat2 g = exp_elem(Vec3(u(rng), u(rng), u(rng)));
      const auto r = orbit_fourier(8.0, adjoint(g, x0));
      ok &= r.converged &&
            std::abs(r.value - base) <= 1e-3 * std::max(1.0, std::abs(base));
    }
    (void)note;
    return ok;
  });

  criterion(5, "localisation slopes", [](std::string& note) {
    std::vector<double> Ts{100, 400, 1600, 6400};
    std::vector<double> sharpA, sharpC, smoothB;
    for (double T : Ts) {
      const WeightModule M = WeightModule::standard(T);
      sharpA.push_back(M.localisation_defect(M.sharp_lift(), "A").defect);
      sharpC.push_back(M.localisation_defect(M.sharp_lift(), "C").defect);
      smoothB.push_back(M.localisation_defect(M.smooth_lift(), "B").defect);
    }
    const double sa = fit_slope(Ts, sharpA), sc = fit_slope(Ts, sharpC),
                 sb = fit_slope(Ts, smoothB);
    char buf[96];
    std::snprintf(buf, sizeof buf, "slopes %.3f/%.3f/%.3f", sa, sc, sb);
    note = buf;
    return std::abs(sa - 0.75) <= 0.1 && std::abs(sc - 0.5) <= 0.1 &&
           std::abs(sb - 0.5) <= 0.1;
  });

  criterion(6, "operator calculus", [](std::string& note) {
    bool ok = true;
    // Self-adjointness of a real symbol.
    {
      const double T = 72.0, h = 1.0 / T;
      const WeightModule M = WeightModule::standard(T);
      const GroupAction act(M);
      const auto res = op_quantize(coin_symbol(h), h, act);
      ok &= (res.op - res.op.adjoint()).norm() <= 1e-6 * res.op.norm();
    }
    // Relative character error decays like a positive power of h.
    std::vector<double> hs, errs;
    for (double T : {36.0, 72.0, 144.0, 288.0}) {
      const double h = 1.0 / T;
      const WeightModule M = WeightModule::standard(T);
      const GroupAction act(M);
      const SymbolSpec sym = coin_symbol(h);
      const auto res = op_quantize(sym, h, act);
      const auto rc = relative_character_check(res.op, sym, h, 0, M);
      ok &= rc.error <= std::pow(h, 1 - 2 * kDeltaP);
      hs.push_back(h);
      errs.push_back(std::max(rc.error, 1e-14));
    }
    const double alpha = fit_slope(hs, errs);
    char buf[64];
    std::snprintf(buf, sizeof buf, "h-exponent %.3f", alpha);
    note = buf;
    ok &= alpha >= (1 - 2 * kDeltaP) - 0.05;
    // Disjoint-support vanishing.
    {
      const double T = 72.0, h = 1.0 / T;
      const WeightModule M = WeightModule::standard(T);
      const GroupAction act(M);
      const SymbolSpec far{1.0, Vec3(0, 0, 0.5), coin_symbol(h).widths};
      const auto res = op_quantize(far, h, act);
      const auto rc = relative_character_check(res.op, far, h, 0, M);
      ok &= std::abs(rc.lhs) <= 1e-3 && std::abs(rc.rhs) <= 1e-3;
    }
    return ok;
  });

  criterion(7, "counting corollary corpus", [](std::string& note) {
    using namespace supnorm::counting;
    std::mt19937 rng(101);
    const auto random_gp = [&rng]() {
      IMat g{1, 0, 0, 1};
      const IMat S{0, -1, 1, 0};
      for (int s = 0; s < 6; s++) {
        const int64_t k = int64_t(rng() % 5) - 2;
        g = g * IMat{1, k, 0, 1} * S;
      }
      return g;
    };
    std::vector<IMat> gps;
    for (int i = 0; i < 10; i++) gps.push_back(random_gp());
    bool ok = true;
    long instances = 0;
    for (double y : {2.0, 5.0, 20.0})
      for (const IMat& gp : gps)
        for (int64_t X : {5, 7})
          for (int l : {0, 1}) {
            const auto rep =
                verify_counting_corollary({0, y}, gp, 0.05, 3, l, X, 8.0);
            ok &= rep.pass;
            instances++;
            if (!rep.pass && note.empty())
              note = "y=" + std::to_string(int(y)) + " X=" + std::to_string(X) +
                     " l=" + std::to_string(l);
          }
    ok &= instances == 120;
    return ok;
  });

  criterion(8, "amplifier", [](std::string& note) {
    using namespace supnorm::amp;
    const std::vector<int64_t> P{11, 13, 17};
    const std::vector<Cplx> ones(P.size(), 1.0);
    const HeckeVector A = build_amplifier(P, ones, ones);
    bool ok = std::abs(A.at(1) - Cplx(6.0)) < 1e-12;
    for (size_t i = 0; i < P.size(); i++)
      for (size_t j = 0; j < P.size(); j++) {
        const double want = i == j ? 2.0 : 1.0;
        ok &= std::abs(std::abs(A.at(P[i] * P[j])) - want) < 1e-12;
        ok &= std::abs(std::abs(A.at(P[i] * P[i] * P[j] * P[j])) - 1.0) < 1e-12;
      }
    const auto rep = amplifier_lower_bound(P);
    ok &= rep.grid_inf >= 0.74 && rep.min_form_ratio >= 1.0 / 8;
    char buf[64];
    std::snprintf(buf, sizeof buf, "grid-inf %.3f, form %.3f", rep.grid_inf,
                  rep.min_form_ratio);
    note = buf;
    return ok;
  });

  criterion(9, "exponent ledger", [](std::string& note) {
    using namespace supnorm::amp;
    using supnorm::rat::Rat;
    const auto rep = derive_theorem_exponents();
    bool ok = rep.naive_X.at("T") == Rat(1, 12) && rep.naive_T == Rat(11, 12) &&
              rep.naive_T_y == Rat(1, 2);
    ok &= rep.amp_X.at("T") == Rat(1, 6) && rep.amp_X.at("P") == Rat(1, 6) &&
          rep.amp_T == Rat(5, 6) && rep.amp_N == Rat(11, 24);
    ok &= rep.impr_X.at("T") == Rat(1, 6) && rep.impr_X.at("P") == Rat(1, 3) &&
          rep.impr_T == Rat(5, 6) && rep.impr_N0 == Rat(5, 6);
    ok &= rep.cross_T == Rat(1, 6) && rep.cross_N == Rat(1, 12);
    ok &= rep.final_exponent == Rat(5, 24);
    note = "final " + rep.final_exponent.str();
    return ok;
  });

  criterion(10, "appendix invariants + Bessel", [](std::string& note) {
    using namespace supnorm::gtl;
    using namespace supnorm::bessel;
    bool ok = true;
    // Table rows.
    const std::vector<std::pair<std::array<int64_t, 4>, Gtl>> rows = {
        {{1, 8, 1, 9}, {-2, 0}},
        {{1, 2, 1, 3}, {-2, 1}},
        {{1, 0, 3, 1}, {-4, 3}},
        {{1, 0, 27, 1}, {-6, 4}},
    };
    for (const auto& [gp, expect] : rows) {
      const Gtl f = gtlv_invariants(gp, 3, 1);
      ok &= f == expect && f == iwasawa_oracle(scale_first_column(gp, 9), 3, 1);
      ok &= -2 + f.t == -s_l(f.l, 1);
    }
    // Exhaustive residue scan mod 27.
    long classes = 0;
    for (int64_t t = 0; t < 27 && ok; t++)
      for (int64_t u = 0; u < 27; u++)
        for (int64_t v = 0; v < 27; v++)
          for (int64_t w = 0; w < 27; w++) {
            if (((t * w - u * v) % 27 + 27) % 27 != 1) continue;
            classes++;
            const auto gp = sl2_lift(t, u, v, w, 27);
            const Gtl f = gtlv_invariants(gp, 3, 1);
            ok &= f == iwasawa_oracle(scale_first_column(gp, 9), 3, 1);
            ok &= -2 + f.t == -s_l(f.l, 1);
          }
    ok &= classes == 17496;
    // Bessel second moment at the frozen constant.
    double worst = 0;
    for (double T : {20.0, 30.0, 40.0}) {
      const auto rep = bessel_moment_bound(T, long(T), 1.0, 2.0 * M_PI);
      worst = std::max(worst, rep.ratio);
      ok &= rep.ratio <= 1.0;
    }
    char buf[48];
    std::snprintf(buf, sizeof buf, "moment ratio %.3f", worst);
    note = buf;
    return ok;
  });

  std::printf("%s (%d criteria failed)\n", failures == 0 ? "ALL PASS" : "FAILURES",
              failures);
  return failures;
}
