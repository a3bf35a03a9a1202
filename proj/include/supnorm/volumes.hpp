#pragma once

// Torus-thickened volume counts for the congruence subgroup H(2n), the
// distance d_{H(2n)}, the quadratic-congruence counting lemma, the volume
// bound V_gamma(U) <= C vol(H(2n)) q max min(q^{-n/2} d^{-1/2}, 1), and the
// matrix-coefficient exponent table it implies. All volumes are reported
// relative to vol(H(2n)), normalised so the identity has volume 1.

#include <map>
#include <random>
#include <unordered_set>

#include "supnorm/induced.hpp"

namespace supnorm::padic {

enum class TorusKind { SplitConjugate, Nonsplit };

// Elements ((a, u1 b), (u2 b, a)) with unit determinant; u1 u2 = 1 for the
// conjugated split torus (u1 = b_chi), u1 = 1, u2 = D for the nonsplit one.
struct TorusSpec {
  TorusKind kind;
  long u1, u2;
};

inline TorusSpec make_torus(TorusKind kind, long param, long pj) {
  if (kind == TorusKind::SplitConjugate)
    return {kind, mod_reduce(param, pj), inv_mod(param, pj)};
  return {kind, 1, mod_reduce(param, pj)};
}

inline std::vector<PadicMatrix> torus_elements(const TorusSpec& T, long p,
                                               int j) {
  const long pj = ipow(p, j);
  std::vector<PadicMatrix> out;
  for (long a = 0; a < pj; a++)
    for (long b = 0; b < pj; b++) {
      PadicMatrix t(a, mod_reduce(T.u1 * b, pj), mod_reduce(T.u2 * b, pj), a, p,
                    j);
      if (t.invertible()) out.push_back(t);
    }
  return out;
}

// Codes of D(O/p^j) T(O/p^j).
inline std::unordered_set<long> dt_set(const TorusSpec& T, long p, int j) {
  const long pj = ipow(p, j);
  std::unordered_set<long> out;
  const auto tor = torus_elements(T, p, j);
  for (long d1 = 0; d1 < pj; d1++) {
    if (d1 % p == 0) continue;
    for (long d2 = 0; d2 < pj; d2++) {
      if (d2 % p == 0) continue;
      for (const auto& t : tor)
        out.insert(PadicMatrix(mod_reduce(d1 * t.a, pj), mod_reduce(d1 * t.b, pj),
                               mod_reduce(d2 * t.c, pj), mod_reduce(d2 * t.d, pj),
                               p, j)
                       .code());
    }
  }
  return out;
}

// d_{H(2n)}(g) for g in K0 mod p^{2n}: q^{-l} with g in H K(l) \ H K(l+1).
// Returns l, with l = -1 encoding membership in H (distance 0).
struct DistanceValue {
  int l = 0;
  bool member = false;
  double value(double q) const { return member ? 0.0 : std::pow(q, -l); }
};

inline DistanceValue distance_dH(const PadicMatrix& g, int n) {
  const int twon = 2 * n;
  if (g.k != twon) throw std::domain_error("distance_dH: need g mod p^{2n}");
  if (g.a % g.p != 0 && g.d % g.p != 0) {
    const int l =
        std::min(val_p(g.b, g.p, twon), val_p(g.c, g.p, twon));
    if (l >= twon) return {.l = 0, .member = true};
    return {.l = l, .member = false};
  }
  // Non-unit diagonal: the determinant forces unit anti-diagonal, so g is not
  // in any H K(1) coset.
  return {.l = 0, .member = false};
}

// #{alpha unit mod p^n : gamma diag(alpha,1) in D T} / phi(p^n). Equals
// V_gamma(U) / vol(H(2n)) with the identity normalised to 1.
inline double volume_count(const PadicMatrix& gamma,
                           const std::unordered_set<long>& dt, long p, int n) {
  const long pn = ipow(p, n);
  if (gamma.k != n) throw std::domain_error("volume_count: need gamma mod p^n");
  long count = 0;
  for (long alpha = 0; alpha < pn; alpha++) {
    if (alpha % p == 0) continue;
    const PadicMatrix g(mod_reduce(gamma.a * alpha, pn), gamma.b,
                        mod_reduce(gamma.c * alpha, pn), gamma.d, p, n);
    if (dt.count(g.code())) count++;
  }
  return double(count) / double(pn / p * (p - 1));
}

// Solutions alpha = 1 + z, z in pZ/p^n of c2 alpha^2 = c0 mod p^n.
inline long quadratic_count(long c2, long c0, long p, int n) {
  const long pn = ipow(p, n);
  long count = 0;
  for (long z = 0; z < pn; z += p) {
    const long alpha = mod_reduce(1 + z, pn);
    if (mod_reduce(c2 * alpha % pn * alpha - c0, pn) == 0) count++;
  }
  return count;
}

struct VolumeBoundReport {
  long scanned = 0;
  double max_ratio = 0;        // observed constant C
  double max_w_gap = 0;        // |V_gamma - V_{w gamma}|
  std::map<int, double> max_by_leff;  // binned by the effective distance level
  double trivial_shell = -1;   // V at gamma in H(2n)K(n) (should be 1)
};

// Exhaustive (or sampled) verification of the volume bound at level n.
inline VolumeBoundReport verify_volume_bound(long p, int n, const TorusSpec& T,
                                             long samples = 0,
                                             unsigned seed = 23) {
  const int twon = 2 * n;
  const long p2n = ipow(p, twon);
  const auto dt = dt_set(T, p, n);
  const double q = double(p);
  const PadicMatrix w(0, mod_reduce(-1, p2n), 1, 0, p, twon);

  VolumeBoundReport rep;
  std::mt19937 rng(seed);
  const auto handle = [&](const PadicMatrix& g) {
    const PadicMatrix wg = w * g;
    const DistanceValue d1 = distance_dH(g, n), d2 = distance_dH(wg, n);
    // bound factor: q * max over {g, wg} of min(q^{-n/2} d^{-1/2}, 1).
    const auto factor = [&](const DistanceValue& d) {
      return d.member ? 1.0 : std::min(std::pow(q, (d.l - n) / 2.0), 1.0);
    };
    const double bound = q * std::max(factor(d1), factor(d2));
    const double v = volume_count(g.reduced(n), dt, p, n);
    const double vw = volume_count(wg.reduced(n), dt, p, n);
    rep.scanned++;
    rep.max_ratio = std::max(rep.max_ratio, v / bound);
    rep.max_w_gap = std::max(rep.max_w_gap, std::abs(v - vw));
    const int leff =
        (d1.member || d2.member) ? twon + 1 : std::max(d1.l, d2.l);
    auto& slot = rep.max_by_leff[leff];
    slot = std::max(slot, v);
    if ((d1.member || std::min(d1.l, twon) >= n) && rep.trivial_shell < 0)
      rep.trivial_shell = v;
  };

  if (samples == 0) {
    for (long a = 0; a < p2n; a++)
      for (long b = 0; b < p2n; b++)
        for (long c = 0; c < p2n; c++)
          for (long d = 0; d < p2n; d++) {
            PadicMatrix g(a, b, c, d, p, twon);
            if (g.invertible()) handle(g);
          }
  } else {
    long done = 0;
    while (done < samples) {
      PadicMatrix g(long(rng() % p2n), long(rng() % p2n), long(rng() % p2n),
                    long(rng() % p2n), p, twon);
      if (!g.invertible()) continue;
      handle(g);
      done++;
    }
  }
  return rep;
}

// Relative volume of a subset of GL2(Z/p^j), used for the index computations
// vol(H(2n)) ~ q^{-4n}, vol(U) ~ q^{-2n}, vol(U cap H(2n)) ~ q^{-5n}.
struct VolumeIndices {
  double vol_h, vol_u, vol_u_cap_h;
};

inline VolumeIndices volume_indices(long p, int n, const TorusSpec& T) {
  const int twon = 2 * n;
  const long p2n = ipow(p, twon);
  const double total = double(gl2_order(p, twon));
  // H(2n) mod p^{2n} is the unit diagonal.
  const double phi = double(p2n / p * (p - 1));
  // U = T(O) K(n) mod p^{2n}.
  std::unordered_set<long> u_codes;
  long diag_in_u = 0;
  const auto tor = torus_elements(T, p, twon);
  const long pn = ipow(p, n), q = p2n / pn;
  for (const auto& t : tor)
    for (long a = 0; a < q; a++)
      for (long b = 0; b < q; b++)
        for (long c = 0; c < q; c++)
          for (long d = 0; d < q; d++) {
            const PadicMatrix k(mod_reduce(1 + pn * a, p2n), pn * b, pn * c,
                                mod_reduce(1 + pn * d, p2n), p, twon);
            const PadicMatrix g = t * k;
            if (u_codes.insert(g.code()).second &&
                g.b == 0 && g.c == 0)
              diag_in_u++;
          }
  return {phi * phi / total, double(u_codes.size()) / total,
          double(diag_in_u) / total};
}

// Matrix-coefficient exponents of the generalised new vector, binned by the
// distance level l (with l = 2n+1 standing for membership in H(2n)).
struct CoeffExponentRow {
  int l;
  long count;
  double max_coeff;
  double bound_vol;    // q * max_{gamma'} min(q^{(l-n)/2}, 1), worst in bin
  double bound_husa;   // q^{l/2 - n} comparison (finite l >= 1 only)
};

inline std::vector<CoeffExponentRow> coeff_exponent_table(
    const InducedModel& M) {
  const int n = M.r;  // m = 2r = 2n: distances live mod p^m
  const double q = double(M.p);
  const PadicMatrix w(0, mod_reduce(-1, M.pm), 1, 0, M.p, M.m);
  VecC v = M.new_vector();
  v /= M.norm(v);
  std::map<int, CoeffExponentRow> rows;
  for (const auto& g : M.group().elems) {
    const DistanceValue d1 = distance_dH(g, n), d2 = distance_dH(w * g, n);
    const auto factor = [&](const DistanceValue& d) {
      return d.member ? 1.0 : std::min(std::pow(q, (d.l - n) / 2.0), 1.0);
    };
    const double bound = q * std::max(factor(d1), factor(d2));
    const int key = d1.member ? 2 * n + 1 : d1.l;
    auto [it, fresh] = rows.try_emplace(
        key, CoeffExponentRow{key, 0, 0.0, 0.0,
                              key >= 1 && key <= 2 * n
                                  ? std::pow(q, key / 2.0 - n)
                                  : 1.0});
    it->second.count++;
    it->second.max_coeff =
        std::max(it->second.max_coeff, std::abs(M.coeff(g, v, v)));
    it->second.bound_vol = std::max(it->second.bound_vol, bound);
  }
  std::vector<CoeffExponentRow> out;
  for (auto& [k, row] : rows) out.push_back(row);
  return out;
}

}  // namespace supnorm::padic
