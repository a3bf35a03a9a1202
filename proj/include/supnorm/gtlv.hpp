#pragma once

// Exact (t, l) invariants of g' = g_p a(p^{2n}) for g_p in SL2(Z): the
// case formulas in the bottom-row valuations, an independent oracle through
// the explicit p-adic Iwasawa decomposition, the step profile s_l, and
// integer lifts of residue classes used for exhaustive checks.

#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace supnorm::gtl {

constexpr int kInfVal = 1 << 20;

inline int val_p_int(int64_t x, int64_t p) {
  if (x == 0) return kInfVal;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    v++;
  }
  return v;
}

struct Gtl {
  int t, l;
  bool operator==(const Gtl&) const = default;
};

// Case formulas in terms of the bottom row (v, w) of g_p.
inline Gtl gtlv_invariants(const std::array<int64_t, 4>& gp, int64_t p, int n) {
  const int64_t t0 = gp[0], u0 = gp[1], v0 = gp[2], w0 = gp[3];
  if (t0 * w0 - u0 * v0 != 1)
    throw std::domain_error("gtlv_invariants: need det g_p = 1");
  const int vv = val_p_int(v0, p), vw = val_p_int(w0, p);
  if (vw == 0) {
    const int s = std::min(vv, 2 * n);
    return {-2 * n - 2 * s, std::min(2 * n + vv, 4 * n)};
  }
  // det 1 forces v_p(v) = 0 here.
  return {-2 * n, std::max(0, 2 * n - vw)};
}

// Oracle: write g = z n(x) a(y) k with k integral and primitive bottom row;
// then l = min(v_p(c), 4n) for the bottom-left entry c of k and
// t = v_p(y) - 2l. Works for any integer matrix with det = (unit) p^D.
inline Gtl iwasawa_oracle(const std::array<int64_t, 4>& g, int64_t p, int n) {
  const int64_t det = g[0] * g[3] - g[1] * g[2];
  if (det == 0) throw std::domain_error("iwasawa_oracle: singular matrix");
  const int D = val_p_int(det, p);
  int64_t rest = std::abs(det);
  while (rest % p == 0) rest /= p;
  if (rest != 1)
    throw std::domain_error("iwasawa_oracle: det not a p-power up to sign");
  const int mu = std::min(val_p_int(g[2], p), val_p_int(g[3], p));
  const int vc = val_p_int(g[2], p) - mu;
  const int l = std::min(vc, 4 * n);
  const int vy = D - 2 * mu;
  return {vy - 2 * l, l};
}

inline int s_l(int l, int n) { return l <= 2 * n ? 4 * n : 2 * l; }

// g' = g_p a(p^{2n}) as an integer matrix.
inline std::array<int64_t, 4> scale_first_column(const std::array<int64_t, 4>& g,
                                                 int64_t q) {
  return {g[0] * q, g[1], g[2] * q, g[3]};
}

// a(q) g: scales the top row.
inline std::array<int64_t, 4> scale_top_row(const std::array<int64_t, 4>& g,
                                            int64_t q) {
  return {g[0] * q, g[1] * q, g[2], g[3]};
}

// Lift a residue class (t, u, v, w) mod M with det = 1 mod M to an integer
// matrix of determinant exactly 1 and matching residues.
inline std::array<int64_t, 4> sl2_lift(int64_t t, int64_t u, int64_t v,
                                       int64_t w, int64_t M) {
  const auto mod = [M](int64_t x) { return ((x % M) + M) % M; };
  t = mod(t); u = mod(u); v = mod(v); w = mod(w);
  if (mod(t * w - u * v) != 1)
    throw std::domain_error("sl2_lift: class not in SL2(Z/M)");
  int64_t vh = v == 0 ? M : v;
  int64_t wh = w;
  while (std::gcd(std::abs(vh), std::abs(wh)) != 1) wh += M;
  // Bezout: T0 wh - U0 vh = 1.
  int64_t T0 = 0, U0 = 0;
  {
    int64_t r0 = wh, r1 = vh, s0 = 1, s1 = 0, q0 = 0, q1 = 1;
    while (r1 != 0) {
      const int64_t q = r0 / r1;
      const int64_t r2 = r0 - q * r1, s2 = s0 - q * s1, q2 = q0 - q * q1;
      r0 = r1; r1 = r2; s0 = s1; s1 = s2; q0 = q1; q1 = q2;
    }
    // r0 = +-1, s0 wh + q0 vh = r0.
    T0 = s0 * r0;
    U0 = -q0 * r0;
  }
  for (int64_t k = 0; k < M; k++) {
    const int64_t T = T0 + k * vh, U = U0 + k * wh;
    if (mod(T) == t && mod(U) == u) {
      const std::array<int64_t, 4> out{T, U, vh, wh};
      if (out[0] * out[3] - out[1] * out[2] != 1)
        throw std::logic_error("sl2_lift: construction failed");
      return out;
    }
  }
  throw std::logic_error("sl2_lift: no lift found");
}

}  // namespace supnorm::gtl
