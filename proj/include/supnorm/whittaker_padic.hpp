#pragma once

// Whittaker functionals on the compact induced model, restricted to the
// diagonal torus. For y = u p^t the defining integrals stabilise at level
// p^m, so each value is a finite character sum:
//
//   I(f, y) = I_0 + sum_{n >= 1} I_n,
//   I_0 = p^{-m} sum_{x mod p^m} f((0,1;-1,-x)) e(-u x p^t)     for t >= -m,
//   I_n = p^{-m} sum_{units u0}  chi(u0)^{-2} f((1,0; p^n/u0, 1))
//                                e(-u u0 p^{t-n})               for n <= m+t,
//
// and both pieces vanish outside the stated ranges (the refinement average
// over deeper digits is a full exponential sum). The torus Whittaker value is
// W(a(y)) = chi(u)^{-1} p^{-t/2} I, with chi extended trivially on p, and the
// Kirillov pairing is the sum over valuation shells with unit classes mod p^m
// weighted so that vol(O^x) = 1.

#include <functional>

#include "supnorm/induced.hpp"

namespace supnorm::padic {

using ModelFn = std::function<Cplx(const PadicMatrix&)>;

// Standalone evaluation of the spherical-type vector: supported where the
// bottom row is a unit pair, value chi(det / (c d)).
inline Cplx new_value(const MultCharacter& chi, const PadicMatrix& g) {
  if (g.c % chi.p == 0 || g.d % chi.p == 0) return 0.0;
  return chi(mod_reduce(g.det * inv_mod(mod_reduce(g.c * g.d, chi.pm), chi.pm),
                        chi.pm))
      .eval();
}

// Standalone evaluation of the lift: supported on {v(c) >= r, a and d units},
// with the congruence factor read off the closed form of b^{-1} g.
inline Cplx ml_value(const MultCharacter& chi, long b_chi,
                     const PadicMatrix& g) {
  const int r = chi.m / 2;
  if (val_p(g.c, chi.p, chi.m) < r || g.a % chi.p == 0 || g.d % chi.p == 0)
    return 0.0;
  const long pm = chi.pm;
  // k1 = b^{-1} g has (k1 - 1)_{11} - (k1 - 1)_{22} = -b c / det(b).
  const long diag =
      mod_reduce(-mod_reduce(g.b * g.c, pm) * inv_mod(mod_reduce(g.a * g.d, pm), pm),
                 pm);
  const Cplx theta =
      std::polar(1.0, 2 * M_PI * double(mod_reduce(b_chi * diag, pm)) / double(pm));
  return chi(mod_reduce(g.a * inv_mod(g.d, pm), pm)).eval() * theta;
}

inline ModelFn translate(ModelFn f, PadicMatrix gamma) {
  return [f = std::move(f), gamma](const PadicMatrix& x) { return f(x * gamma); };
}

// I(f, u p^t) as a finite sum.
inline Cplx whittaker_I(const MultCharacter& chi, const ModelFn& f, long u_y,
                        int t_y) {
  const long p = chi.p, pm = chi.pm;
  const int m = chi.m;
  if (t_y < -m) return 0.0;
  Cplx total = 0;
  for (long x0 = 0; x0 < pm; x0++) {
    Cplx ph = 1.0;
    if (t_y < 0) {
      const long mod = ipow(p, -t_y);
      ph = std::polar(1.0,
                      2 * M_PI * double(mod_reduce(-u_y * x0, mod)) / double(mod));
    }
    total += f(PadicMatrix(0, 1, -1, mod_reduce(-x0, pm), p, m)) * ph;
  }
  for (int n = 1; n <= m + t_y; n++) {
    const long pn = (n >= m) ? 0 : ipow(p, n);
    Cplx sub = 0;
    for (long u0 = 1; u0 < pm; u0++) {
      if (u0 % p == 0) continue;
      const long c = (pn == 0) ? 0 : mod_reduce(pn * inv_mod(u0, pm), pm);
      Cplx ph = 1.0;
      if (n > t_y) {
        const long mod = ipow(p, n - t_y);
        ph = std::polar(
            1.0, 2 * M_PI * double(mod_reduce(-u_y * u0, mod)) / double(mod));
      }
      const Cplx chival = chi(u0).eval();
      sub += std::conj(chival * chival) * f(PadicMatrix(1, 0, c, 1, p, m)) * ph;
    }
    total += sub;
  }
  return total / double(pm);
}

// W(a(u p^t)) with the central character extended trivially on p.
inline Cplx whittaker_W(const MultCharacter& chi, const ModelFn& f, long u_y,
                        int t_y) {
  const Cplx I = whittaker_I(chi, f, u_y, t_y);
  return std::conj(chi(u_y).eval()) * std::pow(double(chi.p), -t_y / 2.0) * I;
}

// Support scan of I over valuation shells [tmin, tmax]: returns, per shell,
// the list of unit classes mod p^m with a nonvanishing value, plus the spread
// of |I| over the whole support.
struct KirillovSupport {
  std::map<int, std::vector<long>> shell_units;
  double min_abs = 0, max_abs = 0;
};

inline KirillovSupport kirillov_support(const MultCharacter& chi,
                                        const ModelFn& f, int tmin, int tmax) {
  KirillovSupport sup;
  sup.min_abs = 1e300;
  for (int t = tmin; t <= tmax; t++)
    for (long u = 1; u < chi.pm; u++) {
      if (u % chi.p == 0) continue;
      const double a = std::abs(whittaker_I(chi, f, u, t));
      if (a > 1e-10) {
        sup.shell_units[t].push_back(u);
        sup.min_abs = std::min(sup.min_abs, a);
        sup.max_abs = std::max(sup.max_abs, a);
      }
    }
  if (sup.shell_units.empty()) sup.min_abs = 0;
  return sup;
}

// <W_f, W_h> = sum_t sum_{units mod p^m} W_f conj(W_h) / phi(p^m), truncated
// at valuation tmax; the shell masses decay geometrically in t.
inline Cplx kirillov_inner(const MultCharacter& chi, const ModelFn& f,
                           const ModelFn& h, int tmax = 20) {
  const long phi = chi.pm / chi.p * (chi.p - 1);
  Cplx s = 0;
  for (int t = -chi.m; t <= tmax; t++)
    for (long u = 1; u < chi.pm; u++) {
      if (u % chi.p == 0) continue;
      s += whittaker_W(chi, f, u, t) * std::conj(whittaker_W(chi, h, u, t));
    }
  return s / double(phi);
}

}  // namespace supnorm::padic
