#pragma once

// Integer-matrix counting in the upper half plane: the point-pair invariant
// u(z,w), exact brute-force counts M / M_op with congruence sieves at p^l,
// Lagrange-Gauss lattice reduction, (primitive) ball counts, the parabolic
// subcount, and the packaged counting corollary with frozen calibration
// constants.
//
// The enumeration rests on the identity u(gamma.z, z) = |P|^2 / (m y^2) with
// P = -c z^2 + (a-d) z + b for det(gamma) = m > 0, which makes the search in
// (a-d, b) exact for each c; the remaining box |a+d| <= 4 sqrt(m),
// |c y| <= 4 sqrt(m) is a superset of the support for delta' < 1.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace supnorm::counting {

using Cplx = std::complex<double>;

inline double u_invariant(Cplx z, Cplx w) {
  if (z.imag() <= 0 || w.imag() <= 0)
    throw std::domain_error("u_invariant: points must be in the upper half plane");
  return std::norm(z - w) / (z.imag() * w.imag());
}

inline double hyperbolic_distance(Cplx z, Cplx w) {
  return std::acosh(1.0 + u_invariant(z, w) / 2.0);
}

// Integer 2x2 matrix (a b; c d).
struct IMat {
  int64_t a, b, c, d;
  int64_t det() const { return a * d - b * c; }
  IMat operator*(const IMat& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c,
            c * o.b + d * o.d};
  }
  IMat inv_unimodular() const {  // requires det = 1
    return {d, -b, -c, a};
  }
};

struct CountQuery {
  Cplx z;
  IMat gp;          // in SL2(Z)
  double delta_p;   // delta'
  int64_t L = 1;    // sieve modulus p^l
  int64_t m = 1;    // determinant
  bool op = false;  // sieve the diagonal instead of the off-diagonal
};

struct CountDetail {
  long count = 0;
  long parabolic = 0;           // (a+d)^2 = 4m, non-vanishing lower-left
  long parabolic_b_checked = 0; // conjugated upper-right divisible by L
  long candidates = 0;
};

namespace detail {
inline bool is_square(int64_t v, int64_t& root) {
  if (v < 0) return false;
  root = int64_t(std::llround(std::sqrt(double(v))));
  while (root * root > v) root--;
  while ((root + 1) * (root + 1) <= v) root++;
  return root * root == v;
}

// Upper-right entry of xi gamma xi^{-1} where xi gamma xi^{-1} is upper
// triangular for parabolic gamma (trace^2 = 4 det), and a check that such a
// conjugator in SL2(Z) exists.
inline bool parabolic_conjugate_b(const IMat& g, int64_t& b_out) {
  const int64_t s2 = g.a + g.d;
  if (s2 % 2 != 0) return false;
  const int64_t s = s2 / 2;
  // Primitive eigenvector u with gamma u = s u.
  int64_t v1 = g.b, v2 = s - g.a;
  if (v1 == 0 && v2 == 0) {
    v1 = s - g.d;
    v2 = g.c;
  }
  if (v1 == 0 && v2 == 0) {  // central matrix
    b_out = 0;
    return true;
  }
  const int64_t gdiv = std::gcd(std::abs(v1), std::abs(v2));
  v1 /= gdiv;
  v2 /= gdiv;
  // Complete (v1, v2) to xi^{-1} = (v1 p; v2 q) with det 1 via Bezout.
  int64_t p = 0, q = 0;
  {
    int64_t r0 = v1, r1 = v2, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
    while (r1 != 0) {
      const int64_t quo = r0 / r1;
      const int64_t r2 = r0 - quo * r1, s2 = s0 - quo * s1, t2 = t0 - quo * t1;
      r0 = r1; r1 = r2;
      s0 = s1; s1 = s2;
      t0 = t1; t1 = t2;
    }
    // r0 = +-gcd = +-1 and v1 s0 + v2 t0 = r0.
    p = -t0 * r0;
    q = s0 * r0;
  }
  const IMat xi_inv{v1, p, v2, q};
  if (xi_inv.det() != 1) return false;
  const IMat conj = xi_inv.inv_unimodular() * g * xi_inv;
  if (conj.c != 0 || conj.a != conj.d) return false;
  b_out = conj.b;
  return true;
}
}  // namespace detail

inline CountDetail count_M_detail(const CountQuery& Q) {
  const double x = Q.z.real(), y = Q.z.imag();
  if (y <= 0 || Q.m <= 0 || Q.gp.det() != 1)
    throw std::domain_error("count_M: need Im z > 0, m > 0, det g_p = 1");
  const double sm = std::sqrt(double(Q.m));
  const double R2 = Q.delta_p * double(Q.m) * y * y;  // |P|^2 <= R2
  const Cplx z2 = Q.z * Q.z;
  const int64_t cmax = int64_t(std::floor(4.0 * sm / y));
  const IMat gi = Q.gp.inv_unimodular();

  // Candidate budget guard.
  {
    const double per_c = 2.0 * std::sqrt(R2) / y + 1.0;
    const double total = (2.0 * cmax + 1) * per_c * (2.0 * std::sqrt(R2) + 1.0);
    if (total > 1e9) throw std::overflow_error("count_M: search box too large");
  }

  CountDetail res;
  for (int64_t c = -cmax; c <= cmax; c++) {
    // Im P = y (A - 2 x c) - fixed by A; |Im P| <= sqrt(R2).
    const double A_center = 2.0 * x * double(c);
    const double A_half = std::sqrt(R2) / y;
    const int64_t A_lo = int64_t(std::ceil(A_center - A_half - 1e-9));
    const int64_t A_hi = int64_t(std::floor(A_center + A_half + 1e-9));
    for (int64_t A = A_lo; A <= A_hi; A++) {
      const Cplx W = -z2 * double(c) + Q.z * double(A);
      const double s2 = R2 - W.imag() * W.imag();
      if (s2 < 0) continue;
      const double s = std::sqrt(s2);
      const int64_t b_lo = int64_t(std::ceil(-W.real() - s - 1e-9));
      const int64_t b_hi = int64_t(std::floor(-W.real() + s + 1e-9));
      for (int64_t b = b_lo; b <= b_hi; b++) {
        res.candidates++;
        // Exact membership: |P|^2 <= delta' m y^2.
        const Cplx P = W + double(b);
        if (std::norm(P) > R2 * (1.0 + 1e-12)) continue;
        // (a+d)^2 = A^2 + 4(m + b c) must be a perfect square.
        const int64_t disc = A * A + 4 * (Q.m + b * c);
        int64_t t;
        if (!detail::is_square(disc, t)) continue;
        if ((t - A) % 2 != 0) continue;
        for (int sgn = 0; sgn < (t == 0 ? 1 : 2); sgn++) {
          const int64_t tr = sgn == 0 ? t : -t;
          const IMat g{(tr + A) / 2, b, c, (tr - A) / 2};
          if (g.det() != Q.m) continue;
          const IMat conj = gi * g * Q.gp;
          const bool pass = Q.op ? (conj.a % Q.L == 0 && conj.d % Q.L == 0)
                                 : (conj.b % Q.L == 0 && conj.c % Q.L == 0);
          if (!pass) continue;
          res.count++;
          if (tr * tr == 4 * Q.m && c != 0) {
            res.parabolic++;
            int64_t bpar;
            if (detail::parabolic_conjugate_b(g, bpar) && bpar % Q.L == 0)
              res.parabolic_b_checked++;
          }
        }
      }
    }
  }
  return res;
}

inline long count_M(const CountQuery& Q) { return count_M_detail(Q).count; }

// --- lattice utilities ---

struct ReducedBasis {
  Cplx v1, v2;      // |v1| = lambda_1 <= |v2|
  double lambda1;
  double covolume;
};

inline ReducedBasis gauss_reduce(Cplx b1, Cplx b2) {
  if (std::abs(b1.real() * b2.imag() - b1.imag() * b2.real()) < 1e-14)
    throw std::domain_error("gauss_reduce: degenerate basis");
  if (std::norm(b1) > std::norm(b2)) std::swap(b1, b2);
  while (true) {
    const double mu = std::round((b2.real() * b1.real() + b2.imag() * b1.imag()) /
                                 std::norm(b1));
    b2 -= mu * b1;
    if (std::norm(b2) >= std::norm(b1)) break;
    std::swap(b1, b2);
  }
  return {b1, b2, std::abs(b1),
          std::abs(b1.real() * b2.imag() - b1.imag() * b2.real())};
}

inline long ball_count(Cplx b1, Cplx b2, Cplx center, double R, bool primitive) {
  const ReducedBasis rb = gauss_reduce(b1, b2);
  if (R > 1e6 * rb.lambda1)
    throw std::domain_error("ball_count: radius too large for basis");
  // Height of v2 over the v1 axis.
  const double h = rb.covolume / rb.lambda1;
  const long k2max = long(std::floor((R + std::abs(center)) / h)) + 1;
  long count = 0;
  for (long k2 = -k2max; k2 <= k2max; k2++) {
    // Solve |k1 v1 + k2 v2 - center| <= R along the v1 direction.
    const Cplx base = double(k2) * rb.v2 - center;
    const double proj = (base.real() * rb.v1.real() + base.imag() * rb.v1.imag()) /
                        std::norm(rb.v1);
    const double perp2 = std::norm(base) - proj * proj * std::norm(rb.v1);
    const double rad2 = R * R - perp2;
    if (rad2 < 0) continue;
    const double half = std::sqrt(rad2) / rb.lambda1;
    for (long k1 = long(std::ceil(-proj - half - 1e-9));
         k1 <= long(std::floor(-proj + half + 1e-9)); k1++) {
      const Cplx pt = double(k1) * rb.v1 + double(k2) * rb.v2;
      if (std::norm(pt - center) > R * R * (1 + 1e-12)) continue;
      if (primitive) {
        if (k1 == 0 && k2 == 0) continue;
        if (std::gcd(std::labs(k1), std::labs(k2)) != 1) continue;
      }
      count++;
    }
  }
  return count;
}

// --- the packaged corollary ---

inline std::vector<int64_t> primes_in(int64_t lo, int64_t hi) {
  std::vector<int64_t> out;
  for (int64_t n = std::max<int64_t>(2, lo); n <= hi; n++) {
    bool ok = true;
    for (int64_t d = 2; d * d <= n; d++)
      if (n % d == 0) {
        ok = false;
        break;
      }
    if (ok) out.push_back(n);
  }
  return out;
}

struct CorollaryReport {
  double lhs = 0;            // sum over m of m^{-1/2} M
  double rhs = 0;            // C (X^{1+e} + X^{2+e} sqrt(d') y / p^l + X^{4+e} d'/p^l)
  double m1_lhs = 0, m1_rhs = 0;
  double is_lhs = 0, is_rhs = 0;  // Iwaniec-Sarnak shape comparison
  long parabolic_total = 0, parabolic_b_ok = 0;
  bool pass = false;
};

inline CorollaryReport verify_counting_corollary(Cplx z, const IMat& gp,
                                                 double delta_p, int64_t p,
                                                 int l, int64_t X, double C,
                                                 double eps = 0.1) {
  if (z.imag() < 2.0) throw std::domain_error("corollary: needs y >= 2");
  const int64_t L = int64_t(std::llround(std::pow(double(p), l)));
  const auto P = primes_in(X, 2 * X);
  std::vector<int64_t> ms;
  for (size_t i = 0; i < P.size(); i++)
    for (size_t j = i; j < P.size(); j++) {
      ms.push_back(P[i] * P[j]);
      ms.push_back(P[i] * P[j] * P[i] * P[j]);
    }
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());

  CorollaryReport rep;
  for (int64_t m : ms) {
    const auto det = count_M_detail({z, gp, delta_p, L, m, false});
    rep.lhs += det.count / std::sqrt(double(m));
    rep.parabolic_total += det.parabolic;
    rep.parabolic_b_ok += det.parabolic_b_checked;
  }
  const double y = z.imag(), Xd = double(X);
  rep.rhs = C * (std::pow(Xd, 1 + eps) +
                 std::pow(Xd, 2 + eps) * std::sqrt(delta_p) * y / double(L) +
                 std::pow(Xd, 4 + eps) * delta_p / double(L));
  rep.m1_lhs = double(count_M({z, gp, delta_p, L, 1, false}));
  rep.m1_rhs = C * (1.0 + std::sqrt(delta_p) * y / double(L));
  rep.is_lhs = rep.lhs;
  rep.is_rhs = C * std::pow(Xd, eps) *
               (Xd + std::pow(Xd, 4.0) * std::pow(delta_p, 0.25) +
                Xd * Xd * std::sqrt(delta_p) * y);
  rep.pass = rep.lhs <= rep.rhs && rep.m1_lhs <= rep.m1_rhs &&
             rep.is_lhs <= rep.is_rhs &&
             rep.parabolic_b_ok == rep.parabolic_total;
  return rep;
}

}  // namespace supnorm::counting
