#pragma once

// Exact arithmetic mod p^k and 2x2 matrix groups over Z/p^k: residue classes,
// subgroup membership predicates, multiplicative characters with values kept
// as exact root-of-unity exponents, and the additive character pairing
// chi(1 + p^r x) = psi(b_chi x / p^r) that pins the dual parameter b_chi.

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace supnorm::padic {

inline long ipow(long b, int e) {
  long r = 1;
  while (e-- > 0) r *= b;
  return r;
}

inline long mod_reduce(long x, long m) {
  const long r = x % m;
  return r < 0 ? r + m : r;
}

// p-adic valuation of the residue class x mod p^cap; x == 0 reports cap.
inline int val_p(long x, long p, int cap) {
  x = mod_reduce(x, ipow(p, cap));
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0) {
    x /= p;
    v++;
  }
  return v;
}

inline long gcd_ext(long a, long b, long& x, long& y) {
  if (b == 0) {
    x = 1;
    y = 0;
    return a;
  }
  long x1, y1;
  const long g = gcd_ext(b, a % b, x1, y1);
  x = y1;
  y = x1 - (a / b) * y1;
  return g;
}

inline long inv_mod(long a, long m) {
  long x, y;
  const long g = gcd_ext(mod_reduce(a, m), m, x, y);
  if (g != 1) throw std::domain_error("inv_mod: not a unit");
  return mod_reduce(x, m);
}

// Residue class in Z/p^k with exact ring operations.
struct ResidueInt {
  long value = 0;
  long p = 3;
  int k = 1;
  long pk = 3;

  ResidueInt() = default;
  ResidueInt(long v, long p_, int k_) : p(p_), k(k_), pk(ipow(p_, k_)) {
    value = mod_reduce(v, pk);
  }

  bool unit() const { return value % p != 0; }
  int valuation() const { return val_p(value, p, k); }

  ResidueInt inverse() const { return {inv_mod(value, pk), p, k}; }

  friend ResidueInt operator+(const ResidueInt& a, const ResidueInt& b) {
    a.check(b);
    return {a.value + b.value, a.p, a.k};
  }
  friend ResidueInt operator-(const ResidueInt& a, const ResidueInt& b) {
    a.check(b);
    return {a.value - b.value, a.p, a.k};
  }
  friend ResidueInt operator*(const ResidueInt& a, const ResidueInt& b) {
    a.check(b);
    return {a.value * b.value, a.p, a.k};
  }
  friend bool operator==(const ResidueInt& a, const ResidueInt& b) {
    return a.value == b.value && a.pk == b.pk;
  }

  void check(const ResidueInt& o) const {
    if (p != o.p || k != o.k) throw std::invalid_argument("modulus mismatch");
  }
};

// 2x2 matrix over Z/p^k with cached determinant.
struct PadicMatrix {
  long a = 1, b = 0, c = 0, d = 1;
  long p = 3;
  int k = 1;
  long pk = 3;
  long det = 1;

  PadicMatrix() = default;
  PadicMatrix(long a_, long b_, long c_, long d_, long p_, int k_)
      : p(p_), k(k_), pk(ipow(p_, k_)) {
    a = mod_reduce(a_, pk);
    b = mod_reduce(b_, pk);
    c = mod_reduce(c_, pk);
    d = mod_reduce(d_, pk);
    det = mod_reduce(a * d - b * c, pk);
  }

  static PadicMatrix identity(long p, int k) { return {1, 0, 0, 1, p, k}; }

  bool invertible() const { return det % p != 0; }

  PadicMatrix inverse() const {
    const long di = inv_mod(det, pk);
    return {d * di, -b * di, -c * di, a * di, p, k};
  }

  friend PadicMatrix operator*(const PadicMatrix& x, const PadicMatrix& y) {
    if (x.pk != y.pk) throw std::invalid_argument("modulus mismatch");
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d, x.p, x.k};
  }
  friend bool operator==(const PadicMatrix& x, const PadicMatrix& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d &&
           x.pk == y.pk;
  }

  // Dense index in [0, p^{4k}) for direct-addressed set membership.
  long code() const { return ((a * pk + b) * pk + c) * pk + d; }

  // Reduction to a coarser modulus p^j.
  PadicMatrix reduced(int j) const { return {a, b, c, d, p, j}; }
};

enum class Subgroup { K0, Kn, KH, Ddiag, ZK };

// Membership in the standard subgroups of GL2(Z/p^k):
//   K0            all invertible matrices,
//   Kn(n)         congruent to 1 mod p^n,
//   KH(m,m')      upper-right entry in p^{m'}, lower-left in p^m,
//   Ddiag         diagonal with unit entries,
//   ZK            unit scalars.
inline bool subgroup_member(const PadicMatrix& g, Subgroup which, int m = 0,
                            int mp = 0) {
  if (!g.invertible()) return false;
  const auto v = [&](long x, int cap) { return val_p(x, g.p, cap); };
  switch (which) {
    case Subgroup::K0:
      return true;
    case Subgroup::Kn:
      return v(g.a - 1, g.k) >= std::min(m, g.k) &&
             v(g.b, g.k) >= std::min(m, g.k) &&
             v(g.c, g.k) >= std::min(m, g.k) &&
             v(g.d - 1, g.k) >= std::min(m, g.k);
    case Subgroup::KH:
      return v(g.b, g.k) >= std::min(mp, g.k) &&
             v(g.c, g.k) >= std::min(m, g.k);
    case Subgroup::Ddiag:
      return g.b == 0 && g.c == 0 && g.a % g.p != 0 && g.d % g.p != 0;
    case Subgroup::ZK:
      return g.b == 0 && g.c == 0 && g.a == g.d && g.a % g.p != 0;
  }
  return false;
}

// Exact root of unity e^{2 pi i num / order}; products add exponents over the
// least common order. Complex evaluation happens only at summation time.
struct CycloValue {
  long num = 0;
  long order = 1;

  CycloValue() = default;
  CycloValue(long n, long m) : num(mod_reduce(n, m)), order(m) {}

  friend CycloValue operator*(const CycloValue& x, const CycloValue& y) {
    const long g = [](long a, long b) {
      while (b) {
        const long t = a % b;
        a = b;
        b = t;
      }
      return a;
    }(x.order, y.order);
    const long m = x.order / g * y.order;
    return {x.num * (m / x.order) + y.num * (m / y.order), m};
  }

  CycloValue conj() const { return {-num, order}; }

  friend bool operator==(const CycloValue& x, const CycloValue& y) {
    const CycloValue q = x * y.conj();
    return q.num == 0;
  }

  std::complex<double> eval() const {
    return std::polar(1.0, 2 * M_PI * double(num) / double(order));
  }
};

// Smallest primitive root mod p^m (p odd), deterministic.
inline long primitive_root(long p, int m) {
  const long pm = ipow(p, m);
  const long ord = pm / p * (p - 1);
  // Distinct prime factors of the group order p^{m-1}(p-1).
  std::vector<long> fac;
  long n = ord;
  for (long q = 2; q * q <= n; q++) {
    if (n % q == 0) {
      fac.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) fac.push_back(n);
  const auto pow_mod = [&](long b, long e) {
    long r = 1;
    b = mod_reduce(b, pm);
    while (e > 0) {
      if (e & 1) r = r * b % pm;
      b = b * b % pm;
      e >>= 1;
    }
    return r;
  };
  for (long g = 2; g < pm; g++) {
    if (g % p == 0) continue;
    bool ok = true;
    for (long q : fac)
      if (pow_mod(g, ord / q) == 1) {
        ok = false;
        break;
      }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

// Character of (Z/p^m)^x defined by the image exponent of the smallest
// primitive root: chi(g) = e^{2 pi i t / phi(p^m)}. A discrete-log table
// makes evaluation exact; the conductor exponent is computed by enumeration.
struct MultCharacter {
  long p = 3;
  int m = 1;
  long pm = 3;
  long ord = 2;        // phi(p^m)
  long gen = 2;        // smallest primitive root
  long t = 0;          // generator image exponent
  int conductor = 0;   // smallest a with chi trivial on 1 + p^a
  std::vector<long> dlog;

  // chi at a unit residue mod p^m.
  CycloValue operator()(long u) const {
    u = mod_reduce(u, pm);
    if (u % p == 0) throw std::domain_error("character at a non-unit");
    return {t * dlog[u], ord};
  }

  // chi extended to p^val * unit with chi(p) = 1.
  CycloValue at(long unit, int /*val*/) const { return (*this)(unit); }

  bool trivial() const { return t % ord == 0; }
};

inline MultCharacter make_character(long p, int m, long generator_image) {
  MultCharacter chi;
  chi.p = p;
  chi.m = m;
  chi.pm = ipow(p, m);
  chi.ord = chi.pm / p * (p - 1);
  chi.gen = primitive_root(p, m);
  chi.t = mod_reduce(generator_image, chi.ord);
  chi.dlog.assign(chi.pm, -1);
  long x = 1;
  for (long j = 0; j < chi.ord; j++) {
    chi.dlog[x] = j;
    x = x * chi.gen % chi.pm;
  }
  // Conductor by enumeration: smallest a with chi = 1 on 1 + p^a Z.
  chi.conductor = 0;
  for (int a = m; a >= 0; a--) {
    const long pa = ipow(p, a);
    bool triv = true;
    for (long z = 0; z < chi.pm / pa && triv; z++) {
      const long u = mod_reduce(1 + pa * z, chi.pm);
      if (u % p != 0 && chi(u).num != 0) triv = false;
    }
    if (triv)
      chi.conductor = a;
    else
      break;
  }
  return chi;
}

// Additive character psi(x / p^r) = e^{2 pi i x / p^r} for x mod p^r.
inline CycloValue psi_frac(long x, long p, int r) { return {x, ipow(p, r)}; }

// The unique unit b mod p^r with chi(1 + p^r x) = psi(b x / p^r) for all x,
// assuming the conductor of chi is 2r. Verified exhaustively; throws if no
// (or no unique) solution exists.
inline long compute_b_chi(const MultCharacter& chi, int r) {
  if (chi.conductor != 2 * r)
    throw std::domain_error("compute_b_chi: conductor must equal 2r");
  const long pr = ipow(chi.p, r);
  long found = -1;
  for (long b = 1; b < pr; b++) {
    if (b % chi.p == 0) continue;
    bool ok = true;
    for (long x = 0; x < pr && ok; x++) {
      const CycloValue lhs = chi(1 + pr * x);
      if (!(lhs == psi_frac(b * x, chi.p, r))) ok = false;
    }
    if (ok) {
      if (found >= 0) throw std::logic_error("compute_b_chi: not unique");
      found = b;
    }
  }
  if (found < 0) throw std::domain_error("compute_b_chi: no solution");
  return found;
}

// |GL2(Z/p^m)| = p^{4m} (1 - 1/p)(1 - 1/p^2).
inline long gl2_order(long p, int m) {
  const long pm = ipow(p, m);
  return pm * pm * pm * pm / (p * p * p) * (p - 1) * (p * p - 1);
}

// Enumeration of GL2(Z/p^m) with a dense code -> position lookup.
struct GroupTable {
  long p;
  int m;
  long pm;
  std::vector<PadicMatrix> elems;
  std::vector<int32_t> pos;  // indexed by PadicMatrix::code()

  GroupTable(long p_, int m_) : p(p_), m(m_), pm(ipow(p_, m_)) {
    pos.assign(pm * pm * pm * pm, -1);
    elems.reserve(gl2_order(p, m));
    for (long a = 0; a < pm; a++)
      for (long b = 0; b < pm; b++)
        for (long c = 0; c < pm; c++)
          for (long d = 0; d < pm; d++) {
            PadicMatrix g(a, b, c, d, p, m);
            if (!g.invertible()) continue;
            pos[g.code()] = int32_t(elems.size());
            elems.push_back(g);
          }
    if (long(elems.size()) != gl2_order(p, m))
      throw std::logic_error("GL2 order mismatch");
  }

  int size() const { return int(elems.size()); }
  int index(const PadicMatrix& g) const {
    const int32_t i = pos[g.code()];
    if (i < 0) throw std::domain_error("not invertible");
    return i;
  }
};

}  // namespace supnorm::padic
