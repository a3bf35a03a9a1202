#pragma once

// Units of the unramified quadratic extension modulo p_E^k, the character
// theta that is trivial on scalars with full even conductor, its additive
// parameter b_theta, and the well-definedness of the extension
// theta~(x k1) = theta(x) theta_{b_theta}(k1) on products of embedded units
// with principal congruence elements.

#include <unordered_map>

#include "supnorm/padic_core.hpp"

namespace supnorm::padic {

// x + y sqrt(D) with x, y mod p^k and D a fixed non-residue mod p.
struct QuadExtElement {
  long x = 1, y = 0;
  long p = 3;
  int k = 1;
  long pk = 3;
  long D = 2;

  QuadExtElement() = default;
  QuadExtElement(long x_, long y_, long p_, int k_, long D_)
      : p(p_), k(k_), pk(ipow(p_, k_)), D(D_) {
    x = mod_reduce(x_, pk);
    y = mod_reduce(y_, pk);
  }

  long norm() const { return mod_reduce(x * x - D * y * y, pk); }
  bool unit() const { return norm() % p != 0; }
  long code() const { return x * pk + y; }

  friend QuadExtElement operator*(const QuadExtElement& u,
                                  const QuadExtElement& v) {
    return {u.x * v.x + u.D * u.y * v.y, u.x * v.y + u.y * v.x, u.p, u.k, u.D};
  }

  // Matrix realisation a + b sqrt(D) -> ((a, b), (bD, a)).
  PadicMatrix embed() const { return {x, y, mod_reduce(D * y, pk), x, p, k}; }
};

struct QuadExtReport {
  long p = 0;
  int k = 0;
  long D = 0;
  long unit_count = 0;           // p^{2k-2}(p^2 - 1)
  long quotient_order = 0;       // units modulo scalar units
  bool quotient_cyclic = false;
  int theta_conductor = 0;       // nontriviality depth on 1 + p_E^{k-1}
  long b_theta = -1;             // theta(1 + u) = psi_E(p^{-k} beta sqrt(D) u)
  bool b_theta_ok = false;
  bool scalars_trivial = false;
  bool extension_well_defined = false;  // checked when k = 2r with r = k/2

  // theta as an exponent table over element codes (order quotient_order).
  std::unordered_map<long, long> theta_exp;
};

// theta_{b_theta} on a principal congruence element k1 = 1 + u (mod p^k),
// u with entries divisible by p^{k/2}:
//   psi(tr(B (k1 - 1))) with B = p^{-k} beta sqrt(D) embedded, which unwinds
//   to e^{2 pi i beta (u_{21} + D u_{12}) / p^k}.
inline CycloValue theta_b(const PadicMatrix& k1, long beta, long D) {
  const long u12 = k1.b, u21 = k1.c;
  return {beta * mod_reduce(u21 + D * u12, k1.pk), k1.pk};
}

inline QuadExtReport quadext_units(long p, int k, long D) {
  // D must be a non-residue mod p.
  {
    bool residue = false;
    for (long t = 1; t < p; t++)
      if (t * t % p == mod_reduce(D, p)) residue = true;
    if (residue || mod_reduce(D, p) == 0)
      throw std::domain_error("D must be a non-residue mod p");
  }
  QuadExtReport rep;
  rep.p = p;
  rep.k = k;
  rep.D = D;
  const long pk = ipow(p, k);

  std::vector<QuadExtElement> units;
  for (long x = 0; x < pk; x++)
    for (long y = 0; y < pk; y++) {
      QuadExtElement e(x, y, p, k, D);
      if (e.unit()) units.push_back(e);
    }
  rep.unit_count = long(units.size());

  // Scalar units (lifts of F^x): y = 0.
  std::unordered_map<long, char> scalar;
  for (long x = 0; x < pk; x++)
    if (x % p != 0) scalar[x * pk + 0] = 1;
  rep.quotient_order = rep.unit_count / long(scalar.size());

  // A generator of the quotient U / scalars: first unit whose class has full
  // order. theta assigns the class g^j the value e^{2 pi i j / |Q|}.
  for (const auto& g : units) {
    std::unordered_map<long, long> exp_of;
    QuadExtElement pow(1, 0, p, k, D);
    long ordq = 0;
    bool closed = false;
    for (long j = 0; j < rep.quotient_order; j++) {
      // Record theta on the whole coset g^j * scalars.
      for (const auto& [sc, _] : scalar) {
        const QuadExtElement s(sc / pk, 0, p, k, D);
        exp_of[(pow * s).code()] = j;
      }
      pow = pow * g;
      if (pow.y == 0) {  // landed in a scalar class: order is j + 1
        ordq = j + 1;
        closed = true;
        break;
      }
    }
    if (closed && ordq == rep.quotient_order) {
      rep.quotient_cyclic = true;
      rep.theta_exp = std::move(exp_of);
      break;
    }
  }
  if (!rep.quotient_cyclic)
    throw std::logic_error("unit quotient not cyclic at requested parameters");

  const auto theta = [&](const QuadExtElement& u) -> CycloValue {
    return {rep.theta_exp.at(u.code()), rep.quotient_order};
  };

  // Trivial on scalars by construction; verified anyway.
  rep.scalars_trivial = true;
  for (const auto& [sc, _] : scalar)
    if (rep.theta_exp.at(sc) != 0) rep.scalars_trivial = false;

  // Conductor: theta must be nontrivial on 1 + p_E^{k-1}.
  rep.theta_conductor = 0;
  {
    const long q = ipow(p, k - 1);
    bool nontriv = false;
    for (long a = 0; a < p && !nontriv; a++)
      for (long b = 0; b < p && !nontriv; b++) {
        QuadExtElement u(1 + a * q, b * q, p, k, D);
        if (u.unit() && theta(u).num != 0) nontriv = true;
      }
    rep.theta_conductor = nontriv ? k : k - 1;
  }

  // b_theta: on 1 + p_E^r (k = 2r) theta is additive and purely imaginary:
  // theta(1 + p^r(a + b sqrt D)) = e^{2 pi i 2 beta b D / p^r}.
  if (k % 2 == 0) {
    const int r = k / 2;
    const long pr = ipow(p, r);
    for (long beta = 0; beta < pr && !rep.b_theta_ok; beta++) {
      bool ok = true;
      for (long a = 0; a < pr && ok; a++)
        for (long b = 0; b < pr && ok; b++) {
          const QuadExtElement u(1 + a * pr, b * pr, p, k, D);
          if (!(theta(u) == CycloValue(2 * beta * b * D, pr))) ok = false;
        }
      if (ok) {
        rep.b_theta = beta;
        rep.b_theta_ok = true;
      }
    }

    // Well-definedness of theta~ on products (embedded unit) * K(r): whenever
    // x k1 = x' k1', the assigned values agree.
    if (rep.b_theta_ok && ipow(p, 4 * k) < (1 << 24)) {
      std::unordered_map<long, CycloValue> assigned;
      rep.extension_well_defined = true;
      for (const auto& u : units) {
        const PadicMatrix xm = u.embed();
        for (long e0 = 0; e0 < pr; e0++)
          for (long e1 = 0; e1 < pr; e1++)
            for (long e2 = 0; e2 < pr; e2++)
              for (long e3 = 0; e3 < pr; e3++) {
                const PadicMatrix k1(1 + pr * e0, pr * e1, pr * e2,
                                     1 + pr * e3, p, k);
                if (!k1.invertible()) continue;
                const CycloValue val = theta(u) * theta_b(k1, rep.b_theta, D);
                const long code = (xm * k1).code();
                const auto it = assigned.find(code);
                if (it == assigned.end())
                  assigned.emplace(code, val);
                else if (!(it->second == val))
                  rep.extension_well_defined = false;
              }
      }
    }
  }
  return rep;
}

}  // namespace supnorm::padic
