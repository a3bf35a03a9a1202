#pragma once

// Commutator subgroup of the principal congruence group: working in
// GL2(Z/p^{2n+1}), the closure of commutators of K(n)-generators, multiplied
// by the central part of K(2n), is compared with K(2n) itself. The quotient
// K(2n) mod p^{2n+1} is abelian and isomorphic to the additive group of 2x2
// matrices over Z/p, which makes the closure a lattice computation.

#include <random>

#include "supnorm/padic_core.hpp"

namespace supnorm::padic {

struct CommutatorReport {
  long p = 0;
  int n = 0;
  long closure_size = 0;   // commutators of generators times Z cap K(2n)
  long target_size = 0;    // |K(2n) mod p^{2n+1}| = p^4
  bool equals_target = false;
  bool containment_ok = false;  // sampled [K(n),K(n)] subset of K(2n)
};

inline CommutatorReport commutator_closure(long p, int n, unsigned seed = 7) {
  const int amb = 2 * n + 1;
  const long pn = ipow(p, n), p2n = ipow(p, 2 * n), pamb = ipow(p, amb);

  // Generators of K(n) mod p^{2n+1}: 1 + p^n u E_ij over nonzero u mod p^{n+1}.
  std::vector<PadicMatrix> gens;
  for (long u = 1; u < ipow(p, n + 1); u++)
    for (int pos = 0; pos < 4; pos++) {
      long e[4] = {0, 0, 0, 0};
      e[pos] = pn * u;
      gens.emplace_back(1 + e[0], e[1], e[2], 1 + e[3], p, amb);
    }

  // Residue of an element of K(2n): the matrix (g - 1)/p^{2n} over Z/p,
  // encoded in [0, p^4).
  const auto k2n_code = [&](const PadicMatrix& g) -> long {
    const long e[4] = {mod_reduce(g.a - 1, pamb), g.b, g.c,
                       mod_reduce(g.d - 1, pamb)};
    long code = 0;
    for (int i = 0; i < 4; i++) {
      if (e[i] % p2n != 0) return -1;  // not in K(2n)
      code = code * p + (e[i] / p2n) % p;
    }
    return code;
  };

  CommutatorReport rep;
  rep.p = p;
  rep.n = n;
  rep.target_size = p * p * p * p;

  // Commutators of generator pairs, recorded additively in K(2n).
  std::vector<char> in(rep.target_size, 0);
  std::vector<long> frontier;
  const auto add_code = [&](long code) {
    if (code >= 0 && !in[code]) {
      in[code] = 1;
      frontier.push_back(code);
    }
  };
  add_code(0);
  for (const auto& g : gens)
    for (const auto& h : gens) {
      const PadicMatrix comm = g * h * g.inverse() * h.inverse();
      const long code = k2n_code(comm);
      if (code < 0) throw std::logic_error("commutator left K(2n)");
      add_code(code);
    }
  // Central part Z cap K(2n): scalars 1 + lambda p^{2n}.
  for (long lam = 0; lam < p; lam++)
    add_code(k2n_code(
        PadicMatrix(1 + lam * p2n, 0, 0, 1 + lam * p2n, p, amb)));

  // Additive closure (the quotient is abelian, so products add residues).
  const auto code_add = [&](long x, long y) {
    long digs[4], r = 0;
    for (int i = 3; i >= 0; i--) {
      digs[i] = (x % p + y % p) % p;
      x /= p;
      y /= p;
    }
    for (int i = 0; i < 4; i++) r = r * p + digs[i];
    return r;
  };
  std::vector<long> members = frontier;
  while (!frontier.empty()) {
    const long x = frontier.back();
    frontier.pop_back();
    for (size_t i = 0; i < members.size(); i++) {
      const long s = code_add(x, members[i]);
      if (!in[s]) {
        in[s] = 1;
        frontier.push_back(s);
        members.push_back(s);
      }
    }
  }
  rep.closure_size = 0;
  for (char f : in) rep.closure_size += f;
  rep.equals_target = rep.closure_size == rep.target_size;

  // Sampled containment: commutators of random K(n) elements land in K(2n).
  std::mt19937 rng(seed);
  rep.containment_ok = true;
  for (int s = 0; s < 200; s++) {
    const auto rand_kn = [&]() {
      long e[4];
      for (auto& x : e) x = long(rng() % ipow(p, n + 1)) * pn;
      return PadicMatrix(1 + e[0], e[1], e[2], 1 + e[3], p, amb);
    };
    const PadicMatrix g = rand_kn(), h = rand_kn();
    if (k2n_code(g * h * g.inverse() * h.inverse()) < 0)
      rep.containment_ok = false;
  }
  return rep;
}

}  // namespace supnorm::padic
