#pragma once

// Compact induced model for a principal series chi x chi^{-1} on GL2(Z/p^m)
// with a(chi) = m = 2r. Functions with the left Borel equivariance
// f(bk) = chi(t1/t2) f(k) are stored by their values on a fixed transversal
// of B(O)\G, so the model has dimension p^m (1 + 1/p) and every group element
// acts by a monomial matrix. On top of this sit the double-coset partition,
// the new vector, the microlocal lift vector, matrix-coefficient support
// scans, the local period, and the expansion of the new vector into torus
// translates of the lift.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "supnorm/padic_core.hpp"

namespace supnorm::padic {

using Cplx = std::complex<double>;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

struct CosetTable {
  // Cells of B(O)\G/KH(m,m): first the m cells of ((1,0),(p^i,1)) for
  // i = 1..m, then the m+1 cells of ((0,-1),(1,p^j)) for j = 0..m.
  std::vector<long> cell_sizes;
  std::vector<int32_t> cell_of;  // per group index
  bool partition_ok = false;     // product enumeration matches valuation rule
};

class InducedModel {
 public:
  explicit InducedModel(const MultCharacter& chi_)
      : chi(chi_), p(chi_.p), m(chi_.m), pm(chi_.pm), r(chi_.m / 2), G(p, m) {
    if (m % 2 != 0 || chi.conductor != m)
      throw std::domain_error("need a character of full even conductor");
    b_chi = compute_b_chi(chi, r);
    build_transversal();
    build_factor_tables();
  }

  const MultCharacter& character() const { return chi; }
  long modulus() const { return pm; }
  int dim() const { return int(reps.size()); }
  const GroupTable& group() const { return G; }
  long b_chi_value() const { return b_chi; }

  // --- Borel, Hecke and congruence subgroups as element lists ---

  std::vector<PadicMatrix> borel() const {
    std::vector<PadicMatrix> out;
    for (long t1 = 0; t1 < pm; t1++)
      for (long t2 = 0; t2 < pm; t2++) {
        if (t1 % p == 0 || t2 % p == 0) continue;
        for (long x = 0; x < pm; x++) out.emplace_back(t1, x, 0, t2, p, m);
      }
    return out;
  }

  std::vector<PadicMatrix> hecke_kh() const {
    std::vector<PadicMatrix> out;
    for (long u = 0; u < pm; u++)
      for (long v = 0; v < pm; v++)
        if (u % p != 0 && v % p != 0) out.emplace_back(u, 0, 0, v, p, m);
    return out;
  }

  std::vector<PadicMatrix> congruence_kr() const {
    std::vector<PadicMatrix> out;
    const long pr = ipow(p, r), q = ipow(p, m - r);
    for (long a = 0; a < q; a++)
      for (long b = 0; b < q; b++)
        for (long c = 0; c < q; c++)
          for (long d = 0; d < q; d++)
            out.emplace_back(1 + pr * a, pr * b, pr * c, 1 + pr * d, p, m);
    return out;
  }

  // --- model plumbing ---

  // chi_B of the Borel factor of g against the transversal.
  int rep_index(const PadicMatrix& g) const { return rep_of[G.index(g)]; }
  Cplx borel_factor(const PadicMatrix& g) const { return cfac[G.index(g)]; }

  Cplx inner(const VecC& f, const VecC& h) const {
    return f.dot(h) / double(dim());  // Eigen's dot conjugates the first slot
  }
  double norm(const VecC& f) const { return std::sqrt(std::real(inner(f, f))); }

  // Right regular action (pi(g) f)(k) = f(k g) as a dim x dim matrix.
  MatC action(const PadicMatrix& g) const {
    MatC A = MatC::Zero(dim(), dim());
    for (int i = 0; i < dim(); i++) {
      const PadicMatrix rg = reps[i] * g;
      const int gi = G.index(rg);
      A(i, rep_of[gi]) = cfac[gi];
    }
    return A;
  }

  VecC apply(const PadicMatrix& g, const VecC& f) const {
    VecC out(dim());
    for (int i = 0; i < dim(); i++) {
      const PadicMatrix rg = reps[i] * g;
      const int gi = G.index(rg);
      out(i) = cfac[gi] * f(rep_of[gi]);
    }
    return out;
  }

  // Diagonal matrix coefficient <pi(g) f, h> without building the matrix.
  Cplx coeff(const PadicMatrix& g, const VecC& f, const VecC& h) const {
    Cplx s = 0;
    for (int i = 0; i < dim(); i++) {
      const PadicMatrix rg = reps[i] * g;
      const int gi = G.index(rg);
      s += std::conj(cfac[gi] * f(rep_of[gi])) * h(i);
    }
    return s / double(dim());
  }

  // Monomial data of pi(g) in one pass: (pi(g) f)(i) = fac[i] f(perm[i]).
  void factor_row(const PadicMatrix& g, std::vector<int>& perm,
                  std::vector<Cplx>& fac) const {
    perm.resize(dim());
    fac.resize(dim());
    for (int i = 0; i < dim(); i++) {
      const int gi = G.index(reps[i] * g);
      perm[i] = rep_of[gi];
      fac[i] = cfac[gi];
    }
  }

  // theta_tau on K(r): psi(p^{-m} b_chi ((k-1)_{11} - (k-1)_{22})).
  Cplx theta_tau(const PadicMatrix& k1) const {
    const long e = mod_reduce(b_chi * ((k1.a - 1) - (k1.d - 1)), pm);
    return std::polar(1.0, 2 * M_PI * double(e) / double(pm));
  }

  Cplx chi_D(const PadicMatrix& d) const {
    return chi(mod_reduce(d.a * inv_mod(d.d, pm), pm)).eval();
  }

  // --- direct evaluations of the distinguished vectors at any g in G ---

  // New vector: supported where both bottom-row entries are units, with value
  // chi(det / (c d)).
  Cplx new_eval(const PadicMatrix& g) const {
    if (g.c % p == 0 || g.d % p == 0) return 0.0;
    return chi(mod_reduce(g.det * inv_mod(g.c * g.d, pm), pm)).eval();
  }

  // Microlocal lift: supported on B(O) K(r), value chi_B(b) theta_tau(k1).
  Cplx ml_eval(const PadicMatrix& g) const {
    if (val_p(g.c, p, m) < r || g.a % p == 0 || g.d % p == 0) return 0.0;
    const PadicMatrix b(g.a, g.b, 0, g.d, p, m);
    const PadicMatrix k1 = b.inverse() * g;
    return chi(mod_reduce(g.a * inv_mod(g.d, pm), pm)).eval() * theta_tau(k1);
  }

  VecC new_vector() const {
    VecC f(dim());
    for (int i = 0; i < dim(); i++) f(i) = new_eval(reps[i]);
    return f;
  }

  VecC ml_vector() const {
    VecC f(dim());
    for (int i = 0; i < dim(); i++) f(i) = ml_eval(reps[i]);
    return f;
  }

  // Shift matrices c_t mapping the lift to new-vector-correlated position.
  PadicMatrix shift_ct(long t) const {
    const long inv2 = inv_mod(2, pm);
    const long tinv = inv_mod(t, pm);
    return {mod_reduce(b_chi * tinv, pm), mod_reduce(-inv2, pm), 1,
            mod_reduce(t * inv2 * inv_mod(b_chi, pm), pm), p, m};
  }

  // Average of <pi(k) v, v> over the diagonal Hecke subgroup.
  Cplx local_period_Q(const VecC& v) const {
    Cplx s = 0;
    const auto kh = hecke_kh();
    for (const auto& k : kh) s += coeff(k, v, v);
    return s / double(kh.size());
  }

  CosetTable double_coset_partition() const {
    CosetTable tab;
    const int ncell = 2 * m + 1;
    tab.cell_sizes.assign(ncell, 0);
    tab.cell_of.assign(G.size(), -1);
    // Valuation rule (i, j) = (v(c), v(d)): lower-left valuation picks the
    // unipotent family, otherwise v(d) picks the Weyl family.
    for (int gi = 0; gi < G.size(); gi++) {
      const auto& g = G.elems[gi];
      const int i = val_p(g.c, p, m), j = val_p(g.d, p, m);
      const int cell = (i > 0) ? (i - 1) : (m + j);
      tab.cell_of[gi] = cell;
      tab.cell_sizes[cell]++;
    }
    // Cross-check by product enumeration from the cell representatives.
    std::vector<int32_t> seen(G.size(), -1);
    tab.partition_ok = true;
    const auto B = borel();
    const auto KH = hecke_kh();
    for (int cell = 0; cell < ncell; cell++) {
      const PadicMatrix gamma =
          (cell < m) ? PadicMatrix(1, 0, ipow(p, cell + 1), 1, p, m)
                     : PadicMatrix(0, -1, 1, ipow(p, cell - m), p, m);
      for (const auto& b : B)
        for (const auto& k : KH) {
          const int gi = G.index(b * gamma * k);
          if (seen[gi] >= 0 && seen[gi] != cell) tab.partition_ok = false;
          seen[gi] = cell;
          if (tab.cell_of[gi] != cell) tab.partition_ok = false;
        }
    }
    for (int gi = 0; gi < G.size(); gi++)
      if (seen[gi] < 0) tab.partition_ok = false;
    return tab;
  }

  const std::vector<PadicMatrix>& transversal() const { return reps; }

 public:
  MultCharacter chi;
  long p;
  int m;
  long pm;
  int r;
  long b_chi = 0;
  GroupTable G;

 private:
  std::vector<PadicMatrix> reps;
  std::vector<int32_t> rep_of;  // per group index
  std::vector<Cplx> cfac;       // Borel character factor per group index

  void build_transversal() {
    // Primitive bottom rows up to units: (1, e) for e mod p^m as the Weyl
    // family and (c, 1) for c in pZ as the unipotent family.
    for (long e = 0; e < pm; e++) reps.emplace_back(0, -1, 1, e, p, m);
    for (long c = 0; c < pm; c += p) reps.emplace_back(1, 0, c, 1, p, m);
  }

  void build_factor_tables() {
    rep_of.assign(G.size(), -1);
    cfac.assign(G.size(), 0.0);
    for (int gi = 0; gi < G.size(); gi++) {
      const auto& g = G.elems[gi];
      long t1, t2;
      int ri;
      if (g.c % p != 0) {
        const long e = mod_reduce(g.d * inv_mod(g.c, pm), pm);
        ri = int(e);
        t2 = g.c;
      } else {
        const long f = mod_reduce(g.c * inv_mod(g.d, pm), pm);
        ri = int(pm + f / p);
        t2 = g.d;
      }
      t1 = mod_reduce(g.det * inv_mod(t2, pm), pm);
      rep_of[gi] = ri;
      cfac[gi] = chi(mod_reduce(t1 * inv_mod(t2, pm), pm)).eval();
    }
  }
};

}  // namespace supnorm::padic
