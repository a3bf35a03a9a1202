#pragma once

// Truncated weight-basis model of a spherical principal series with spectral
// parameter T. Basis vectors v_n for |n| <= N carry K-weight 2n; the raising
// and lowering operators act by
//   R v_n = (iT + 1/2 + n) v_{n+1},  L v_n = (iT + 1/2 - n) v_{n-1},
// and C v_n = 2 i n v_n, with A = R + L and B = i (R - L); this orientation of
// B makes the model honor the matrix-basis brackets [B,C] = 2A, [A,B] = -2C,
// [A,C] = -2B on interior weights (the opposite sign of B realises the same
// representation up to an outer automorphism). The truncated
// matrices of A, B, C are exactly skew-Hermitian, so one-parameter subgroups
// exponentiate to unitary matrices.

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "supnorm/expm.hpp"
#include "supnorm/sl2.hpp"

namespace supnorm {

class WeightModule {
 public:
  WeightModule(double T, int N) : T_(T), N_(N) {}

  // Default truncation used for lifts at parameter T.
  static WeightModule standard(double T) {
    return WeightModule(T, int(std::ceil(3 * std::sqrt(T))) + 8);
  }

  double T() const { return T_; }
  int N() const { return N_; }
  int dim() const { return 2 * N_ + 1; }
  int idx(int n) const { return n + N_; }

  MatXc op_R() const {
    MatXc m = MatXc::Zero(dim(), dim());
    for (int n = -N_; n < N_; n++)
      m(idx(n + 1), idx(n)) = std::complex<double>(0.5 + n, T_);
    return m;
  }

  MatXc op_L() const {
    MatXc m = MatXc::Zero(dim(), dim());
    for (int n = -N_ + 1; n <= N_; n++)
      m(idx(n - 1), idx(n)) = std::complex<double>(0.5 - n, T_);
    return m;
  }

  MatXc op_C() const {
    MatXc m = MatXc::Zero(dim(), dim());
    for (int n = -N_; n <= N_; n++) m(idx(n), idx(n)) = std::complex<double>(0, 2 * n);
    return m;
  }

  MatXc op_A() const { return op_R() + op_L(); }

  MatXc op_B() const {
    return std::complex<double>(0, 1) * (op_R() - op_L());
  }

  MatXc op(char letter) const {
    switch (letter) {
      case 'A': return op_A();
      case 'B': return op_B();
      case 'C': return op_C();
      case 'R': return op_R();
      case 'L': return op_L();
    }
    throw std::invalid_argument("unknown operator letter");
  }

  // Pairing of the dual point tau = 2iT A^* against a basis letter:
  // <tau, A> = 2iT, <tau, R> = <tau, L> = iT, <tau, B> = <tau, C> = 0.
  std::complex<double> tau_pairing(char letter) const {
    switch (letter) {
      case 'A': return {0, 2 * T_};
      case 'R':
      case 'L': return {0, T_};
      case 'B':
      case 'C': return 0.0;
    }
    throw std::invalid_argument("unknown operator letter");
  }

  // Sharp microlocal lift: sum of v_n over |n| <= floor(sqrt(T)).
  VecXc sharp_lift() const {
    VecXc v = VecXc::Zero(dim());
    const int M = int(std::floor(std::sqrt(T_)));
    for (int n = -M; n <= M; n++) v(idx(n)) = 1.0;
    return v;
  }

  // Smooth lift with a fixed compactly supported profile on [-1,1].
  VecXc smooth_lift() const {
    VecXc v = VecXc::Zero(dim());
    const double s = std::sqrt(T_);
    for (int n = -N_; n <= N_; n++) {
      const double x = n / s;
      if (std::abs(x) < 1.0) {
        const double t = 1 - x * x;
        v(idx(n)) = t * t * t;
      }
    }
    return v;
  }

  struct DefectResult {
    double defect = 0;        // ||prod (X_i - <tau,X_i>) v|| / ||v||
    bool boundary_loss = false;  // significant mass within 2 slots of the cut
  };

  DefectResult localisation_defect(const VecXc& v, const std::string& word) const {
    VecXc w = v;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
      w = op(*it) * w - tau_pairing(*it) * w;
    }
    DefectResult r;
    r.defect = w.norm() / v.norm();
    double edge = 0;
    for (int k = 0; k < 3; k++)
      edge += std::norm(w(k)) + std::norm(w(dim() - 1 - k));
    r.boundary_loss = edge > 1e-6 * w.squaredNorm() + 1e-300;
    return r;
  }

  // Action of exp(a*A + b*B + c*C) on the truncated module. The generator
  // matrix is skew-Hermitian, so the result is unitary.
  MatXc group_element(const Vec3& x) const {
    const MatXc m = x(0) * op_A() + x(1) * op_B() + x(2) * op_C();
    return expm_skew(m);
  }

 private:
  double T_;
  int N_;
};

// ||Av||^2 + ||Bv||^2 for a unit weight-k vector on which -4*Casimir acts by
// mu: equals -mu + k^2. For the discrete series value mu = (k-1)^2 - 1 this is
// 2k, the uncertainty-principle floor at weight k.
inline double casimir_weight_identity(double mu, int k) {
  return -mu + double(k) * k;
}

}  // namespace supnorm
