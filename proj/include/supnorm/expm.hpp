#pragma once

// Matrix exponential for dense complex matrices: Pade(13) with scaling and
// squaring, plus a fast path for skew-Hermitian matrices through a Hermitian
// eigendecomposition (the result is then exactly unitary up to roundoff).

#include <complex>

#include <Eigen/Dense>

namespace supnorm {

using MatXc = Eigen::MatrixXcd;
using VecXc = Eigen::VectorXcd;

// Scaling-and-squaring Pade(13) approximant, standard Higham coefficients.
inline MatXc expm_pade(const MatXc& a) {
  static const double b[] = {64764752532480000.0, 32382376266240000.0,
                             7771770303897600.0,  1187353796428800.0,
                             129060195264000.0,   10559470521600.0,
                             670442572800.0,      33522128640.0,
                             1323241920.0,        40840800.0,
                             960960.0,            16380.0,
                             182.0,               1.0};
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  MatXc m = a;
  const double theta13 = 5.371920351148152;
  if (norm > theta13) {
    squarings = std::max(0, int(std::ceil(std::log2(norm / theta13))));
    m /= std::pow(2.0, squarings);
  }
  const int n = int(a.rows());
  const MatXc id = MatXc::Identity(n, n);
  const MatXc m2 = m * m;
  const MatXc m4 = m2 * m2;
  const MatXc m6 = m2 * m4;
  const MatXc u =
      m * (m6 * (b[13] * m6 + b[11] * m4 + b[9] * m2) + b[7] * m6 + b[5] * m4 +
           b[3] * m2 + b[1] * id);
  const MatXc v = m6 * (b[12] * m6 + b[10] * m4 + b[8] * m2) + b[6] * m6 +
                  b[4] * m4 + b[2] * m2 + b[0] * id;
  MatXc r = (v - u).partialPivLu().solve(v + u);
  for (int i = 0; i < squarings; i++) r = r * r;
  return r;
}

// exp(a) for skew-Hermitian a, via a = i*h with h Hermitian.
inline MatXc expm_skew(const MatXc& a) {
  const MatXc h = a * std::complex<double>(0, -1);
  Eigen::SelfAdjointEigenSolver<MatXc> es(h);
  const VecXc phases = (std::complex<double>(0, 1) * es.eigenvalues()).array().exp();
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

}  // namespace supnorm
