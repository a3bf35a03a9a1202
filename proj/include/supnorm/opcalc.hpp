#pragma once

// Operator calculus on the truncated principal-series module: quantisation of
// Gaussian symbols on the scaled coadjoint orbit,
//
//   Op_h(a) = int_g a_h^v(X) chi(X) pi(exp X) dX,
//
// where a_h^v is the inverse Fourier transform of the scaled symbol under the
// pairing e^{2i xi.X} and chi is a fixed smooth radial bump supported in
// ||X||_F <= 0.8. For the Gaussian symbol class the Fourier transform is in
// closed form, and for symbols with c2 = 0 and w1 = w2 the angular integral in
// the (x1,x2)-plane is a Bessel function, so the quadrature is over the
// half-plane (r, x3) only. Group elements are applied through the Cartan
// decomposition g = k(theta1) diag(e^t,e^{-t}) k(theta2): rotations act
// diagonally and the diagonal flow uses one cached eigendecomposition, so each
// quadrature node costs two dense multiplications and the factors are exactly
// unitary.

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "supnorm/relative_orbit.hpp"
#include "supnorm/weight_module.hpp"

namespace supnorm {

// Gaussian symbol in scaled orbit coordinates:
// a(xi) = amp * exp(-sum (xi_j - center_j)^2 / (2 widths_j^2)).
// The quantisation below requires center(1) = 0 and widths(0) == widths(1).
struct SymbolSpec {
  double amp = 1.0;
  Vec3 center = Vec3(1, 0, 0);
  Vec3 widths = Vec3(0.1, 0.1, 0.05);

  double eval(const Vec3& xi) const {
    double e = 0;
    for (int j = 0; j < 3; j++) {
      const double d = xi(j) - center(j);
      e += d * d / (2 * widths(j) * widths(j));
    }
    return amp * std::exp(-e);
  }

  // Pointwise square: amplitude squared, widths divided by sqrt(2).
  SymbolSpec squared() const {
    return {amp * amp, center, widths / std::sqrt(2.0)};
  }
};

// Default width exponents: w' = h^{deltap} in the orbit directions and
// w'' = h^{deltapp} in the weight direction.
inline constexpr double kDeltaP = 0.4;
inline constexpr double kDeltaPP = 0.8;

inline SymbolSpec coin_symbol(double h, double amp = 1.0,
                              const Vec3& center = Vec3(1, 0, 0)) {
  return {amp, center,
          Vec3(std::pow(h, kDeltaP), std::pow(h, kDeltaP), std::pow(h, kDeltaPP))};
}

// Smooth radial truncation, supported in ||X||_F <= 0.8 with
// ||X||_F^2 = 2(x1^2+x2^2+x3^2).
inline double radial_bump(double r, double x3) {
  const double s2 = 2 * (r * r + x3 * x3);
  const double q = s2 / (0.8 * 0.8);
  if (q >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - q));
}

namespace detail {

// J_k(x) extended to negative order and argument by parity.
inline double besselJ(int k, double x) {
  const int ak = std::abs(k);
  const double ax = std::abs(x);
  double v = std::cyl_bessel_j(double(ak), ax);
  if (k < 0 && (ak % 2)) v = -v;
  if (x < 0 && (ak % 2)) v = -v;
  return v;
}

// Cartan factors of a real 2x2 matrix with det 1.
struct KAK {
  double theta1, t, theta2;
};

inline KAK cartan(const Mat2& g) {
  Eigen::JacobiSVD<Mat2> svd(g, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat2 u = svd.matrixU(), v = svd.matrixV();
  double s = svd.singularValues()(0);
  if (u.determinant() < 0) {
    u.col(1) *= -1;
    v.col(1) *= -1;  // det(g)=1 forces det(u)*det(v)=1, flip both
  }
  KAK r;
  r.theta1 = std::atan2(u(1, 0), u(0, 0));
  r.theta2 = std::atan2(v(0, 1), v(0, 0));  // angle of v^T
  r.t = std::log(s);
  return r;
}

}  // namespace detail

// Group action evaluator with the cached diagonal-flow eigendecomposition.
class GroupAction {
 public:
  explicit GroupAction(const WeightModule& M) : M_(M) {
    const MatXc hA = std::complex<double>(0, -1) * M.op_A();
    Eigen::SelfAdjointEigenSolver<MatXc> es(hA);
    V_ = es.eigenvectors();
    lam_ = es.eigenvalues();
  }

  const WeightModule& module() const { return M_; }
  double spectral_radius_A() const { return lam_.cwiseAbs().maxCoeff(); }

  MatXc rotation(double theta) const {
    VecXc d(M_.dim());
    for (int n = -M_.N(); n <= M_.N(); n++)
      d(M_.idx(n)) = std::polar(1.0, 2 * n * theta);
    return d.asDiagonal();
  }

  MatXc diagonal_flow(double t) const {
    const VecXc e =
        (std::complex<double>(0, 1) * t * lam_.cast<std::complex<double>>())
            .array()
            .exp();
    return V_ * e.asDiagonal() * V_.adjoint();
  }

  // pi(exp(x1 A + x2 B + x3 C)) through the Cartan route. The rotation
  // diagonals are folded into the eigenvector factors so each evaluation costs
  // a single dense multiplication.
  MatXc operator()(const Vec3& x) const {
    const auto kak = detail::cartan(exp_elem(x));
    MatXc e1 = V_, e2 = V_.adjoint();
    for (int n = -M_.N(); n <= M_.N(); n++) {
      e1.row(M_.idx(n)) *= std::polar(1.0, 2 * n * kak.theta1);
      e2.col(M_.idx(n)) *= std::polar(1.0, 2 * n * kak.theta2);
    }
    const VecXc e =
        (std::complex<double>(0, 1) * kak.t * lam_.cast<std::complex<double>>())
            .array()
            .exp();
    return e1 * (e.asDiagonal() * e2);
  }

 private:
  WeightModule M_;
  MatXc V_;
  Eigen::VectorXd lam_;
};

struct QuadratureSpec {
  double oversample = 3.0;  // points per half-period of the fastest phase
  double sigmas = 5.0;      // Gaussian support radius in standard deviations
  int min_nodes = 24;
};

struct OpResult {
  MatXc op;
  bool grid_flag = false;  // refinement disagreement above 1e-3
  double grid_diff = 0;
};

namespace detail {

inline MatXc op_quantize_grid(const SymbolSpec& sym, double h,
                              const GroupAction& act, double oversample,
                              double sigmas, int min_nodes) {
  const WeightModule& M = act.module();
  const int dim = M.dim();
  const double w1 = sym.widths(0), w3 = sym.widths(2);
  const double sigma1 = h / (2 * w1), sigma3 = h / (2 * w3);
  const double chi_sup = 0.8 / std::sqrt(2.0);

  const double R = std::min(sigmas * sigma1, chi_sup);
  const double Z = std::min(sigmas * sigma3, chi_sup);

  // Fastest phases present in the integrand: the symbol oscillation 2|c|/h
  // plus the spectral content of the group action.
  const double freq_r = 2 * std::abs(sym.center(0)) / h + act.spectral_radius_A();
  const double freq_3 = 2 * std::abs(sym.center(2)) / h + 2 * M.N();
  const int nr = std::max<int>(min_nodes,
                               int(std::ceil(R * freq_r / M_PI * oversample)) + 8);
  const int n3 = std::max<int>(min_nodes,
                               int(std::ceil(2 * Z * freq_3 / M_PI * oversample)) + 8);

  const double dr = R / nr, d3 = 2 * Z / n3;
  const double K = sym.amp * std::pow(2 * M_PI, 1.5) * w1 * w1 * w3 /
                   (std::pow(M_PI, 3) * h * h * h);

  // Angular factor 2*pi*(-i)^k J_k(2 c1 r / h) on the difference of weights.
  std::vector<std::complex<double>> ang(2 * dim - 1);

  MatXc op = MatXc::Zero(dim, dim);
  for (int ir = 0; ir < nr; ir++) {
    const double r = (ir + 0.5) * dr;
    const double zarg = 2 * sym.center(0) * r / h;
    static const std::complex<double> mi_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    for (int k = -(dim - 1); k <= dim - 1; k++) {
      ang[k + dim - 1] = 2 * M_PI * mi_pow[((k % 4) + 4) % 4] * besselJ(k, zarg);
    }
    const double gr = std::exp(-r * r / (2 * sigma1 * sigma1));
    for (int i3 = 0; i3 < n3; i3++) {
      const double x3 = -Z + (i3 + 0.5) * d3;
      const double chi = radial_bump(r, x3);
      if (chi == 0.0) continue;
      const double g3 = std::exp(-x3 * x3 / (2 * sigma3 * sigma3));
      const std::complex<double> w =
          K * r * dr * d3 * gr * g3 * chi *
          std::polar(1.0, -2 * sym.center(2) * x3 / h);
      const MatXc P = act(Vec3(r, 0, x3));
      for (int m = 0; m < dim; m++)
        for (int n = 0; n < dim; n++)
          op(m, n) += w * ang[m - n + dim - 1] * P(m, n);
    }
  }
  return op;
}

}  // namespace detail

inline OpResult op_quantize(const SymbolSpec& sym, double h,
                            const GroupAction& act,
                            const QuadratureSpec& quad = {}) {
  OpResult res;
  res.op = detail::op_quantize_grid(sym, h, act, quad.oversample, quad.sigmas,
                                    quad.min_nodes);
  const MatXc fine = detail::op_quantize_grid(sym, h, act, quad.oversample * 1.5,
                                              quad.sigmas, quad.min_nodes);
  const double scale = std::max(1e-300, fine.norm());
  res.grid_diff = (fine - res.op).norm() / scale;
  res.grid_flag = res.grid_diff >= 1e-3;
  res.op = fine;
  return res;
}

// Relative character check at K-weight 2n: the diagonal entry of Op against
// the average of the symbol over the scaled orbit slice at height n*h.
struct RelativeCharacterResult {
  double lhs, rhs, error;
};

inline RelativeCharacterResult relative_character_check(const MatXc& op,
                                                        const SymbolSpec& sym,
                                                        double h, int n,
                                                        const WeightModule& M) {
  const double height = n * h;
  const OrbitCircle circle{height, std::sqrt(1 + height * height)};
  RelativeCharacterResult r;
  r.lhs = op(M.idx(n), M.idx(n)).real();
  r.rhs = circle.average([&](const Vec3& xi) { return sym.eval(xi); });
  r.error = std::abs(op(M.idx(n), M.idx(n)) - std::complex<double>(r.rhs, 0));
  return r;
}

}  // namespace supnorm
