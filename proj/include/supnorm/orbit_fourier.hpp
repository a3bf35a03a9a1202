#pragma once

// Fourier transform of the symplectic measure on the coadjoint orbit through
// i*T*A, evaluated at a real direction X = (a,b,c):
//
//   F(X) = T * int_0^inf J0(2 T beta sqrt(1+u^2)) cos(2 T c u) du,
//
// with beta = sqrt(a^2 + b^2). The phi-integral over the orbit circle has
// already been carried out (it produces the J0 factor), and u = sinh(v) is the
// height variable. For X = t*A this collapses to cos(2Tt)/(2t).
//
// The integral converges only conditionally, so the tail is summed between
// oscillation nodes and the alternating partial sums are accelerated with
// iterated Aitken extrapolation. Two truncation depths are compared; if they
// disagree the result is flagged as non-converged instead of being trusted.

#include <cmath>
#include <functional>
#include <vector>

#include "supnorm/sl2.hpp"

namespace supnorm {

struct OrbitFourierResult {
  double value = 0;
  bool converged = false;
};

namespace detail {

inline double adaptive_simpson_rec(const std::function<double(double)>& f,
                                   double a, double b, double fa, double fm,
                                   double fb, double whole, double tol,
                                   int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * tol)
    return left + right + (left + right - whole) / 15;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f, double a,
                               double b, double tol, int depth = 40) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, depth);
}

// Iterated Aitken extrapolation of a sequence of partial sums.
template <class T>
inline T aitken_limit(std::vector<T> s) {
  while (s.size() >= 3) {
    std::vector<T> t;
    t.reserve(s.size() - 2);
    for (size_t i = 0; i + 2 < s.size(); i++) {
      const T d2 = s[i + 2] - 2.0 * s[i + 1] + s[i];
      if (std::abs(d2) < 1e-300) {
        t.push_back(s[i + 2]);
      } else {
        const T d1 = s[i + 2] - s[i + 1];
        t.push_back(s[i + 2] - d1 * d1 / d2);
      }
    }
    s = std::move(t);
  }
  return s.back();
}

// Adaptive Simpson for complex-valued integrands, by parts.
inline std::complex<double> adaptive_simpson_c(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    double tol) {
  const double re = adaptive_simpson([&](double u) { return f(u).real(); }, a, b, tol);
  const double im = adaptive_simpson([&](double u) { return f(u).imag(); }, a, b, tol);
  return {re, im};
}

}  // namespace detail

// Evaluate F at X for the orbit through i*T*A. Requires s2(X) > 0 away from
// zero (the hyperbolic directions), which is the regime used in the tests.
inline OrbitFourierResult orbit_fourier(double T, const Vec3& x,
                                        double tol = 1e-7) {
  const double beta = std::hypot(x(0), x(1));
  const double c = std::abs(x(2));

  if (beta <= c) {
    // Elliptic / nilpotent directions are outside the hyperbolic regime that
    // the tail splitting below assumes.
    return {};
  }

  const auto integrand = [T, beta, c](double u) {
    return std::cyl_bessel_j(0.0, 2 * T * beta * std::sqrt(1 + u * u)) *
           std::cos(2 * T * c * u);
  };

  // Head cutoff: far enough out that the phase rates of both oscillatory
  // components are within 10% of their limits 2T(beta +- c).
  const double u0 = std::max(2.0, std::sqrt(5.0 * beta / (beta - c)));
  const double head = detail::adaptive_simpson(integrand, 0.0, u0, tol / 4);

  // Past u0, split J0(z) = (H1(z) + H2(z))/2 with H1 = J0 + iY0, H2 = J0 - iY0
  // and cos(w) = Re e^{iw}. Each of the two products carries a single phase
  // with asymptotic rate 2T(beta + c) resp. -2T(beta - c), so each tail is an
  // honest one-frequency oscillatory sum that extrapolates cleanly.
  const auto component = [T, beta, c](double u, int sign) {
    const double z = 2 * T * beta * std::sqrt(1 + u * u);
    const std::complex<double> h(std::cyl_bessel_j(0.0, z),
                                 sign * std::cyl_neumann(0.0, z));
    const std::complex<double> e(std::cos(2 * T * c * u), std::sin(2 * T * c * u));
    return 0.5 * h * e;
  };

  const auto tail_component = [&](int sign, int nseg) {
    const double rate = 2 * T * std::abs(sign > 0 ? beta + c : beta - c);
    const double seg = M_PI / rate;
    std::vector<std::complex<double>> partial;
    partial.reserve(nseg);
    std::complex<double> acc = 0;
    for (int k = 0; k < nseg; k++) {
      const double a = u0 + k * seg, b = a + seg;
      acc += detail::adaptive_simpson_c(
          [&](double u) { return component(u, sign); }, a, b, tol / (4 * nseg));
      partial.push_back(acc);
    }
    return detail::aitken_limit(std::move(partial));
  };

  const auto tail_estimate = [&](int nseg) {
    return (tail_component(+1, nseg) + tail_component(-1, nseg)).real();
  };

  const double t1 = tail_estimate(20);
  const double t2 = tail_estimate(36);

  OrbitFourierResult r;
  r.value = T * (head + t2);
  r.converged = std::abs(t1 - t2) * T < 1e-5;
  return r;
}

// Closed form on the A-axis: F(t*A) = cos(2Tt)/(2t).
inline double orbit_fourier_axis(double T, double t) {
  return std::cos(2 * T * t) / (2 * t);
}

}  // namespace supnorm
