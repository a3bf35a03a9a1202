#pragma once

// K-Bessel functions of imaginary order on the e^{pi T/2}-scaled branch:
// primary evaluation through the cosine-integral representation
// e^{pi T/2} K_{iT}(x) = int_0^infty cos(x sinh t - T t) dt with phase-adapted
// panels and an integration-by-parts tail, a power-series oracle through the
// complex Gamma function, the second-moment bound, and the Fourier-side
// crossover bookkeeping.

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "supnorm/rational.hpp"

namespace supnorm::bessel {

using Cplx = std::complex<double>;
using rat::Rat;

namespace detail {

using CplxL = std::complex<long double>;

// Lanczos approximation, g = 7, valid for Re z > 0. Long double throughout:
// the series oracle below suffers real cancellation, and the extra digits are
// what make it a usable reference.
inline CplxL log_gamma(CplxL z) {
  static const long double c[9] = {0.99999999999980993L,  676.5203681218851L,
                                   -1259.1392167224028L,  771.32342877765313L,
                                   -176.61502916214059L,  12.507343278686905L,
                                   -0.13857109526572012L, 9.9843695780195716e-6L,
                                   1.5056327351493116e-7L};
  const long double pi = 3.14159265358979323846L;
  if (z.real() < 0.5L)  // reflection
    return std::log(pi / std::sin(pi * z)) - log_gamma(1.0L - z);
  z -= 1.0L;
  CplxL s = c[0];
  for (int i = 1; i < 9; i++) s += c[i] / (z + (long double)(i));
  const CplxL t = z + 7.5L;
  return 0.5L * std::log(2 * pi) + (z + 0.5L) * std::log(t) - t + std::log(s);
}

// 7-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kGlX[7] = {-0.9491079123427585, -0.7415311855993945,
                            -0.4058451513773972, 0.0,
                            0.4058451513773972,  0.7415311855993945,
                            0.9491079123427585};
constexpr double kGlW[7] = {0.1294849661688697, 0.2797053914892766,
                            0.3818300505051189, 0.4179591836734694,
                            0.3818300505051189, 0.2797053914892766,
                            0.1294849661688697};

}  // namespace detail

// e^{pi T/2} K_{iT}(x) via the cosine integral.
inline double bessel_K_scaled(double T, double x) {
  if (!(x > 0)) throw std::domain_error("bessel_K_scaled: need x > 0");
  if (T < 0) T = -T;
  const double Phi = 1e4;  // phase speed at the truncation point
  const double a = std::acosh((Phi + T) / x);
  const auto phase = [&](double t) { return x * std::sinh(t) - T * t; };
  const auto dphase = [&](double t) { return x * std::cosh(t) - T; };

  double sum = 0;
  double t0 = 0;
  while (t0 < a) {
    const double step =
        std::min({0.2, M_PI / (2.0 * std::max(std::abs(dphase(t0)), 1.0)),
                  a - t0});
    const double mid = t0 + step / 2, half = step / 2;
    double panel = 0;
    for (int i = 0; i < 7; i++)
      panel += detail::kGlW[i] * std::cos(phase(mid + half * detail::kGlX[i]));
    sum += panel * half;
    t0 += step;
  }
  // Tail from repeated integration by parts at t = a, where the phase speed
  // is Phi and strictly increasing.
  const double ph = phase(a), d1 = dphase(a), d2 = x * std::sinh(a),
               d3 = x * std::cosh(a);
  const double tail = -std::sin(ph) / d1 + std::cos(ph) * d2 / (d1 * d1 * d1) -
                      std::sin(ph) * (d3 / std::pow(d1, 4.0) -
                                      3.0 * d2 * d2 / std::pow(d1, 5.0));
  return sum + tail;
}

// Series oracle at T = 0: the classical K_0 expansion.
inline double bessel_K0_series(double x) {
  const double eulergamma = 0.5772156649015328606;
  double i0 = 1.0, term = 1.0, extra = 0.0, h = 0.0;
  for (int k = 1; k < 200; k++) {
    term *= (x * x / 4.0) / (double(k) * double(k));
    h += 1.0 / double(k);
    i0 += term;
    extra += term * h;
    if (term < 1e-20) break;
  }
  return -(std::log(x / 2.0) + eulergamma) * i0 + extra;
}

// Series oracle for T > 0: e^{pi T/2} K_{iT}(x) from the imaginary part of
// I_{iT}(x) and the reflection through sinh(pi T).
inline double bessel_K_series(double Td, double xd) {
  if (Td == 0) return bessel_K0_series(xd);
  const long double pi = 3.14159265358979323846L;
  const long double T = Td, x = xd;
  const detail::CplxL iT(0, T);
  detail::CplxL I = 0;
  const detail::CplxL logx = std::log(detail::CplxL(x / 2.0L));
  for (int k = 0; k < 400; k++) {
    const detail::CplxL lt = (2.0L * k + iT) * logx -
                             detail::log_gamma((long double)(k) + 1.0L) -
                             detail::log_gamma((long double)(k) + 1.0L + iT);
    const detail::CplxL term = std::exp(lt);
    I += term;
    if (k > 4 && std::abs(term) < 1e-22L * std::abs(I)) break;
  }
  // K_{iT} = -pi Im(I_{iT}) / sinh(pi T); scale by e^{pi T/2}.
  return double(-pi * I.imag() * std::exp(pi * T / 2.0L) / std::sinh(pi * T));
}

// Relative residual of the modified Bessel equation
// x^2 f'' + x f' - (x^2 - T^2) f = 0 on the scaled branch, via central
// differences.
inline double ode_residual(double T, double x, double h = 2e-3) {
  const double fm = bessel_K_scaled(T, x - h), f0 = bessel_K_scaled(T, x),
               fp = bessel_K_scaled(T, x + h);
  const double f1 = (fp - fm) / (2 * h), f2 = (fp - 2 * f0 + fm) / (h * h);
  const double resid = x * x * f2 + x * f1 - (x * x - T * T) * f0;
  const double scale = x * x * std::abs(f2) + x * std::abs(f1) +
                       std::abs(x * x - T * T) * std::abs(f0) + 1e-300;
  return std::abs(resid) / scale;
}

struct MomentReport {
  double sum = 0;
  double bound = 0;
  double ratio = 0;
};

// Sum over 1 <= m <= R of T e^{pi T} |K_{iT}(2 pi m y / N0)|^2 against
// C (T^{1/3} + R).
inline MomentReport bessel_moment_bound(double T, long R, double y, double N0,
                                        double C = 10.0) {
  MomentReport rep;
  for (long m = 1; m <= R; m++) {
    const double x = 2.0 * M_PI * double(m) * y / N0;
    if (x > 1e3) break;  // exponentially negligible beyond the window
    const double v = bessel_K_scaled(T, x);
    rep.sum += T * v * v;
  }
  rep.bound = C * (std::cbrt(T) + double(R));
  rep.ratio = rep.sum / rep.bound;
  return rep;
}

struct CrossoverReport {
  double term_smooth;    // (N0 T)^{1/6}
  double term_tail;      // (N0 T)^{1/2} / sqrt(y)
  double rhs;
  Rat cross_T{1, 6}, cross_N{1, 12};  // sqrt(y) = T^{1/6} N^{1/12}
  double crossover_sqrt_y;
};

inline CrossoverReport fourier_crossover(double T, double N0, double y) {
  if (!(y > 0)) throw std::domain_error("fourier_crossover: need y > 0");
  CrossoverReport rep;
  rep.term_smooth = std::pow(N0 * T, 1.0 / 6.0);
  rep.term_tail = std::sqrt(N0 * T / y);
  rep.rhs = rep.term_smooth + rep.term_tail;
  const double N = N0 * N0;
  rep.crossover_sqrt_y = std::pow(T, 1.0 / 6.0) * std::pow(N, 1.0 / 12.0);
  return rep;
}

}  // namespace supnorm::bessel
