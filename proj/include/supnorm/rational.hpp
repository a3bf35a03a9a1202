#pragma once

// Minimal exact rational arithmetic for the exponent bookkeeping. Values stay
// tiny (numerators and denominators well below 10^3), but intermediates use
// __int128 so normalisation never overflows.

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace supnorm::rat {

struct Rat {
  int64_t num = 0;
  int64_t den = 1;

  Rat() = default;
  Rat(int64_t n) : num(n), den(1) {}
  Rat(int64_t n, int64_t d) : num(n), den(d) { normalise(); }

  void normalise() {
    if (den == 0) throw std::domain_error("Rat: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  static Rat make(__int128 n, __int128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    __int128 a = n < 0 ? -n : n, b = d;
    while (b) {
      const __int128 t = a % b;
      a = b;
      b = t;
    }
    if (a > 1) {
      n /= a;
      d /= a;
    }
    return Rat{int64_t(n), int64_t(d), 0};
  }

  friend Rat operator+(Rat a, Rat b) {
    return make(__int128(a.num) * b.den + __int128(b.num) * a.den,
                __int128(a.den) * b.den);
  }
  friend Rat operator-(Rat a, Rat b) {
    return make(__int128(a.num) * b.den - __int128(b.num) * a.den,
                __int128(a.den) * b.den);
  }
  friend Rat operator*(Rat a, Rat b) {
    return make(__int128(a.num) * b.num, __int128(a.den) * b.den);
  }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw std::domain_error("Rat: division by zero");
    return make(__int128(a.num) * b.den, __int128(a.den) * b.num);
  }
  Rat operator-() const { return Rat{-num, den, 0}; }

  friend bool operator==(Rat a, Rat b) {
    return a.num == b.num && a.den == b.den;
  }
  friend std::strong_ordering operator<=>(Rat a, Rat b) {
    const __int128 l = __int128(a.num) * b.den, r = __int128(b.num) * a.den;
    return l < r ? std::strong_ordering::less
           : l > r ? std::strong_ordering::greater
                   : std::strong_ordering::equal;
  }

  double to_double() const { return double(num) / double(den); }
  std::string str() const {
    return den == 1 ? std::to_string(num)
                    : std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  Rat(int64_t n, int64_t d, int) : num(n), den(d) {}  // already normalised
};

}  // namespace supnorm::rat
