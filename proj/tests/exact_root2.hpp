#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>

// Exact arithmetic in Q[sqrt(2)]: numbers of the form a + b*sqrt(2) with
// rational a, b. Enough to evaluate the single-qubit enumeration oracle in
// closed form, with equality instead of tolerances.

namespace exact {

struct Frac {
  std::int64_t num = 0;
  std::int64_t den = 1;

  constexpr Frac() = default;
  constexpr Frac(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { normalize(); }

  constexpr void normalize() {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  friend constexpr Frac operator+(Frac a, Frac b) {
    return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend constexpr Frac operator-(Frac a, Frac b) {
    return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend constexpr Frac operator*(Frac a, Frac b) { return Frac(a.num * b.num, a.den * b.den); }
  friend constexpr bool operator==(Frac a, Frac b) {
    return a.num == b.num && a.den == b.den;
  }
};

/// a + b*sqrt(2)
struct Root2 {
  Frac a;
  Frac b;

  friend constexpr Root2 operator+(Root2 x, Root2 y) { return {x.a + y.a, x.b + y.b}; }
  friend constexpr Root2 operator-(Root2 x, Root2 y) { return {x.a - y.a, x.b - y.b}; }
  friend constexpr Root2 operator*(Root2 x, Root2 y) {
    // (a1 + b1 r)(a2 + b2 r) = a1 a2 + 2 b1 b2 + (a1 b2 + b1 a2) r
    return {x.a * y.a + Frac(2) * (x.b * y.b), x.a * y.b + x.b * y.a};
  }
  friend constexpr bool operator==(Root2 x, Root2 y) { return x.a == y.a && x.b == y.b; }

  double value() const {
    return static_cast<double>(a.num) / static_cast<double>(a.den) +
           1.4142135623730950488 * static_cast<double>(b.num) / static_cast<double>(b.den);
  }
};

inline constexpr Root2 frac(std::int64_t num, std::int64_t den = 1) {
  return {Frac(num, den), Frac(0)};
}

/// cos^2(pi/8) = 1/2 + sqrt(2)/4 and sin^2(pi/8) = 1/2 - sqrt(2)/4.
inline constexpr Root2 cos2_pi8() { return {Frac(1, 2), Frac(1, 4)}; }
inline constexpr Root2 sin2_pi8() { return {Frac(1, 2), Frac(-1, 4)}; }

/// 1/2 + (2 alpha - 1)^2 / 2 evaluated exactly.
inline constexpr Root2 pass_probability(Root2 alpha) {
  const Root2 bias = frac(2) * alpha - frac(1);
  return frac(1, 2) + frac(1, 2) * (bias * bias);
}

}  // namespace exact
