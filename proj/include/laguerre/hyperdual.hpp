#pragma once
#include <cmath>

namespace laguerre {

/// Hyper-dual number f + f1 e1 + f2 e2 + f12 e1 e2 with e1^2 = e2^2 = 0.
/// Seeding e1 along u_a and e2 along u_b yields d_a f, d_b f and d_ab f exactly.
struct HyperDual {
  double f = 0, f1 = 0, f2 = 0, f12 = 0;

  HyperDual() = default;
  HyperDual(double v) : f(v) {}  // NOLINT(google-explicit-constructor)
  HyperDual(double v, double a, double b, double ab) : f(v), f1(a), f2(b), f12(ab) {}

  HyperDual& operator+=(const HyperDual& o) {
    f += o.f; f1 += o.f1; f2 += o.f2; f12 += o.f12;
    return *this;
  }
  HyperDual& operator-=(const HyperDual& o) {
    f -= o.f; f1 -= o.f1; f2 -= o.f2; f12 -= o.f12;
    return *this;
  }
  HyperDual& operator*=(const HyperDual& o) { return *this = *this * o; }
  HyperDual& operator/=(const HyperDual& o) { return *this = *this / o; }

  friend HyperDual operator+(HyperDual a, const HyperDual& b) { return a += b; }
  friend HyperDual operator-(HyperDual a, const HyperDual& b) { return a -= b; }
  friend HyperDual operator-(const HyperDual& a) { return {-a.f, -a.f1, -a.f2, -a.f12}; }
  friend HyperDual operator*(const HyperDual& a, const HyperDual& b) {
    return {a.f * b.f, a.f1 * b.f + a.f * b.f1, a.f2 * b.f + a.f * b.f2,
            a.f12 * b.f + a.f1 * b.f2 + a.f2 * b.f1 + a.f * b.f12};
  }
  friend HyperDual operator/(const HyperDual& a, const HyperDual& b) {
    return a * inverse(b);
  }

  friend HyperDual inverse(const HyperDual& b) {
    const double i = 1.0 / b.f;
    return {i, -b.f1 * i * i, -b.f2 * i * i, (2.0 * b.f1 * b.f2 * i - b.f12) * i * i};
  }
};

// Chain rule for a scalar function with value v, first derivative d, second d2.
inline HyperDual lift(const HyperDual& x, double v, double d, double d2) {
  return {v, d * x.f1, d * x.f2, d * x.f12 + d2 * x.f1 * x.f2};
}

inline HyperDual sqrt(const HyperDual& x) {
  const double s = std::sqrt(x.f);
  return lift(x, s, 0.5 / s, -0.25 / (s * x.f));
}
inline HyperDual sin(const HyperDual& x) {
  return lift(x, std::sin(x.f), std::cos(x.f), -std::sin(x.f));
}
inline HyperDual cos(const HyperDual& x) {
  return lift(x, std::cos(x.f), -std::sin(x.f), -std::cos(x.f));
}
inline HyperDual exp(const HyperDual& x) {
  const double e = std::exp(x.f);
  return lift(x, e, e, e);
}
inline HyperDual log(const HyperDual& x) {
  return lift(x, std::log(x.f), 1.0 / x.f, -1.0 / (x.f * x.f));
}

inline double value_of(double x) { return x; }
inline double value_of(const HyperDual& x) { return x.f; }

}  // namespace laguerre
