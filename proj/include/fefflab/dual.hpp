#pragma once

#include <array>
#include <cmath>

namespace fefflab {

/// Second-order forward-mode jet in N real variables: value, gradient and
/// (symmetric, row-major) Hessian, propagated exactly through arithmetic and
/// elementary functions.
template <int N>
struct Dual2 {
  double v = 0.0;
  std::array<double, N> g{};
  std::array<double, N * N> h{};

  Dual2() = default;
  Dual2(double value) : v(value) {}  // NOLINT(google-explicit-constructor)

  static Dual2 variable(double value, int index) {
    Dual2 d(value);
    d.g[index] = 1.0;
    return d;
  }

  double hess(int i, int j) const { return h[i * N + j]; }

  Dual2& operator+=(const Dual2& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) g[i] += o.g[i];
    for (int i = 0; i < N * N; ++i) h[i] += o.h[i];
    return *this;
  }
  Dual2& operator-=(const Dual2& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) g[i] -= o.g[i];
    for (int i = 0; i < N * N; ++i) h[i] -= o.h[i];
    return *this;
  }
  Dual2& operator*=(const Dual2& o) {
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j)
        h[i * N + j] = v * o.h[i * N + j] + o.v * h[i * N + j] + g[i] * o.g[j] + o.g[i] * g[j];
    for (int i = 0; i < N; ++i) g[i] = v * o.g[i] + o.v * g[i];
    v *= o.v;
    return *this;
  }
  Dual2& operator*=(double s) {
    v *= s;
    for (auto& x : g) x *= s;
    for (auto& x : h) x *= s;
    return *this;
  }

  friend Dual2 operator+(Dual2 a, const Dual2& b) { return a += b; }
  friend Dual2 operator-(Dual2 a, const Dual2& b) { return a -= b; }
  friend Dual2 operator*(Dual2 a, const Dual2& b) { return a *= b; }
  friend Dual2 operator*(Dual2 a, double s) { return a *= s; }
  friend Dual2 operator*(double s, Dual2 a) { return a *= s; }
  friend Dual2 operator+(Dual2 a, double s) {
    a.v += s;
    return a;
  }
  friend Dual2 operator+(double s, Dual2 a) { return a + s; }
  friend Dual2 operator-(Dual2 a, double s) {
    a.v -= s;
    return a;
  }
  friend Dual2 operator-(double s, const Dual2& a) { return -a + s; }
  friend Dual2 operator-(Dual2 a) { return a *= -1.0; }
  friend Dual2 operator/(const Dual2& a, const Dual2& b) { return a * reciprocal(b); }
  friend Dual2 operator/(Dual2 a, double s) { return a *= (1.0 / s); }
  friend Dual2 operator/(double s, const Dual2& b) { return s * reciprocal(b); }
};

/// Applies a scalar function with known first and second derivatives at x.v.
template <int N>
Dual2<N> chain(const Dual2<N>& x, double f, double df, double d2f) {
  Dual2<N> r(f);
  for (int i = 0; i < N; ++i) r.g[i] = df * x.g[i];
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) r.h[i * N + j] = df * x.h[i * N + j] + d2f * x.g[i] * x.g[j];
  return r;
}

template <int N>
Dual2<N> reciprocal(const Dual2<N>& x) {
  double r = 1.0 / x.v;
  return chain(x, r, -r * r, 2.0 * r * r * r);
}

template <int N>
Dual2<N> square(const Dual2<N>& x) {
  return x * x;
}

template <int N>
Dual2<N> sqrt(const Dual2<N>& x) {
  double s = std::sqrt(x.v);
  return chain(x, s, 0.5 / s, -0.25 / (s * x.v));
}

template <int N>
Dual2<N> cbrt(const Dual2<N>& x) {
  double c = std::cbrt(x.v);
  return chain(x, c, c / (3.0 * x.v), -2.0 * c / (9.0 * x.v * x.v));
}

template <int N>
Dual2<N> pow(const Dual2<N>& x, double p) {
  double f = std::pow(x.v, p);
  return chain(x, f, p * f / x.v, p * (p - 1.0) * f / (x.v * x.v));
}

template <int N>
Dual2<N> exp(const Dual2<N>& x) {
  double e = std::exp(x.v);
  return chain(x, e, e, e);
}

template <int N>
Dual2<N> log(const Dual2<N>& x) {
  return chain(x, std::log(x.v), 1.0 / x.v, -1.0 / (x.v * x.v));
}

template <int N>
Dual2<N> sin(const Dual2<N>& x) {
  double s = std::sin(x.v);
  return chain(x, s, std::cos(x.v), -s);
}

template <int N>
Dual2<N> cos(const Dual2<N>& x) {
  double c = std::cos(x.v);
  return chain(x, c, -std::sin(x.v), -c);
}

}  // namespace fefflab
