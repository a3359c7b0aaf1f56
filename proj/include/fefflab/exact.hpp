#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>

namespace fefflab {

using Rational = mpq_class;

Rational factorial(unsigned n);

/// Parses "3", "-3/4" or a finite decimal such as "0.25" into an exact rational.
Rational parse_rational(const std::string& text);

std::string to_string(const Rational& q);

/// Element of Q(i) with exact rational parts.
struct ExactComplex {
  Rational re{0};
  Rational im{0};

  ExactComplex() = default;
  ExactComplex(Rational real) : re(std::move(real)) {}  // NOLINT(google-explicit-constructor)
  ExactComplex(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}
  ExactComplex(long real) : re(real) {}  // NOLINT(google-explicit-constructor)

  static ExactComplex i() { return {Rational(0), Rational(1)}; }

  [[nodiscard]] bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  [[nodiscard]] bool is_real() const { return sgn(im) == 0; }
  [[nodiscard]] ExactComplex conj() const { return {re, -im}; }
  [[nodiscard]] Rational norm_squared() const { return re * re + im * im; }
  [[nodiscard]] ExactComplex inverse() const;
  [[nodiscard]] std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  [[nodiscard]] std::string str() const;

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& operator/=(const Rational& q);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator/(ExactComplex a, const Rational& q) { return a /= q; }
  friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) { return a * b.inverse(); }
  friend ExactComplex operator-(const ExactComplex& a) { return {-a.re, -a.im}; }
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.re == b.re && a.im == b.im; }
};

/// Exact quantity coeff·π^pi_power.
struct PiMultiple {
  ExactComplex coeff;
  int pi_power = 0;

  [[nodiscard]] double value() const;
  [[nodiscard]] std::complex<double> complex_value() const;
  [[nodiscard]] bool is_real() const { return coeff.is_real(); }
  /// "64/9*pi", "-1/3*pi^2", "0".
  [[nodiscard]] std::string str() const;

  friend bool operator==(const PiMultiple& a, const PiMultiple& b) {
    if (a.coeff.is_zero() && b.coeff.is_zero()) return true;
    return a.pi_power == b.pi_power && a.coeff == b.coeff;
  }
};

}  // namespace fefflab
