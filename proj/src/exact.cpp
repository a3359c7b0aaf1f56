#include "fefflab/exact.hpp"

#include <numbers>
#include <sstream>

#include "fefflab/errors.hpp"

namespace fefflab {

Rational factorial(unsigned n) {
  mpz_class f;
  mpz_fac_ui(f.get_mpz_t(), n);
  return Rational(f);
}

Rational parse_rational(const std::string& text) {
  if (text.empty()) throw ParseError("empty number");
  auto slash = text.find('/');
  auto dot = text.find('.');
  try {
    if (slash != std::string::npos) {
      Rational q(mpz_class(text.substr(0, slash), 10), mpz_class(text.substr(slash + 1), 10));
      if (q.get_den() == 0) throw ParseError("zero denominator in '" + text + "'");
      q.canonicalize();
      return q;
    }
    if (dot != std::string::npos) {
      std::string digits = text.substr(0, dot) + text.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+") throw ParseError("bad number '" + text + "'");
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, text.size() - dot - 1);
      Rational q(mpz_class(digits, 10), den);
      q.canonicalize();
      return q;
    }
    return Rational(mpz_class(text, 10));
  } catch (const std::invalid_argument&) {
    throw ParseError("bad number '" + text + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

ExactComplex ExactComplex::inverse() const {
  Rational n = norm_squared();
  if (sgn(n) == 0) throw DomainError("inverse of zero");
  return {re / n, -im / n};
}

std::string ExactComplex::str() const {
  if (is_real()) return re.get_str();
  std::ostringstream out;
  if (sgn(re) != 0) out << re.get_str() << (sgn(im) > 0 ? "+" : "");
  out << im.get_str() << "i";
  return out.str();
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  re += o.re;
  im += o.im;
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  re -= o.re;
  im -= o.im;
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

ExactComplex& ExactComplex::operator/=(const Rational& q) {
  if (sgn(q) == 0) throw DomainError("division by zero");
  re /= q;
  im /= q;
  return *this;
}

double PiMultiple::value() const { return complex_value().real(); }

std::complex<double> PiMultiple::complex_value() const {
  return coeff.to_complex() * std::pow(std::numbers::pi, pi_power);
}

std::string PiMultiple::str() const {
  if (coeff.is_zero()) return "0";
  std::string c = coeff.is_real() ? coeff.str() : "(" + coeff.str() + ")";
  if (pi_power == 0) return c;
  std::string p = pi_power == 1 ? "pi" : "pi^" + std::to_string(pi_power);
  return c + "*" + p;
}

}  // namespace fefflab
