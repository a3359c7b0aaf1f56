#include "fefflab/polynomial_literal.hpp"

#include <cctype>

#include "fefflab/errors.hpp"

namespace fefflab {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  SpherePolynomial run() {
    SpherePolynomial p = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " at position " + std::to_string(pos_) + " in '" + s_ + "'");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool starts_primary(char c) const { return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' || c == 'z' || c == 'w' || c == 'i'; }

  SpherePolynomial expr() {
    SpherePolynomial p;
    if (peek() == '-') {
      ++pos_;
      p = -term();
    } else {
      if (peek() == '+') ++pos_;
      p = term();
    }
    for (;;) {
      const char c = peek();
      if (c == '+') {
        ++pos_;
        p += term();
      } else if (c == '-') {
        ++pos_;
        p -= term();
      } else {
        return p;
      }
    }
  }

  SpherePolynomial term() {
    SpherePolynomial p = power();
    for (;;) {
      const char c = peek();
      if (c == '*') {
        ++pos_;
        p = p * power();
      } else if (c == '/') {
        ++pos_;
        const SpherePolynomial d = power();
        if (d.is_zero()) fail("division by zero");
        if (d.size() != 1 || d.terms().begin()->first != Monomial{}) fail("division by a non-constant");
        p = p * d.terms().begin()->second.inverse();
      } else if (starts_primary(c)) {
        p = p * power();
      } else {
        return p;
      }
    }
  }

  SpherePolynomial power() {
    if (peek() == '-') {
      ++pos_;
      return -power();
    }
    SpherePolynomial base = primary();
    if (peek() == '^') {
      ++pos_;
      skip();
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a non-negative integer exponent");
      const unsigned long e = std::stoul(s_.substr(start, pos_ - start));
      if (e > 64) fail("exponent too large");
      base = base.pow(static_cast<unsigned>(e));
    }
    return base;
  }

  SpherePolynomial primary() {
    const char c = peek();
    if (c == '(') {
      ++pos_;
      SpherePolynomial p = expr();
      if (peek() != ')') fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return SpherePolynomial(ExactComplex(parse_rational(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "z") return SpherePolynomial::z();
      if (name == "w") return SpherePolynomial::w();
      if (name == "zb") return SpherePolynomial::zbar();
      if (name == "wb") return SpherePolynomial::wbar();
      if (name == "i") return SpherePolynomial(ExactComplex::i());
      pos_ = start;
      fail("unknown identifier '" + name + "'");
    }
    fail(c ? "unexpected character" : "unexpected end of input");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

SpherePolynomial parse_polynomial(const std::string& text) { return Parser(text).run(); }

}  // namespace fefflab
