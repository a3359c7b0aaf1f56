#include "fefflab/corpus.hpp"

namespace fefflab {

Rational Corpus::rational(unsigned num_max, unsigned den_max) {
  const long p = static_cast<long>(draw(2 * num_max + 1)) - static_cast<long>(num_max);
  const long q = static_cast<long>(draw(den_max)) + 1;
  Rational r(p, q);
  r.canonicalize();
  return r;
}

SpherePolynomial Corpus::holomorphic(unsigned max_degree) {
  SpherePolynomial p;
  while (p.is_zero()) {
    const unsigned deg = static_cast<unsigned>(draw(max_degree + 1));
    for (unsigned a = 0; a <= deg; ++a) {
      for (unsigned b = 0; a + b <= deg; ++b) {
        if (draw(3) == 0) continue;
        p.add_term({a, b, 0, 0}, ExactComplex(rational(), rational()));
      }
    }
  }
  return p;
}

SpherePotential Corpus::circular() {
  static const Monomial kMonomials[] = {{1, 0, 1, 0}, {1, 0, 0, 1}, {0, 1, 0, 1}, {2, 0, 2, 0}, {2, 0, 1, 1},
                                        {2, 0, 0, 2}, {1, 1, 1, 1}, {1, 1, 0, 2}, {0, 2, 0, 2}};
  SpherePolynomial p;
  double l1 = 0.0;
  for (const auto& m : kMonomials) {
    const ExactComplex c(rational(), m.a == m.c ? Rational(0) : rational());
    if (c.is_zero()) continue;
    l1 += std::abs(c.to_complex());
    p.add_term(m, c);
    if (!(m == m.conj())) p.add_term(m.conj(), c.conj());
  }
  if (p.is_zero()) p.add_term({2, 0, 2, 0}, ExactComplex(1));
  return SpherePotential::polynomial(p, 0.04 / std::max(l1, 1.0));
}

std::array<ExactComplex, 4> Corpus::invertible() {
  for (;;) {
    std::array<ExactComplex, 4> m;
    for (auto& e : m) e = ExactComplex(rational(3, 3), rational(3, 3));
    if (!(m[0] * m[3] - m[1] * m[2]).is_zero()) return m;
  }
}

std::array<ExactComplex, 4> Corpus::unitary() {
  const Rational a = rational(), b = rational(), c = rational(), d = rational();
  return cayley_unitary(a, b, c, d);
}

}  // namespace fefflab
