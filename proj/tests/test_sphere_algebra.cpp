#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fefflab/corpus.hpp"
#include "fefflab/errors.hpp"
#include "fefflab/polynomial_literal.hpp"
#include "fefflab/sphere_algebra.hpp"

using namespace fefflab;

namespace {

const SpherePolynomial z = SpherePolynomial::z(), w = SpherePolynomial::w(), zb = SpherePolynomial::zbar(),
                       wb = SpherePolynomial::wbar();

SpherePolynomial L(const SpherePolynomial& p) { return apply_field(SphereField::L, p); }
SpherePolynomial Lb(const SpherePolynomial& p) { return apply_field(SphereField::Lbar, p); }
SpherePolynomial T(const SpherePolynomial& p) { return apply_field(SphereField::T, p); }

PiMultiple pi2(Rational q) { return {ExactComplex(std::move(q)), 2}; }
PiMultiple pi1(Rational q) { return {ExactComplex(std::move(q)), 1}; }

Rational q(long a, long b = 1) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

std::vector<SpherePolynomial> corpus(std::uint64_t seed, int n) {
  Corpus c(seed);
  std::vector<SpherePolynomial> out;
  for (int k = 0; k < n; ++k) {
    SpherePolynomial p = c.holomorphic(3);
    SpherePolynomial r = c.holomorphic(2);
    out.push_back(p * r.conj() + c.holomorphic(2));
  }
  return out;
}

}  // namespace

TEST_CASE("ring operations") {
  CHECK((z * wb).conj() == zb * w);
  CHECK((z + zb) * (z + zb) == z * z + ExactComplex(2) * z * zb + zb * zb);
  CHECK((z * ExactComplex(0)).is_zero());
  CHECK(poly_arith(z, w, PolyOp::add) == z + w);
  CHECK(poly_arith(z, w, PolyOp::mul) == z * w);
  CHECK(poly_arith(z, {}, PolyOp::scale, ExactComplex(0)).is_zero());
  CHECK(poly_arith(z * wb, {}, PolyOp::conj) == zb * w);
  CHECK((z - z).size() == 0);
}

TEST_CASE("polynomial literals round-trip") {
  CHECK(parse_polynomial("2*z^2*wb^1") == ExactComplex(2) * z * z * wb);
  CHECK(parse_polynomial("(1/2+i)*zb*w - 0.25") ==
        ExactComplex(q(1, 2), q(1)) * zb * w - SpherePolynomial(ExactComplex(q(1, 4))));
  CHECK(parse_polynomial("0.25") == SpherePolynomial(ExactComplex(q(1, 4))));
  CHECK(parse_polynomial("010/08") == SpherePolynomial(ExactComplex(q(5, 4))));
  CHECK(parse_polynomial("3i z") == ExactComplex(0, 3) * z);
  CHECK(parse_polynomial("(z+w)^2/2") == ExactComplex(q(1, 2)) * (z + w) * (z + w));
  for (const auto& p : corpus(5, 20)) CHECK(parse_polynomial(p.str()) == p);
  CHECK_THROWS_AS(parse_polynomial("z^"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("z/w"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("q"), ParseError);
}

TEST_CASE("vector fields on monomials") {
  CHECK(L(z) == wb);
  CHECK(L(w) == -zb);
  CHECK(Lb(zb) == w);
  CHECK(L(z * zb + w * wb).is_zero());
  CHECK(Lb(z * zb + w * wb).is_zero());
  CHECK(T(z * z * w) == ExactComplex(0, 3) * z * z * w);
  CHECK(T(z * zb).is_zero());
  CHECK(apply_field(SphereField::S, z * z * wb) == ExactComplex(3) * z * z * wb);
}

TEST_CASE("commutators hold exactly") {
  for (const auto& p : corpus(11, 25)) {
    CHECK(L(Lb(p)) - Lb(L(p)) == ExactComplex(0, -1) * T(p));
    CHECK(L(T(p)) - T(L(p)) == ExactComplex(0, 2) * L(p));
    CHECK(Lb(T(p)) - T(Lb(p)) == ExactComplex(0, -2) * Lb(p));
  }
}

TEST_CASE("sphere and ball integrals") {
  CHECK(integrate_sphere(1) == pi2(q(2)));
  CHECK(integrate_sphere(z * wb) == pi2(q(0)));
  CHECK(integrate_sphere(z * zb * w * wb) == pi2(q(1, 3)));
  CHECK(integrate_ball(1) == pi2(q(1, 2)));
  CHECK(integrate_ball(z * zb) == pi2(q(1, 6)));
  CHECK(integrate_ball(z) == pi2(q(0)));
  CHECK(integrate_sphere(1).value() == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
}

TEST_CASE("integration is tangentially divergence free and well defined on the sphere") {
  const SpherePolynomial one_form = z * zb + w * wb;
  for (const auto& p : corpus(23, 25)) {
    CHECK(integrate_sphere(L(p)).coeff.is_zero());
    CHECK(integrate_sphere(Lb(p)).coeff.is_zero());
    CHECK(integrate_sphere(T(p)).coeff.is_zero());
    CHECK(integrate_sphere(one_form * p) == integrate_sphere(p));
    CHECK(integrate_sphere(p.conj()).coeff == integrate_sphere(p).coeff.conj());
  }
}

TEST_CASE("S acts by degree on homogeneous polynomials") {
  const SpherePolynomial p = z * z * wb + ExactComplex(3) * w * zb * wb - z * w * zb;
  REQUIRE(p.is_homogeneous(3));
  CHECK(apply_field(SphereField::S, p) == ExactComplex(3) * p);
}

TEST_CASE("second variation of Q on named modes") {
  CHECK(second_variation_Q(z * z + zb * zb) == pi1(q(64, 9)));
  CHECK(second_variation_Q(z * wb + zb * w).coeff.is_zero());
  CHECK(second_variation_Q(z * z * wb * wb + zb * zb * w * w) == pi1(q(-64, 45)));
  CHECK(second_variation_Q_expanded(z * z + zb * zb) == pi1(q(64, 9)));
}

TEST_CASE("second variation requires real zero-mean input") {
  CHECK_THROWS_AS(second_variation_Q(z), PreconditionError);
  CHECK_THROWS_AS(second_variation_Q(z * zb), PreconditionError);
  CHECK_NOTHROW(second_variation_Q(z * zb - w * wb));
}

TEST_CASE("closed forms") {
  CHECK(closed_form_coeff(ExampleKind::A, 1, 0).coeff.is_zero());
  CHECK(closed_form_coeff(ExampleKind::A, 2, 0) == pi1(q(64, 9)));
  CHECK(closed_form_coeff(ExampleKind::B, 1, 5).coeff.is_zero());
  CHECK_THROWS_AS(closed_form_coeff(ExampleKind::A, 0, 0), DomainError);
  CHECK_THROWS_AS(closed_form_coeff(ExampleKind::B, 0, 3), DomainError);
}

TEST_CASE("exact second variation matches the closed forms on every small mode") {
  for (unsigned j = 0; j <= 8; ++j)
    for (unsigned k = 0; j + k <= 8; ++k) {
      if (j + k == 0) continue;
      const PiMultiple got = second_variation_Q(example_mode(ExampleKind::A, j, k));
      CHECK(got == closed_form_coeff(ExampleKind::A, j, k));
      CHECK(got == second_variation_Q_expanded(example_mode(ExampleKind::A, j, k)));
      if (j + k >= 2) CHECK(got.value() > 0);
    }
  for (unsigned j = 1; j <= 8; ++j)
    for (unsigned k = 1; j + k <= 8; ++k) {
      const PiMultiple got = second_variation_Q(example_mode(ExampleKind::B, j, k));
      CHECK(got == closed_form_coeff(ExampleKind::B, j, k));
      if (j >= 2 && k >= 2) CHECK(got.value() < 0);
    }
}

TEST_CASE("integration by parts identities") {
  for (const auto& g : {z + zb, z * wb + zb * w, SpherePolynomial{}, z * z * wb + zb * zb * w + z * zb * w * wb}) {
    for (const auto& r : parts_identities_check(g)) CHECK(r.coeff.is_zero());
  }
}

TEST_CASE("solving the holomorphic degree equation") {
  CHECK(solve_X(1) == SpherePolynomial(ExactComplex(q(1, 2))));
  CHECK(solve_X(z * z * w) == ExactComplex(q(1, 5)) * z * z * w);
  CHECK(solve_X(SpherePolynomial(3) + z) == SpherePolynomial(ExactComplex(q(3, 2))) + ExactComplex(q(1, 3)) * z);
  const SpherePolynomial h = parse_polynomial("1 - 2*z*w + (3+i)*w^3");
  CHECK(euler_holomorphic(solve_X(h)) + ExactComplex(2) * solve_X(h) == h);
  CHECK_THROWS_AS(solve_X(zb), DomainError);
}

TEST_CASE("L4 Sobolev check") {
  const JLReport one = jl_check(1);
  CHECK(one.holds);
  CHECK(one.equality);
  CHECK(one.lhs() == doctest::Approx(2 * std::numbers::pi * std::numbers::pi));
  const JLReport zz = jl_check(z);
  CHECK(zz.lhs_radicand == q(4, 3));
  CHECK(zz.rhs_coeff == q(2));
  CHECK(zz.lhs() == doctest::Approx(2 * std::numbers::pi * std::numbers::pi / std::sqrt(3.0)));
  CHECK(jl_check(z + w).holds);
  CHECK_THROWS_AS(jl_check(zb), DomainError);
}

TEST_CASE("unitary substitution preserves sphere integrals") {
  const auto U = cayley_unitary(q(1, 3), q(-1, 2), q(2), q(1, 5));
  const auto& m = U;
  // U U* = I
  CHECK(m[0] * m[0].conj() + m[1] * m[1].conj() == ExactComplex(1));
  CHECK(m[0] * m[2].conj() + m[1] * m[3].conj() == ExactComplex(0));
  for (const auto& p : corpus(31, 10)) {
    const SpherePolynomial s = substitute_linear(p * p.conj(), U);
    CHECK(integrate_sphere(s) == integrate_sphere(p * p.conj()));
    CHECK(integrate_ball(s) == integrate_ball(p * p.conj()));
  }
}

TEST_CASE("compiled evaluation matches direct evaluation") {
  const SpherePolynomial p = parse_polynomial("(2-i)*z^3*wb + zb^2*w^2 - 0.5*w*wb + 7");
  const CompiledPolynomial c(p);
  const std::complex<double> a(0.3, -0.7), b(0.6, 0.1);
  CHECK(std::abs(c(a, b) - p.evaluate(a, b)) < 1e-13);
  const std::complex<double> direct = (2.0 - std::complex<double>(0, 1)) * a * a * a * std::conj(b) +
                                      std::conj(a) * std::conj(a) * b * b - 0.5 * std::norm(b) + 7.0;
  CHECK(std::abs(c(a, b) - direct) < 1e-13);
}
