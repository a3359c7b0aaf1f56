#pragma once

#include <array>
#include <complex>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "fefflab/exact.hpp"

namespace fefflab {

/// z^a w^b z̄^c w̄^d.
struct Monomial {
  unsigned a = 0;
  unsigned b = 0;
  unsigned c = 0;
  unsigned d = 0;

  [[nodiscard]] unsigned degree() const { return a + b + c + d; }
  [[nodiscard]] Monomial conj() const { return {c, d, a, b}; }
  [[nodiscard]] bool holomorphic() const { return c == 0 && d == 0; }
  friend Monomial operator*(const Monomial& x, const Monomial& y) {
    return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d};
  }
  friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

/// Polynomial in z, w, z̄, w̄ with exact Q(i) coefficients. Zero terms are never stored.
class SpherePolynomial {
 public:
  using Terms = std::map<Monomial, ExactComplex>;

  SpherePolynomial() = default;
  SpherePolynomial(const ExactComplex& constant);  // NOLINT(google-explicit-constructor)
  SpherePolynomial(long constant) : SpherePolynomial(ExactComplex(constant)) {}  // NOLINT
  static SpherePolynomial monomial(const Monomial& m, const ExactComplex& coeff = ExactComplex(1));
  static SpherePolynomial z() { return monomial({1, 0, 0, 0}); }
  static SpherePolynomial w() { return monomial({0, 1, 0, 0}); }
  static SpherePolynomial zbar() { return monomial({0, 0, 1, 0}); }
  static SpherePolynomial wbar() { return monomial({0, 0, 0, 1}); }

  [[nodiscard]] const Terms& terms() const { return terms_; }
  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] std::size_t size() const { return terms_.size(); }
  [[nodiscard]] unsigned degree() const;
  [[nodiscard]] ExactComplex coefficient(const Monomial& m) const;

  /// Adds coeff·m, pruning a resulting zero.
  void add_term(const Monomial& m, const ExactComplex& coeff);

  [[nodiscard]] SpherePolynomial conj() const;
  [[nodiscard]] bool is_real() const { return conj() == *this; }
  [[nodiscard]] bool is_holomorphic() const;
  /// True when every monomial satisfies a+b = c+d, i.e. T p = 0.
  [[nodiscard]] bool is_circular() const;
  [[nodiscard]] bool is_homogeneous(unsigned k) const;
  [[nodiscard]] SpherePolynomial pow(unsigned n) const;

  [[nodiscard]] std::complex<double> evaluate(std::complex<double> z, std::complex<double> w) const;
  /// Human-readable literal accepted by parse_polynomial.
  [[nodiscard]] std::string str() const;

  SpherePolynomial& operator+=(const SpherePolynomial& o);
  SpherePolynomial& operator-=(const SpherePolynomial& o);
  SpherePolynomial& operator*=(const ExactComplex& s);

  friend SpherePolynomial operator+(SpherePolynomial a, const SpherePolynomial& b) { return a += b; }
  friend SpherePolynomial operator-(SpherePolynomial a, const SpherePolynomial& b) { return a -= b; }
  friend SpherePolynomial operator-(SpherePolynomial a) { return a *= ExactComplex(-1); }
  friend SpherePolynomial operator*(const SpherePolynomial& a, const SpherePolynomial& b);
  friend SpherePolynomial operator*(SpherePolynomial a, const ExactComplex& s) { return a *= s; }
  friend SpherePolynomial operator*(const ExactComplex& s, SpherePolynomial a) { return a *= s; }
  friend bool operator==(const SpherePolynomial& a, const SpherePolynomial& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

enum class PolyOp { add, mul, scale, conj };

/// Ring operation dispatcher: add/mul use q, scale uses s, conj ignores both.
SpherePolynomial poly_arith(const SpherePolynomial& p, const SpherePolynomial& q, PolyOp op,
                            const ExactComplex& s = ExactComplex(1));

/// Vector fields on C² tangent to (or, for S, normal to) the unit sphere:
///   L = w̄∂_z − z̄∂_w,  L̄ = w∂_z̄ − z∂_w̄,
///   T = i(z∂_z + w∂_w − z̄∂_z̄ − w̄∂_w̄),  S = z∂_z + w∂_w + z̄∂_z̄ + w̄∂_w̄.
enum class SphereField { L, Lbar, T, S };

SpherePolynomial apply_field(SphereField field, const SpherePolynomial& p);

/// Holomorphic-degree operator z∂_z + w∂_w (eigenvalue a+b).
SpherePolynomial euler_holomorphic(const SpherePolynomial& p);

/// ∫_{S³} p η, exact, as a multiple of π².
PiMultiple integrate_sphere(const SpherePolynomial& p);
/// ∫_{|z|²+|w|²<1} p dV, exact, as a multiple of π².
PiMultiple integrate_ball(const SpherePolynomial& p);

/// Coefficient of ε² in Q(Z_ε) for G = εG̊ on the unit sphere,
/// (1/3π)∫(5|TG̊|² − 2|LL̄G̊+2G̊|²)η, as a multiple of π.
/// Requires G̊ real with zero sphere mean (PreconditionError otherwise).
PiMultiple second_variation_Q(const SpherePolynomial& g);

/// The same ε² coefficient assembled from the first printed form,
/// (1/3π)∫(5|TG̊|² − 2|LL̄G̊|² + 8|LG̊|² − 8G̊²)η.
PiMultiple second_variation_Q_expanded(const SpherePolynomial& g);

/// ε-coefficients of the Fefferman-measure and volume expansions about the unit
/// sphere, as multiples of π² (before the 2^{7/3}/3, 2^{-2/3}/9 prefactors are applied):
/// first_F  = ∫G̊η,
/// second_F = ∫(5|TG̊|² − 2|LL̄G̊|² + 8|LG̊|² + 16G̊²)η,
/// first_V  = ∫G̊η,  second_V = ∫G̊²η.
struct SphereExpansionIntegrals {
  PiMultiple first_F;
  PiMultiple second_F;
  PiMultiple first_V;
  PiMultiple second_V;
};
SphereExpansionIntegrals sphere_expansion_integrals(const SpherePolynomial& g);

enum class ExampleKind { A, B };

/// z^j w^k + z̄^j w̄^k (kind A) or z^j w̄^k + z̄^j w^k (kind B).
SpherePolynomial example_mode(ExampleKind kind, unsigned j, unsigned k);

/// Closed-form ε² coefficients of Q for the example modes, as multiples of π:
///   A: (16/3)·j!k!/(j+k+1)!·(j+k+2)(j+k−1),   (j,k) ≠ (0,0)
///   B: −(8/3)·j!k!/(j+k+1)!·(j+2)(j−1)(k+2)(k−1),   j,k ≥ 1
PiMultiple closed_form_coeff(ExampleKind kind, unsigned j, unsigned k);

/// Left-minus-right residuals of the four integration-by-parts identities
///   ∫(LL̄+L̄L)G/2 η = 0
///   2 Im ∫L̄G·LTG η = ∫|TG|² η
///   2 Re ∫(LL̄G)² η = 2∫|LL̄G|² η − ∫|TG|² η
///   ∫G·(LL̄+L̄L)G/2 η = −∫|LG|² η
/// each as a multiple of π².
std::array<PiMultiple, 4> parts_identities_check(const SpherePolynomial& g);

/// Solves (z∂_z + w∂_w + 2) g = h for holomorphic h.
SpherePolynomial solve_X(const SpherePolynomial& h);

/// Sobolev-type check ‖g‖²_{L⁴(S³)} ≤ (1/(√2π))∫(|g|²+|Lg|²)η, rescaled as
/// lhs = √2π·(∫|g|⁴η)^{1/2} ≤ rhs = ∫(|g|²+|Lg|²)η. Both are multiples of π²:
/// lhs = sqrt(lhs_radicand)·π², rhs = rhs_coeff·π². The comparison is exact.
struct JLReport {
  Rational lhs_radicand;  ///< 2·(∫|g|⁴η)/π²
  Rational rhs_coeff;
  double lhs_coeff = 0.0;  ///< sqrt(lhs_radicand)
  bool holds = false;      ///< lhs_radicand ≤ rhs_coeff², exactly
  bool equality = false;
  [[nodiscard]] double lhs() const;
  [[nodiscard]] double rhs() const;
};
JLReport jl_check(const SpherePolynomial& g);

/// Exact substitution (z, w) ↦ (m00 z + m01 w, m10 z + m11 w), conjugates following.
SpherePolynomial substitute_linear(const SpherePolynomial& p, const std::array<ExactComplex, 4>& m);

/// Unitary matrix with Q(i) entries by the Cayley transform (I − A)(I + A)^{-1} of the
/// skew-Hermitian A = [[i·a, b + i·c], [−b + i·c, i·d]].
std::array<ExactComplex, 4> cayley_unitary(const Rational& a, const Rational& b, const Rational& c,
                                           const Rational& d);

/// Numeric evaluator of a fixed polynomial with precomputed power tables.
class CompiledPolynomial {
 public:
  CompiledPolynomial() = default;
  explicit CompiledPolynomial(const SpherePolynomial& p);
  [[nodiscard]] std::complex<double> operator()(std::complex<double> z, std::complex<double> w) const;
  [[nodiscard]] bool empty() const { return terms_.empty(); }

 private:
  struct Term {
    Monomial m;
    std::complex<double> coeff;
  };
  std::vector<Term> terms_;
  unsigned max_exp_ = 0;
};

}  // namespace fefflab
