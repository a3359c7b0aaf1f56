#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "fefflab/sphere_algebra.hpp"

namespace fefflab {

/// Tangential derivatives of a real potential G at a point of S³.
/// L̄G = conj(LG) and L̄LG = conj(LL̄G) because G is real.
struct TangentialJet {
  double g = 0.0;
  std::complex<double> Lg;
  double Tg = 0.0;
  std::complex<double> LLbar;  ///< L L̄ G
  std::complex<double> LbarL;  ///< L̄ L G
  std::complex<double> LT;     ///< L T G
  double TT = 0.0;             ///< T² G

  /// (LL̄ + L̄L)G / 2
  [[nodiscard]] double delta() const { return 0.5 * (LLbar + LbarL).real(); }
};

/// Potential source evaluated at points of the unit sphere.
using JetSource = std::function<TangentialJet(std::complex<double> z, std::complex<double> w)>;

/// G = c + ε·P + Σ a_k log P_k on S³, with P and every P_k real polynomials (P_k > 0 on S³).
/// Tangential fields only see values on the sphere, so polynomial representatives
/// need not be homogeneous; the degree-0 extension is implied.
class SpherePotential {
 public:
  struct LogTerm {
    SpherePolynomial p;
    double coeff = 1.0;
  };

  SpherePotential() = default;
  static SpherePotential constant(double c);
  static SpherePotential polynomial(const SpherePolynomial& p, double scale = 1.0);
  /// log((|αz+βw|² + |γz+δw|²)/(|z|²+|w|²)); on S³ the denominator is 1.
  static SpherePotential linear_image(const std::array<ExactComplex, 4>& m);

  SpherePotential& add_constant(double c);
  SpherePotential& add_log(const SpherePolynomial& p, double coeff = 1.0);

  /// The same potential with the polynomial part scaled by s.
  [[nodiscard]] SpherePotential with_scale(double s) const;
  /// G ∘ U for a linear map U, applied exactly to every polynomial.
  [[nodiscard]] SpherePotential precompose(const std::array<ExactComplex, 4>& m) const;
  /// T G = 0.
  [[nodiscard]] bool is_circular() const;
  [[nodiscard]] const SpherePolynomial& poly() const { return poly_; }
  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] double constant_term() const { return constant_; }
  [[nodiscard]] const std::vector<LogTerm>& logs() const { return logs_; }

  [[nodiscard]] TangentialJet jet(std::complex<double> z, std::complex<double> w) const;
  /// Shares compiled derivative tables across calls.
  [[nodiscard]] JetSource source() const;
  [[nodiscard]] std::string describe() const;

 private:
  double constant_ = 0.0;
  SpherePolynomial poly_;
  double scale_ = 1.0;
  std::vector<LogTerm> logs_;
};

}  // namespace fefflab
