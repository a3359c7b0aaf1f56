#pragma once

#include <array>
#include <complex>
#include <functional>
#include <limits>

#include "fefflab/dual.hpp"

namespace fefflab {

using cplx = std::complex<double>;

/// Point (z, w) of C².
struct AmbientPoint {
  cplx z;
  cplx w;
};

/// Point (z, u) of the graph base C × R; the hypersurface is v = F(z, u).
struct GraphPoint {
  cplx z;
  double u = 0.0;
};

/// Second-order Wirtinger jet of a real function ρ on C², variables (z₁, z₂) = (z, w).
struct Jet2Ambient {
  double value = 0.0;
  std::array<cplx, 2> d{};                     ///< ρ_{z_j}
  std::array<cplx, 2> dbar{};                  ///< ρ_{z̄_j}
  std::array<std::array<cplx, 2>, 2> levi{};   ///< levi[j][k] = ρ_{z_j z̄_k}
  std::array<std::array<cplx, 2>, 2> hol{};    ///< hol[j][k] = ρ_{z_j z_k}
};

/// Jet of a graph function F(z, u) entering μ(F).
struct Jet2Graph {
  double F = 0.0;
  cplx Fz;
  cplx Fzbar;
  double Fu = 0.0;
  double Fzzbar = 0.0;
  cplx Fzu;
  cplx Fzbaru;
  double Fuu = 0.0;
};

/// Relative tolerance on the imaginary residue of the bordered determinant.
inline constexpr double kImagResidueTolerance = 1e-12;

/// M(ρ) = −det [[0, ρ_{z_j}], [ρ_{z̄_k}, ρ_{z_j z̄_k}]].
/// Throws MalformedJetError when the determinant is not real to within
/// kImagResidueTolerance relative to the size of its expansion terms.
double bordered_hessian_M(const Jet2Ambient& jet);

/// μ(F) = F_{zz̄}(F_u²+1) − F_{zu}(F_u+i)F_{z̄} − F_{z̄u}(F_u−i)F_z + F_{uu}|F_z|².
/// Equals 4·M(−v+F); positive exactly where the graph is strongly pseudoconvex.
double graph_mu(const Jet2Graph& jet);

enum class DerivativeMode { analytic, finite_difference };

/// Value, gradient and Hessian of a real function in real coordinates.
template <int N>
struct RealJet {
  double value = 0.0;
  std::array<double, N> grad{};
  std::array<double, N * N> hess{};
  double hessian(int i, int j) const { return hess[i * N + j]; }
};

/// A real scalar field on R^N. The rule is written once against Dual2 numbers;
/// analytic mode propagates exact derivatives through it, finite-difference
/// mode evaluates values only and differentiates with central stencils.
///
/// Coordinates: N = 2 → (x, y) with z = x+iy; N = 3 → (x, y, u);
/// N = 4 → (x, y, u, v) with w = u+iv.
template <int N>
class ScalarField {
 public:
  using Coords = std::array<double, N>;
  using Rule = std::function<Dual2<N>(const std::array<Dual2<N>, N>&)>;
  using Domain = std::function<bool(const Coords&)>;

  ScalarField() = default;
  explicit ScalarField(Rule rule, Domain domain = {}, DerivativeMode mode = DerivativeMode::analytic,
                       double step = 0.0)
      : rule_(std::move(rule)), domain_(std::move(domain)), mode_(mode), step_(step) {}

  [[nodiscard]] DerivativeMode mode() const { return mode_; }
  /// Explicit finite-difference step, 0 meaning the default cbrt(eps)·max(1, |x_i|).
  [[nodiscard]] double step() const { return step_; }
  [[nodiscard]] ScalarField with_mode(DerivativeMode mode, double step = 0.0) const {
    return ScalarField(rule_, domain_, mode, step);
  }

  [[nodiscard]] bool contains(const Coords& p) const { return !domain_ || domain_(p); }
  [[nodiscard]] double value(const Coords& p) const;
  /// Throws DomainError outside the domain (or when a stencil leaves it) and
  /// DomainError on non-finite derivatives.
  [[nodiscard]] RealJet<N> real_jet(const Coords& p) const;
  /// Dual evaluation for composing the field into larger rules.
  [[nodiscard]] Dual2<N> operator()(const std::array<Dual2<N>, N>& p) const { return rule_(p); }

 private:
  Rule rule_;
  Domain domain_;
  DerivativeMode mode_ = DerivativeMode::analytic;
  double step_ = 0.0;
};

using PlanarField = ScalarField<2>;
using GraphField = ScalarField<3>;
using AmbientField = ScalarField<4>;

/// Wirtinger conversion of real (x, y, u) derivatives; conjugate pairs are built from one value.
Jet2Graph graph_jet_from_real(const RealJet<3>& j);
/// Wirtinger conversion of real (x, y, u, v) derivatives.
Jet2Ambient ambient_jet_from_real(const RealJet<4>& j);

Jet2Graph jet_of(const GraphField& field, const GraphPoint& p);
Jet2Ambient jet_of(const AmbientField& field, const AmbientPoint& p);

/// F_{zz̄} of a planar field: ¼(F_xx + F_yy).
double planar_laplace_zzbar(const PlanarField& field, cplx z);

/// ρ(z, w) = −v + F(z, u) for a graph function F, in the same derivative mode.
AmbientField graph_defining_function(const GraphField& graph);

}  // namespace fefflab
