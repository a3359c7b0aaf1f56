#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fefflab/core_calculus.hpp"
#include "fefflab/potential.hpp"
#include "fefflab/quadrature.hpp"

namespace fefflab {

/// Base region of a graph patch in (x, y, u).
struct GraphBase {
  enum class Shape { box, ball };
  Shape shape = Shape::box;
  std::array<double, 6> bounds{-1, 1, -1, 1, -1, 1};  ///< box only
  double radius = 1.0;                                 ///< ball only, centred at the origin

  static GraphBase box(const std::array<double, 6>& b) { return {Shape::box, b, 1.0}; }
  static GraphBase ball(double r) { return {Shape::ball, {}, r}; }
  [[nodiscard]] bool contains(double x, double y, double u) const;
  [[nodiscard]] std::array<double, 3> center() const;
  /// Characteristic length used to size outer finite-difference steps.
  [[nodiscard]] double scale() const;
  /// Euclidean volume of the base.
  [[nodiscard]] double volume() const;
  /// Tensor grid with n nodes per axis (ball: n radial, n polar, 2n azimuthal).
  [[nodiscard]] QuadratureGrid grid(unsigned n) const;
};

/// Hypersurface v = F(z, u) over a base region.
struct GraphSurface {
  std::string name;
  GraphField F;
  GraphBase base;
};

/// Star-shaped hypersurface e^{G}(|z|²+|w|²) = 1 with SG = 0, described by the
/// tangential jet of G on the unit sphere.
struct RadialSurface {
  std::string name;
  JetSource G;

  static RadialSurface from_potential(const SpherePotential& g, std::string name = "radial");
  /// Sphere of the given radius: G = −2 log R.
  static RadialSurface sphere(double radius = 1.0);
};

/// Radial surface that is also circular (TG = 0).
struct CircularSurface {
  std::string name;
  JetSource G;

  /// Throws PreconditionError when the potential is not circular.
  static CircularSurface from_potential(const SpherePotential& g, std::string name = "circular");
};

/// Fefferman measure, volume and quotient of one surface on one grid.
struct MeasureReport {
  std::string surface;
  GridKind kind = GridKind::sphere_hopf;
  std::vector<unsigned> grid;
  double fefferman = 0.0;
  std::optional<double> volume;
  std::optional<double> quotient;
  /// Largest absolute change of the reported quantities under one refinement.
  double err_est = 0.0;
};

/// 2^{2/3} Σ w μ(F)^{1/3}. Throws NotPseudoconvexError naming the first node with μ ≤ 0.
double fefferman_graph(const GraphSurface& Z, const QuadratureGrid& grid);

/// The sphere bracket B with M(ρ) = e^{3G}·B on the unit sphere:
/// B = 1 + Δ + ¼(TG)² + Im(L̄G·LTG) + ¼((TG)²Δ + |LG|²T²G − 2Re(L̄G·TG·LTG)), Δ = (LL̄+L̄L)G/2.
double radial_bracket(const TangentialJet& j);

/// 2^{1/3} ∫ e^{−7G/3} M(ρ)^{1/3} η = 2^{1/3} ∫ e^{−4G/3} B^{1/3} η.
double fefferman_radial(const RadialSurface& Z, const QuadratureGrid& grid);
/// ¼ ∫ e^{−2G} η.
double volume_radial(const RadialSurface& Z, const QuadratureGrid& grid);
/// f^{3/2}/v. Throws DomainError for f < 0 or v ≤ 0.
double iso_quotient(double f, double v);

/// F, V, Q on the grid with err_est from one refinement.
MeasureReport measure_radial(const RadialSurface& Z, const QuadratureGrid& grid);
/// F only (volume and quotient are absent) with err_est from one refinement.
MeasureReport measure_graph(const GraphSurface& Z, const QuadratureGrid& grid);

struct CircularReport {
  MeasureReport report;
  /// κ = e^{2G}(1 + Δ) at every grid node, node order.
  std::vector<double> curvature;
  double curvature_min = 0.0;
  double curvature_max = 0.0;
  /// ∫_{CP¹} κ dA = (2/π)∫_{S³} κ e^{−2G} η; 4π by Gauss–Bonnet.
  double gauss_bonnet = 0.0;
  /// 2^{−2/3} π ∫_{CP¹} κ^{1/3} dA, which must equal F.
  double fefferman_from_curvature = 0.0;
};

/// Throws NotPseudoconvexError at a node with κ ≤ 0.
CircularReport circular_measures(const CircularSurface& Z, const QuadratureGrid& grid);

}  // namespace fefflab
