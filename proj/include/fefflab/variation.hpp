#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fefflab/measures.hpp"
#include "fefflab/potential.hpp"

namespace fefflab {

/// Separable C^∞ bump A·Π b((x_i − c_i)/r_i)·(1 + Σ τ_i (x_i − c_i)/r_i), b(t) = exp(1 − 1/(1−t²)),
/// in graph coordinates (x, y, u). Vanishes with all derivatives outside the support box.
struct BumpField {
  double amplitude = 1.0;
  std::array<double, 3> center{0, 0, 0};
  std::array<double, 3> half_width{1, 1, 1};
  std::array<double, 3> tilt{0, 0, 0};

  [[nodiscard]] GraphField field() const;
  /// [x0,x1,y0,y1,u0,u1] of the support.
  [[nodiscard]] std::array<double, 6> support() const;
  [[nodiscard]] BumpField scaled(double s) const;
};

/// L₁(F)(p): the eleven flux terms, outer derivatives by central differences
/// with step 10⁻³·(base scale) and one Richardson step.
double L1_graph(const GraphSurface& Z, const GraphPoint& p);
/// κ = (3/8) L₁(F)(p).
double kappa_graph(const GraphSurface& Z, const GraphPoint& p);
/// −(F_{zz̄}^{−2/3})_{zz̄} at z. Throws NotPseudoconvexError where F_{zz̄} ≤ 0 on the stencil.
double L1_rigid(const PlanarField& F, std::complex<double> z, double scale = 1.0);

/// Heisenberg fields L = ∂_z + i z̄ ∂_u, L̄ = ∂_z̄ − i z ∂_u, T = ∂_u applied to a jet.
std::complex<double> heis_LLbar(const Jet2Graph& j, std::complex<double> z);

/// −(1/9) ∫ (|LL̄F̊|² + 6|TF̊|²) dV. The grid must be a base box containing the support.
double heis_second_variation(const BumpField& f, const QuadratureGrid& grid);
/// −(2^{2/3}/9) ∫ (|LL̄F̊|² − 10|TF̊|²) dV, the ε² coefficient of F(Z_ε) obtained by
/// expanding 2^{2/3}∫μ(|z|²+εF̊)^{1/3} directly.
double heis_second_variation_corrected(const BumpField& f, const QuadratureGrid& grid);

enum class Functional { F, V, Q };
std::string to_string(Functional f);

struct FamilyValues {
  double fefferman = 0.0;
  std::optional<double> volume;
  std::optional<double> quotient;
  [[nodiscard]] double get(Functional f) const;
};

/// ε ↦ surface, with ε = 0 reproducing the base exactly.
class PerturbationFamily {
 public:
  /// G = G_base + ε·G̊ on the sphere grid. The base must not carry its own polynomial part.
  static PerturbationFamily sphere(const SpherePotential& base, const SpherePolynomial& direction,
                                   const QuadratureGrid& grid);
  /// F = F_base + ε·F̊ on the base grid.
  static PerturbationFamily graph(const GraphSurface& base, const BumpField& direction, const QuadratureGrid& grid);

  [[nodiscard]] FamilyValues evaluate(double eps) const;
  [[nodiscard]] std::string describe() const { return name_; }
  [[nodiscard]] bool is_sphere() const { return graph_base_ == std::nullopt; }

 private:
  std::string name_;
  QuadratureGrid grid_;
  std::optional<SpherePotential> sphere_base_;
  SpherePolynomial sphere_direction_;
  std::optional<GraphSurface> graph_base_;
  BumpField graph_direction_;
};

struct EpsFit {
  std::vector<double> eps;
  std::vector<double> values;
  std::vector<double> coeffs;  ///< coeffs[k] multiplies ε^k
  double residual = 0.0;       ///< RMS residual of the fit
  double condition = 0.0;      ///< 2-norm condition number of the Vandermonde matrix
  bool flagged = false;        ///< residual ≥ 10⁻³·|c₂|·max ε²
};

/// Default ε-set {±1, ±2, ±3, ±4}·10⁻².
std::vector<double> default_eps_set();

/// Least-squares polynomial fit of degree ≤ 4 to the functional along the family.
/// Throws PreconditionError for an asymmetric ε-set and ConvergenceError when the
/// Vandermonde matrix is numerically singular.
EpsFit eps_fit_oracle(const PerturbationFamily& fam, Functional functional,
                      const std::vector<double>& eps = default_eps_set(), unsigned degree = 4);

struct CubeSimpReport {
  double lhs = 0.0;            ///< ∫ μ(|z|²+F̃) dV
  double rhs = 0.0;            ///< ∫ (1 + (3F̃_{zz̄} − 1)F̃_u²) dV
  double rhs_corrected = 0.0;  ///< ∫ (1 + 3(1 + F̃_{zz̄})F̃_u²) dV
  double fefferman = 0.0;      ///< F(Z) = 2^{2/3} ∫ μ^{1/3} dV, NaN if μ ≤ 0 somewhere
  double heisenberg = 0.0;     ///< 2^{2/3} Vol(B)
  double max_Fzzbar = 0.0;     ///< max of F̃_{zz̄} over the grid
  [[nodiscard]] bool sides_agree(double rel_tol = 1e-6) const;
  [[nodiscard]] bool semi_global_hypothesis() const { return max_Fzzbar <= 1.0 / 3.0; }
};

CubeSimpReport cube_simp_check(const BumpField& f, const QuadratureGrid& grid);

}  // namespace fefflab
