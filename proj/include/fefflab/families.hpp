#pragma once

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "fefflab/ball_pair.hpp"
#include "fefflab/dual.hpp"
#include "fefflab/measures.hpp"
#include "fefflab/sphere_algebra.hpp"

namespace fefflab {

/// Image of the unit ball under (z, w) ↦ (φ(w)z, w).
struct ShearSurface {
  std::string name;
  std::function<std::complex<double>(std::complex<double>)> phi;

  static ShearSurface constant_one();
  static ShearSurface identity_w();
  /// φ_ε(w) = (w − 1 − ε)^{−3/2}.
  static ShearSurface log_divergent(double eps);
  /// φ_t(w) = 1 + t w.
  static ShearSurface linear(double t);
};

/// Disk grid resolving scale ε near w = 1: at least 40 rings, and enough to reach ε/10.
QuadratureGrid shear_disk_grid(double eps = 1e-2, unsigned n_psi = 48, unsigned n_s = 8);

/// F = 2^{4/3}π ∫|φ|^{4/3} dA, V = π ∫|φ|²(1 − |w|²) dA. err_est from one refinement;
/// throws ConvergenceError when the refinement changes F or V by more than 1% (divergence).
MeasureReport shear_measures(const ShearSurface& s, const QuadratureGrid& grid);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

struct ShearAsymptotics {
  std::vector<double> eps;
  std::vector<MeasureReport> reports;
  LinearFit F_vs_log;       ///< F against |log ε|
  LinearFit V_vs_log;       ///< V against |log ε|
  LinearFit Q_vs_sqrt_log;  ///< Q against √|log ε|
  bool poor_fit = false;    ///< any relative residual above 5%
};

/// Requires the ε list to span at least three decades.
ShearAsymptotics shear_asymptotics(const std::vector<double>& eps);

struct HLReport {
  double lhs = 0.0;        ///< ‖h‖_{L²(U)}, exact up to the final square root
  double norm43 = 0.0;     ///< ‖h‖_{L^{4/3}(S³)} by quadrature
  double bound = 0.0;      ///< 2^{−3/4}π^{−1/2}·norm43
  double ratio = 0.0;      ///< lhs / norm43
  bool holds = false;
};

/// ‖h‖_{L²(U)} ≤ 2^{−3/4}π^{−1/2}‖h‖_{L^{4/3}(S³)} for holomorphic h.
HLReport hl_check(const SpherePolynomial& h, const QuadratureGrid& grid);

/// Closed C² curve t ↦ (x(t), y(t)), t ∈ [0, 2π), written once against Dual2<1>.
struct ConvexCurve {
  std::string name;
  std::function<std::array<Dual2<1>, 2>(const Dual2<1>&)> rule;

  static ConvexCurve ellipse(double a, double b);
  /// Polar curve r(t) = 1 + e·cos(k t); strictly convex for e(k² − 1) < 1.
  static ConvexCurve polar_wave(double e, unsigned k);
  /// x⁴ + y⁴ + x² + y² = 2, a smoothed superellipse.
  static ConvexCurve smoothed_superellipse();
};

struct TubeReport {
  double blaschke = 0.0;  ///< ∫ κ^{1/3} ds
  double area = 0.0;
  double ratio = 0.0;     ///< blaschke³ / area, at most 8π²
};

/// Periodic trapezoid with n nodes. Throws NotPseudoconvexError when κ ≤ 0 at a node.
TubeReport tube_measures(const ConvexCurve& c, unsigned n = 512);

/// Parametrised holomorphic maps of the closed ball, described by det H′.
struct MapFamily {
  std::string name;
  std::vector<double> lower;
  std::vector<double> upper;
  std::vector<double> identity;
  std::function<std::complex<double>(const std::vector<double>&, std::complex<double>, std::complex<double>)> det;

  /// Unitary maps, det H′ = e^{iθ}, θ ∈ [0, 2π].
  static MapFamily unitary();
  /// (z, w) ↦ ((1 + t w) z, w), t ∈ [0, 0.9].
  static MapFamily shear();
  static MapFamily identity_only();
  /// (z, w) ↦ ((1 + a w) z, w + b w²), a ∈ [0, 0.9], b ∈ [−0.45, 0.45].
  static MapFamily triangular();
};

/// Q(H(S³)) = (2^{1/3}∫_{S³}|det H′|^{4/3}η)^{3/2} / ∫_U |det H′|² dV.
double map_quotient(const MapFamily& fam, const std::vector<double>& param, const QuadratureGrid& sphere,
                    const QuadratureGrid& ball);

struct QStarResult {
  std::vector<double> best;
  double q = 0.0;  ///< an upper bound for Q*(S³), never claimed to be the infimum
  bool collapsed = false;
  std::vector<std::vector<double>> trace;
};

/// Nelder–Mead over the family's parameter box starting from the identity parameter.
QStarResult q_star_search(const MapFamily& fam, const QuadratureGrid& sphere, const QuadratureGrid& ball);

/// Tagged union of the surface representations handled by the lab.
using SurfaceModel =
    std::variant<GraphSurface, RadialSurface, CircularSurface, BallPairParams, ShearSurface, ConvexCurve>;

}  // namespace fefflab
