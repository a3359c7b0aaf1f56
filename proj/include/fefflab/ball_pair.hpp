#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <string>
#include <vector>

namespace fefflab {

using mp50 = boost::multiprecision::cpp_bin_float_50;

/// Intersection of two balls with radius ratio R ∈ (0, 1] meeting at angle θ ∈ (0, π).
struct BallPairParams {
  double R = 1.0;
  double theta = 1.0;
};

/// q(R, θ) = 8√π (R^{8/3}λ + ν − R sinθ(1 + R^{8/3} − (R + R^{5/3})cosθ)/d²)^{3/2}
///           / (R⁴λ + ν − R sinθ(1 + ⅔R²sin²θ + R⁴ − (R + R³)cosθ)/d²),
/// d² = 1 + R² − 2R cosθ, λ = arccos((R − cosθ)/d), ν = arccos((1 − R cosθ)/d),
/// evaluated in 50-digit arithmetic with λ, ν taken as the equal atan2 angles.
/// Throws DomainError outside 0 < R ≤ 1, 0 < θ < π.
mp50 q_ball_pair_mp(const mp50& R, const mp50& theta);
double q_ball_pair(const BallPairParams& p);

/// Independent coding: λ, ν by the clamped arccos forms and the two brackets
/// rearranged by powers of R, also in 50 digits.
double q_ball_pair_alt(const BallPairParams& p);

/// q − (8π − 8(1 − ∛R)/(1 − R)³·θ³), computed in 50 digits. 0 < R < 1.
double theta_expansion_residual(double R, double theta);
/// q − (8π − 8θ³/(3(θ² + (1 − R)²))), computed in 50 digits.
double corner_expansion_residual(double R, double theta);

enum class EdgeKind {
  R_zero,      ///< R ↘ 0 at fixed θ ∈ (0, π): Richardson in t = R^{1/3}
  theta_zero,  ///< θ ↘ 0 at fixed R ∈ (0, 1]
  corner,      ///< (R, θ) → (1, 0) along θ = s(1 − R), s > 0
};

struct EdgeSpec {
  EdgeKind kind = EdgeKind::R_zero;
  double value = 0.0;  ///< θ, R or s for the three kinds
};

struct LimitResult {
  double value = 0.0;
  double error = 0.0;  ///< last-step change of the Richardson diagonal
  std::vector<double> steps;
  std::vector<double> samples;
};

/// Richardson extrapolation of q toward the edge. Throws ConvergenceError when
/// the extrapolation error exceeds 1e-6.
LimitResult q_ball_pair_limit(const EdgeSpec& edge, unsigned levels = 8);

struct ScanPoint {
  double R = 0.0;
  double theta = 0.0;
  double q = 0.0;
};

struct MinimizeResult {
  double R = 0.0;
  double theta = 0.0;
  double q = 0.0;
  double scan_min = 0.0;  ///< smallest value on the coarse grid
  bool on_R_zero_edge = false;
  unsigned iterations = 0;
  std::vector<ScanPoint> scan;              ///< row-major in R then θ
  std::vector<std::vector<double>> trace;   ///< optimizer trace
};

struct MinimizeOptions {
  unsigned n_R = 64;
  unsigned n_theta = 64;
  double delta = 0.05;  ///< scan θ ∈ [0, π − δ]
  double tol = 1e-6;
  double theta_min = 0.0;  ///< restrict the scan to θ ∈ [theta_min, theta_max]
  double theta_max = -1.0; ///< negative means π − δ
};

/// Coarse scan (R = 0 column by extrapolation, θ = 0 row equal to the sphere value 8π)
/// followed by Nelder–Mead refinement from the best grid point.
MinimizeResult minimize_q(const MinimizeOptions& opt = {});

/// q on a tensor sweep, interior points only (0 < R ≤ 1, 0 < θ < π).
std::vector<ScanPoint> sweep_q(const std::vector<double>& R, const std::vector<double>& theta);
/// CSV with header "R,theta,q", one row per point, in the given order.
std::string sweep_csv(const std::vector<ScanPoint>& points);

}  // namespace fefflab
