#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace fefflab {

/// Gauss–Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point Gauss–Legendre nodes and weights (Newton iteration on P_n), n ≥ 1.
GaussRule gauss_legendre(unsigned n);
/// The same rule mapped to [a, b].
GaussRule gauss_legendre(unsigned n, double a, double b);

enum class GridKind {
  sphere_hopf,  ///< unit S³, coords (Re z, Im z, Re w, Im w), weights sum to 2π²
  sphere_cap,   ///< {v ≤ −cos θ₀} ⊂ S³, coords as sphere_hopf
  ball,         ///< unit ball of C², coords as sphere_hopf
  base_box,     ///< box in (x, y, u); last coordinate unused
  base_ball,    ///< ball {x²+y²+u² < r²} in (x, y, u); last coordinate unused
  disk,         ///< unit disk in the w-plane, polar about w = 1, graded toward it; coords (Re w, Im w, 0, 0)
};

std::string to_string(GridKind kind);

/// Tensor-product nodes and positive weights. Immutable after construction.
struct QuadratureGrid {
  GridKind kind = GridKind::sphere_hopf;
  std::vector<unsigned> counts;     ///< per-axis node counts
  std::vector<double> params;       ///< kind-specific geometry (box bounds, radius, cap angle, ...)
  std::vector<std::array<double, 4>> nodes;
  std::vector<double> weights;

  [[nodiscard]] std::size_t size() const { return weights.size(); }
  [[nodiscard]] double total_weight() const;
  [[nodiscard]] std::complex<double> z(std::size_t i) const { return {nodes[i][0], nodes[i][1]}; }
  [[nodiscard]] std::complex<double> w(std::size_t i) const { return {nodes[i][2], nodes[i][3]}; }
};

/// Hopf coordinates z = cos α e^{iβ}, w = sin α e^{iγ}, measure cos α sin α dα dβ dγ;
/// Gauss–Legendre in α ∈ [0, π/2], periodic trapezoid in β, γ. Counts ≥ 2.
QuadratureGrid make_sphere_grid(unsigned n_alpha, unsigned n_beta, unsigned n_gamma);

/// Cap of S³ within geodesic angle θ₀ ∈ (0, π) of (0, −i): polar angle t about that
/// point (Gauss–Legendre, weight sin²t) times a Gauss × trapezoid rule on S².
QuadratureGrid make_sphere_cap_grid(double theta0, unsigned n_t, unsigned n_polar, unsigned n_azimuth);

/// Unit ball: Gauss–Legendre in the radius with weight r³ times a Hopf sphere grid.
QuadratureGrid make_ball_grid(unsigned n_r, unsigned n_alpha, unsigned n_beta, unsigned n_gamma);

/// Gauss–Legendre tensor grid on [x0,x1]×[y0,y1]×[u0,u1].
QuadratureGrid make_base_box_grid(const std::array<double, 6>& bounds, unsigned nx, unsigned ny, unsigned nu);

/// Ball of the given radius in (x, y, u): Gauss–Legendre in r (weight r²) and cos φ, trapezoid in azimuth.
QuadratureGrid make_base_ball_grid(double radius, unsigned n_r, unsigned n_polar, unsigned n_azimuth);

/// Unit disk |w| < 1 in polar coordinates w = 1 + ρe^{iψ}, ψ ∈ (π/2, 3π/2),
/// ρ = s·(−2 cos ψ). The s-interval is split at ratio^k, k = 1..rings, with
/// n_s Gauss points per panel; n_psi Gauss points in ψ. rings ≥ 40 is enforced.
QuadratureGrid make_disk_grid(unsigned n_psi, unsigned n_s, unsigned rings, double ratio = 0.7);

/// Same geometry with every per-axis count doubled (disk: n_psi and n_s doubled, rings kept).
QuadratureGrid refine(const QuadratureGrid& grid);

/// Σ w_i f(node_i), deterministic.
template <class F>
double integrate(const QuadratureGrid& grid, F&& f);

}  // namespace fefflab

#include "fefflab/parallel.hpp"

namespace fefflab {

template <class F>
double integrate(const QuadratureGrid& grid, F&& f) {
  return parallel_sum(grid.size(), [&](std::size_t i) { return grid.weights[i] * f(grid.nodes[i]); });
}

}  // namespace fefflab
