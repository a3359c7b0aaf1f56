#pragma once

#include <string>

#include "fefflab/measures.hpp"

namespace fefflab {

/// v = ±√(radicand(x, y, u)) with the sign chosen so that μ > 0 at the base centre.
/// Throws NotPseudoconvexError when neither branch qualifies.
GraphSurface implicit_graph(std::string name, const GraphField::Rule& radicand, const GraphBase& base,
                            DerivativeMode mode = DerivativeMode::analytic);

/// v = |z|² (the Heisenberg group) over the given base.
GraphSurface heisenberg_graph(const GraphBase& base = GraphBase::box({-1, 1, -1, 1, -1, 1}));
/// v = |z|² + u².
GraphSurface paraboloid_graph(const GraphBase& base = GraphBase::box({-1, 1, -1, 1, -1, 1}));
/// Patch of |z|² + |w|² = R² over the ball of radius 0.6R about the bottom point.
GraphSurface sphere_graph(double R = 1.0);
/// Cap of the unit sphere within angle θ₀ of (0, −i), as a graph over the ball of radius sin θ₀.
GraphSurface sphere_cap_graph(double theta0);
/// Patch of |z|² − |w|² = R² over a box about z = √2 R, u = 0.
GraphSurface hyperboloid_graph(double R = 1.0);
/// v = √(z⁻² + z̄⁻²) in its pseudoconvex orientation, over a box about z = 1.
GraphSurface rigid_sqrt_graph();

/// Rigid planar potentials z ↦ F(z).
PlanarField planar_abs2();
PlanarField planar_abs4();
/// ±√(z⁻²+z̄⁻²) with the sign making F_{zz̄} > 0 (the minus branch).
PlanarField planar_rigid_sqrt();

}  // namespace fefflab
