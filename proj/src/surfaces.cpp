#include "fefflab/surfaces.hpp"

#include <cmath>

#include "fefflab/errors.hpp"

namespace fefflab {

namespace {

using D3 = Dual2<3>;
using D2 = Dual2<2>;
using Args3 = std::array<D3, 3>;

}  // namespace

GraphSurface implicit_graph(std::string name, const GraphField::Rule& radicand, const GraphBase& base,
                            DerivativeMode mode) {
  GraphField::Domain domain = [radicand](const std::array<double, 3>& p) {
    return radicand({D3(p[0]), D3(p[1]), D3(p[2])}).v > 0;
  };
  const auto c = base.center();
  for (double sign : {1.0, -1.0}) {
    GraphField f([radicand, sign](const Args3& p) { return sign * sqrt(radicand(p)); }, domain, mode);
    if (!f.contains(c)) throw DomainError("base centre of " + name + " lies outside the implicit surface domain");
    if (graph_mu(jet_of(f, GraphPoint{{c[0], c[1]}, c[2]})) > 0) return {std::move(name), f, base};
  }
  throw NotPseudoconvexError("neither graph branch of " + name + " is strongly pseudoconvex at the base centre");
}

GraphSurface heisenberg_graph(const GraphBase& base) {
  return {"heisenberg", GraphField([](const Args3& p) { return p[0] * p[0] + p[1] * p[1]; }), base};
}

GraphSurface paraboloid_graph(const GraphBase& base) {
  return {"paraboloid", GraphField([](const Args3& p) { return p[0] * p[0] + p[1] * p[1] + p[2] * p[2]; }), base};
}

GraphSurface sphere_graph(double R) {
  if (!(R > 0)) throw DomainError("radius must be positive");
  const double r2 = R * R;
  return implicit_graph("sphere_graph(R=" + std::to_string(R) + ")",
                        [r2](const Args3& p) { return r2 - p[0] * p[0] - p[1] * p[1] - p[2] * p[2]; },
                        GraphBase::ball(0.6 * R));
}

GraphSurface sphere_cap_graph(double theta0) {
  if (!(theta0 > 0 && theta0 < M_PI / 2)) throw DomainError("cap angle must lie in (0, pi/2)");
  return implicit_graph("sphere_cap_graph", [](const Args3& p) { return 1.0 - p[0] * p[0] - p[1] * p[1] - p[2] * p[2]; },
                        GraphBase::ball(std::sin(theta0)));
}

GraphSurface hyperboloid_graph(double R) {
  if (!(R > 0)) throw DomainError("radius must be positive");
  const double r2 = R * R, x0 = std::sqrt(2.0) * R, h = 0.3 * R;
  return implicit_graph("hyperboloid_graph(R=" + std::to_string(R) + ")",
                        [r2](const Args3& p) { return p[0] * p[0] + p[1] * p[1] - p[2] * p[2] - r2; },
                        GraphBase::box({x0 - h, x0 + h, -h, h, -h, h}));
}

GraphSurface rigid_sqrt_graph() {
  // z⁻² + z̄⁻² = 2 Re z⁻² = 2(x² − y²)/(x² + y²)².
  return implicit_graph(
      "rigid_sqrt_graph",
      [](const Args3& p) {
        const D3 r2 = p[0] * p[0] + p[1] * p[1];
        return 2.0 * (p[0] * p[0] - p[1] * p[1]) / (r2 * r2);
      },
      GraphBase::box({0.8, 1.2, -0.2, 0.2, -0.2, 0.2}));
}

PlanarField planar_abs2() {
  return PlanarField([](const std::array<D2, 2>& p) { return p[0] * p[0] + p[1] * p[1]; });
}

PlanarField planar_abs4() {
  return PlanarField([](const std::array<D2, 2>& p) {
    const D2 r2 = p[0] * p[0] + p[1] * p[1];
    return r2 * r2;
  });
}

PlanarField planar_rigid_sqrt() {
  auto h = [](const std::array<D2, 2>& p) {
    const D2 r2 = p[0] * p[0] + p[1] * p[1];
    return 2.0 * (p[0] * p[0] - p[1] * p[1]) / (r2 * r2);
  };
  return PlanarField([h](const std::array<D2, 2>& p) { return -sqrt(h(p)); },
                     [h](const std::array<double, 2>& q) { return h({D2(q[0]), D2(q[1])}).v > 0; });
}

}  // namespace fefflab
