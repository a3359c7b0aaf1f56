#include "fefflab/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "fefflab/errors.hpp"

namespace fefflab {

namespace {

constexpr double kPi = std::numbers::pi;

std::string node_str(const std::array<double, 4>& p) {
  std::ostringstream out;
  out.precision(6);
  out << "(" << p[0] << ", " << p[1] << ", " << p[2] << ", " << p[3] << ")";
  return out.str();
}

std::string base_str(const std::array<double, 4>& p) {
  std::ostringstream out;
  out.precision(6);
  out << "(" << p[0] << ", " << p[1] << ", " << p[2] << ")";
  return out.str();
}

std::complex<double> node_z(const std::array<double, 4>& p) { return {p[0], p[1]}; }
std::complex<double> node_w(const std::array<double, 4>& p) { return {p[2], p[3]}; }

}  // namespace

bool GraphBase::contains(double x, double y, double u) const {
  if (shape == Shape::ball) return x * x + y * y + u * u <= radius * radius;
  return x >= bounds[0] && x <= bounds[1] && y >= bounds[2] && y <= bounds[3] && u >= bounds[4] && u <= bounds[5];
}

std::array<double, 3> GraphBase::center() const {
  if (shape == Shape::ball) return {0, 0, 0};
  return {0.5 * (bounds[0] + bounds[1]), 0.5 * (bounds[2] + bounds[3]), 0.5 * (bounds[4] + bounds[5])};
}

double GraphBase::scale() const {
  if (shape == Shape::ball) return radius;
  return 0.5 * std::min({bounds[1] - bounds[0], bounds[3] - bounds[2], bounds[5] - bounds[4]});
}

double GraphBase::volume() const {
  if (shape == Shape::ball) return 4.0 / 3.0 * kPi * radius * radius * radius;
  return (bounds[1] - bounds[0]) * (bounds[3] - bounds[2]) * (bounds[5] - bounds[4]);
}

QuadratureGrid GraphBase::grid(unsigned n) const {
  if (shape == Shape::ball) return make_base_ball_grid(radius, n, n, 2 * n);
  return make_base_box_grid(bounds, n, n, n);
}

RadialSurface RadialSurface::from_potential(const SpherePotential& g, std::string name) {
  return {std::move(name), g.source()};
}

RadialSurface RadialSurface::sphere(double radius) {
  if (!(radius > 0)) throw DomainError("sphere radius must be positive");
  std::ostringstream name;
  name << "sphere(R=" << radius << ")";
  return from_potential(SpherePotential::constant(-2.0 * std::log(radius)), name.str());
}

CircularSurface CircularSurface::from_potential(const SpherePotential& g, std::string name) {
  if (!g.is_circular()) throw PreconditionError("potential is not circular (TG != 0)");
  return {std::move(name), g.source()};
}

double fefferman_graph(const GraphSurface& Z, const QuadratureGrid& grid) {
  const double s = parallel_sum(grid.size(), [&](std::size_t i) {
    const auto& p = grid.nodes[i];
    const double mu = graph_mu(jet_of(Z.F, GraphPoint{{p[0], p[1]}, p[2]}));
    if (!(mu > 0)) {
      throw NotPseudoconvexError("mu(F) = " + std::to_string(mu) + " <= 0 at base node (x, y, u) = " +
                                 base_str(p) + " of surface " + Z.name);
    }
    return grid.weights[i] * std::cbrt(mu);
  });
  return std::cbrt(4.0) * s;
}

double radial_bracket(const TangentialJet& j) {
  const double d = j.delta();
  const double t = j.Tg;
  const std::complex<double> lbg = std::conj(j.Lg);
  return 1.0 + d + 0.25 * t * t + (lbg * j.LT).imag() +
         0.25 * (t * t * d + std::norm(j.Lg) * j.TT - 2.0 * (lbg * t * j.LT).real());
}

double fefferman_radial(const RadialSurface& Z, const QuadratureGrid& grid) {
  const double s = parallel_sum(grid.size(), [&](std::size_t i) {
    const auto& p = grid.nodes[i];
    const TangentialJet j = Z.G(node_z(p), node_w(p));
    const double b = radial_bracket(j);
    if (!(b > 0)) {
      throw NotPseudoconvexError("Levi bracket " + std::to_string(b) + " <= 0 at sphere node " + node_str(p) +
                                 " of surface " + Z.name);
    }
    return grid.weights[i] * std::exp(-4.0 * j.g / 3.0) * std::cbrt(b);
  });
  return std::cbrt(2.0) * s;
}

double volume_radial(const RadialSurface& Z, const QuadratureGrid& grid) {
  return 0.25 * parallel_sum(grid.size(), [&](std::size_t i) {
           const auto& p = grid.nodes[i];
           return grid.weights[i] * std::exp(-2.0 * Z.G(node_z(p), node_w(p)).g);
         });
}

double iso_quotient(double f, double v) {
  if (!(v > 0)) throw DomainError("volume must be positive");
  if (f < 0) throw DomainError("Fefferman measure must be non-negative");
  return std::pow(f, 1.5) / v;
}

MeasureReport measure_radial(const RadialSurface& Z, const QuadratureGrid& grid) {
  MeasureReport r;
  r.surface = Z.name;
  r.kind = grid.kind;
  r.grid = grid.counts;
  r.fefferman = fefferman_radial(Z, grid);
  r.volume = volume_radial(Z, grid);
  r.quotient = iso_quotient(r.fefferman, *r.volume);
  const QuadratureGrid fine = refine(grid);
  const double f2 = fefferman_radial(Z, fine), v2 = volume_radial(Z, fine);
  r.err_est = std::max({std::abs(f2 - r.fefferman), std::abs(v2 - *r.volume),
                        std::abs(iso_quotient(f2, v2) - *r.quotient)});
  return r;
}

MeasureReport measure_graph(const GraphSurface& Z, const QuadratureGrid& grid) {
  MeasureReport r;
  r.surface = Z.name;
  r.kind = grid.kind;
  r.grid = grid.counts;
  r.fefferman = fefferman_graph(Z, grid);
  r.err_est = std::abs(fefferman_graph(Z, refine(grid)) - r.fefferman);
  return r;
}

CircularReport circular_measures(const CircularSurface& Z, const QuadratureGrid& grid) {
  CircularReport out;
  out.curvature.resize(grid.size());
  std::vector<double> exp2g(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        const auto& p = grid.nodes[i];
        const TangentialJet j = Z.G(node_z(p), node_w(p));
        if (std::abs(j.Tg) > 1e-9 * (1.0 + std::abs(j.g))) {
          throw PreconditionError("TG != 0 at sphere node " + node_str(p) + " of surface " + Z.name);
        }
        out.curvature[i] = std::exp(2.0 * j.g) * (1.0 + j.delta());
        exp2g[i] = std::exp(-2.0 * j.g);
      },
      512);
  double fsum = 0.0, gb = 0.0;
  out.curvature_min = out.curvature.empty() ? 0.0 : out.curvature[0];
  out.curvature_max = out.curvature_min;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double k = out.curvature[i];
    if (!(k > 0)) {
      throw NotPseudoconvexError("curvature " + std::to_string(k) + " <= 0 at sphere node " + node_str(grid.nodes[i]) +
                                 " of surface " + Z.name);
    }
    out.curvature_min = std::min(out.curvature_min, k);
    out.curvature_max = std::max(out.curvature_max, k);
    fsum += grid.weights[i] * exp2g[i] * std::cbrt(k);
    gb += grid.weights[i] * k * exp2g[i];
  }
  out.gauss_bonnet = 2.0 / kPi * gb;
  out.fefferman_from_curvature = std::pow(2.0, -2.0 / 3.0) * kPi * (2.0 / kPi) * fsum;

  const RadialSurface radial{Z.name, Z.G};
  out.report = measure_radial(radial, grid);
  return out;
}

}  // namespace fefflab
