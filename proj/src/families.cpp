#include "fefflab/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fefflab/errors.hpp"
#include "fefflab/optimize.hpp"
#include "fefflab/parallel.hpp"

namespace fefflab {

namespace {

constexpr double kPi = std::numbers::pi;
using cplx = std::complex<double>;
using D1 = Dual2<1>;

}  // namespace

ShearSurface ShearSurface::constant_one() {
  return {"shear(phi=1)", [](cplx) { return cplx(1.0); }};
}

ShearSurface ShearSurface::identity_w() {
  return {"shear(phi=w)", [](cplx w) { return w; }};
}

ShearSurface ShearSurface::log_divergent(double eps) {
  if (!(eps > 0)) throw DomainError("epsilon must be positive");
  return {"shear(phi=(w-1-eps)^(-3/2), eps=" + std::to_string(eps) + ")",
          [eps](cplx w) { return std::pow(w - 1.0 - eps, -1.5); }};
}

ShearSurface ShearSurface::linear(double t) {
  return {"shear(phi=1+t*w, t=" + std::to_string(t) + ")", [t](cplx w) { return 1.0 + t * w; }};
}

QuadratureGrid shear_disk_grid(double eps, unsigned n_psi, unsigned n_s) {
  if (!(eps > 0)) throw DomainError("epsilon must be positive");
  const double ratio = 0.7;
  const unsigned rings = std::max(40U, static_cast<unsigned>(std::ceil(std::log(eps / 20.0) / std::log(ratio))));
  return make_disk_grid(n_psi, n_s, rings, ratio);
}

namespace {

std::pair<double, double> shear_integrals(const ShearSurface& s, const QuadratureGrid& g) {
  if (g.kind != GridKind::disk) throw DomainError("shear measures need a disk grid");
  const double f = parallel_sum(g.size(), [&](std::size_t i) {
    return g.weights[i] * std::pow(std::norm(s.phi({g.nodes[i][0], g.nodes[i][1]})), 2.0 / 3.0);
  });
  const double v = parallel_sum(g.size(), [&](std::size_t i) {
    const cplx w{g.nodes[i][0], g.nodes[i][1]};
    return g.weights[i] * std::norm(s.phi(w)) * (1.0 - std::norm(w));
  });
  return {std::pow(2.0, 4.0 / 3.0) * kPi * f, kPi * v};
}

}  // namespace

MeasureReport shear_measures(const ShearSurface& s, const QuadratureGrid& grid) {
  const auto [f, v] = shear_integrals(s, grid);
  const auto [f2, v2] = shear_integrals(s, refine(grid));
  if (!std::isfinite(f) || !std::isfinite(v) || std::abs(f2 - f) > 1e-2 * std::abs(f2) ||
      std::abs(v2 - v) > 1e-2 * std::abs(v2)) {
    throw ConvergenceError("shear integrals change by more than 1% under refinement for " + s.name);
  }
  MeasureReport r;
  r.surface = s.name;
  r.kind = grid.kind;
  r.grid = grid.counts;
  r.fefferman = f;
  r.volume = v;
  r.quotient = iso_quotient(f, v);
  r.err_est = std::max({std::abs(f2 - f), std::abs(v2 - v), std::abs(iso_quotient(f2, v2) - *r.quotient)});
  return r;
}

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("line fit needs at least two points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LinearFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  for (std::size_t i = 0; i < x.size(); ++i)
    f.max_residual = std::max(f.max_residual, std::abs(y[i] - f.slope * x[i] - f.intercept));
  return f;
}

ShearAsymptotics shear_asymptotics(const std::vector<double>& eps) {
  if (eps.size() < 3) throw DomainError("need at least three epsilon values");
  const auto [lo, hi] = std::minmax_element(eps.begin(), eps.end());
  if (!(*lo > 0) || std::log10(*hi / *lo) < 3.0 - 1e-12) throw DomainError("epsilon list must span >= 3 decades");
  ShearAsymptotics out;
  out.eps = eps;
  std::vector<double> L, sL, F, V, Q;
  for (double e : eps) {
    out.reports.push_back(shear_measures(ShearSurface::log_divergent(e), shear_disk_grid(e)));
    L.push_back(std::abs(std::log(e)));
    sL.push_back(std::sqrt(L.back()));
    F.push_back(out.reports.back().fefferman);
    V.push_back(*out.reports.back().volume);
    Q.push_back(*out.reports.back().quotient);
  }
  out.F_vs_log = fit_line(L, F);
  out.V_vs_log = fit_line(L, V);
  out.Q_vs_sqrt_log = fit_line(sL, Q);
  auto poor = [](const LinearFit& f, const std::vector<double>& y) {
    const double scale = *std::max_element(y.begin(), y.end());
    return f.max_residual > 0.05 * scale;
  };
  out.poor_fit = poor(out.F_vs_log, F) || poor(out.V_vs_log, V) || poor(out.Q_vs_sqrt_log, Q);
  return out;
}

HLReport hl_check(const SpherePolynomial& h, const QuadratureGrid& grid) {
  if (!h.is_holomorphic()) throw DomainError("hl_check requires a holomorphic polynomial");
  if (grid.kind != GridKind::sphere_hopf) throw DomainError("hl_check needs a sphere grid");
  HLReport r;
  r.lhs = std::sqrt(integrate_ball(h * h.conj()).value());
  const CompiledPolynomial hc(h);
  const double s = parallel_sum(grid.size(), [&](std::size_t i) {
    return grid.weights[i] * std::pow(std::norm(hc(grid.z(i), grid.w(i))), 2.0 / 3.0);
  });
  r.norm43 = std::pow(s, 0.75);
  r.bound = std::pow(2.0, -0.75) / std::sqrt(kPi) * r.norm43;
  r.ratio = r.norm43 > 0 ? r.lhs / r.norm43 : 0.0;
  r.holds = r.lhs <= r.bound;
  return r;
}

ConvexCurve ConvexCurve::ellipse(double a, double b) {
  if (!(a > 0 && b > 0)) throw DomainError("ellipse semi-axes must be positive");
  return {"ellipse(" + std::to_string(a) + "," + std::to_string(b) + ")",
          [a, b](const D1& t) { return std::array<D1, 2>{a * cos(t), b * sin(t)}; }};
}

ConvexCurve ConvexCurve::polar_wave(double e, unsigned k) {
  return {"polar_wave(e=" + std::to_string(e) + ",k=" + std::to_string(k) + ")", [e, k](const D1& t) {
            const D1 r = 1.0 + e * cos(double(k) * t);
            return std::array<D1, 2>{r * cos(t), r * sin(t)};
          }};
}

ConvexCurve ConvexCurve::smoothed_superellipse() {
  return {"superellipse(x^4+y^4+x^2+y^2=2)", [](const D1& t) {
            const D1 c = cos(t), s = sin(t);
            const D1 q = c * c * c * c + s * s * s * s;
            const D1 r = sqrt((sqrt(1.0 + 8.0 * q) - 1.0) / (2.0 * q));
            return std::array<D1, 2>{r * c, r * s};
          }};
}

TubeReport tube_measures(const ConvexCurve& c, unsigned n) {
  if (n < 8) throw DomainError("tube quadrature needs at least 8 nodes");
  const double h = 2 * kPi / n;
  TubeReport r;
  for (unsigned i = 0; i < n; ++i) {
    const auto p = c.rule(D1::variable(h * i, 0));
    const double x = p[0].v, y = p[1].v, x1 = p[0].g[0], y1 = p[1].g[0], x2 = p[0].h[0], y2 = p[1].h[0];
    const double speed = std::hypot(x1, y1);
    const double kappa = (x1 * y2 - y1 * x2) / (speed * speed * speed);
    if (!(kappa > 0)) {
      throw NotPseudoconvexError("curve " + c.name + " is not strictly convex at t = " + std::to_string(h * i));
    }
    r.blaschke += h * std::cbrt(kappa) * speed;
    r.area += 0.5 * h * (x * y1 - y * x1);
  }
  r.ratio = r.blaschke * r.blaschke * r.blaschke / r.area;
  return r;
}

MapFamily MapFamily::unitary() {
  return {"unitary", {0.0}, {2 * kPi}, {0.0}, [](const std::vector<double>& p, cplx, cplx) { return std::polar(1.0, p[0]); }};
}

MapFamily MapFamily::shear() {
  return {"shear(1+t*w)", {0.0}, {0.9}, {0.0}, [](const std::vector<double>& p, cplx, cplx w) { return 1.0 + p[0] * w; }};
}

MapFamily MapFamily::identity_only() {
  return {"identity", {0.0}, {0.0}, {0.0}, [](const std::vector<double>&, cplx, cplx) { return cplx(1.0); }};
}

MapFamily MapFamily::triangular() {
  return {"triangular((1+a*w)z, w+b*w^2)",
          {0.0, -0.45},
          {0.9, 0.45},
          {0.0, 0.0},
          [](const std::vector<double>& p, cplx, cplx w) { return (1.0 + p[0] * w) * (1.0 + 2.0 * p[1] * w); }};
}

double map_quotient(const MapFamily& fam, const std::vector<double>& param, const QuadratureGrid& sphere,
                    const QuadratureGrid& ball) {
  const double f = std::cbrt(2.0) * parallel_sum(sphere.size(), [&](std::size_t i) {
                     return sphere.weights[i] * std::pow(std::norm(fam.det(param, sphere.z(i), sphere.w(i))), 2.0 / 3.0);
                   });
  const double v = parallel_sum(ball.size(), [&](std::size_t i) {
    return ball.weights[i] * std::norm(fam.det(param, ball.z(i), ball.w(i)));
  });
  return iso_quotient(f, v);
}

QStarResult q_star_search(const MapFamily& fam, const QuadratureGrid& sphere, const QuadratureGrid& ball) {
  if (sphere.kind != GridKind::sphere_hopf || ball.kind != GridKind::ball) {
    throw DomainError("q_star_search needs a sphere grid and a ball grid");
  }
  auto f = [&](const std::vector<double>& x) { return map_quotient(fam, x, sphere, ball); };
  NelderMeadOptions opt;
  opt.xtol = 1e-6;
  opt.initial_step = 0.25;
  const auto r = nelder_mead(f, fam.identity, fam.lower, fam.upper, opt);
  QStarResult out;
  out.best = r.x;
  out.q = r.f;
  out.collapsed = r.collapsed;
  out.trace = r.trace;
  return out;
}

}  // namespace fefflab
