#include "fefflab/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "fefflab/errors.hpp"

namespace fefflab {

namespace {

constexpr double kPi = std::numbers::pi;

void require(bool ok, const std::string& what) {
  if (!ok) throw DomainError(what);
}

}  // namespace

GaussRule gauss_legendre(unsigned n) {
  require(n >= 1, "Gauss-Legendre rule needs at least one node");
  GaussRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  for (unsigned i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (unsigned k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    double p0 = 1.0, p1 = x;
    for (unsigned k = 2; k <= n; ++k) {
      const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
      p0 = p1;
      p1 = p2;
    }
    dp = n * (x * p1 - p0) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.nodes[n - 1 - i] = x;
    r.weights[i] = r.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) r.nodes[n / 2] = 0.0;
  return r;
}

GaussRule gauss_legendre(unsigned n, double a, double b) {
  GaussRule r = gauss_legendre(n);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (unsigned i = 0; i < n; ++i) {
    r.nodes[i] = mid + half * r.nodes[i];
    r.weights[i] *= half;
  }
  return r;
}

std::string to_string(GridKind kind) {
  switch (kind) {
    case GridKind::sphere_hopf:
      return "sphere_hopf";
    case GridKind::sphere_cap:
      return "sphere_cap";
    case GridKind::ball:
      return "ball";
    case GridKind::base_box:
      return "base_box";
    case GridKind::base_ball:
      return "base_ball";
    case GridKind::disk:
      return "disk";
  }
  return "unknown";
}

double QuadratureGrid::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

QuadratureGrid make_sphere_grid(unsigned n_alpha, unsigned n_beta, unsigned n_gamma) {
  require(n_alpha >= 2 && n_beta >= 2 && n_gamma >= 2, "sphere grid counts must be >= 2");
  QuadratureGrid g;
  g.kind = GridKind::sphere_hopf;
  g.counts = {n_alpha, n_beta, n_gamma};
  const GaussRule ra = gauss_legendre(n_alpha, 0.0, kPi / 2);
  const double hb = 2 * kPi / n_beta, hc = 2 * kPi / n_gamma;
  g.nodes.reserve(std::size_t(n_alpha) * n_beta * n_gamma);
  for (unsigned i = 0; i < n_alpha; ++i) {
    const double ca = std::cos(ra.nodes[i]), sa = std::sin(ra.nodes[i]);
    const double wa = ra.weights[i] * ca * sa * hb * hc;
    for (unsigned j = 0; j < n_beta; ++j) {
      const double b = j * hb;
      for (unsigned k = 0; k < n_gamma; ++k) {
        const double c = k * hc;
        g.nodes.push_back({ca * std::cos(b), ca * std::sin(b), sa * std::cos(c), sa * std::sin(c)});
        g.weights.push_back(wa);
      }
    }
  }
  return g;
}

QuadratureGrid make_sphere_cap_grid(double theta0, unsigned n_t, unsigned n_polar, unsigned n_azimuth) {
  require(theta0 > 0 && theta0 < kPi, "cap angle must lie in (0, pi)");
  require(n_t >= 2 && n_polar >= 2 && n_azimuth >= 2, "cap grid counts must be >= 2");
  QuadratureGrid g;
  g.kind = GridKind::sphere_cap;
  g.counts = {n_t, n_polar, n_azimuth};
  g.params = {theta0};
  const GaussRule rt = gauss_legendre(n_t, 0.0, theta0);
  const GaussRule rp = gauss_legendre(n_polar);
  const double ha = 2 * kPi / n_azimuth;
  for (unsigned i = 0; i < n_t; ++i) {
    const double t = rt.nodes[i], st = std::sin(t);
    for (unsigned j = 0; j < n_polar; ++j) {
      const double c = rp.nodes[j], s = std::sqrt(1.0 - c * c);
      for (unsigned k = 0; k < n_azimuth; ++k) {
        const double a = k * ha;
        g.nodes.push_back({st * s * std::cos(a), st * s * std::sin(a), st * c, -std::cos(t)});
        g.weights.push_back(rt.weights[i] * st * st * rp.weights[j] * ha);
      }
    }
  }
  return g;
}

QuadratureGrid make_ball_grid(unsigned n_r, unsigned n_alpha, unsigned n_beta, unsigned n_gamma) {
  require(n_r >= 1, "ball grid needs radial nodes");
  const QuadratureGrid s = make_sphere_grid(n_alpha, n_beta, n_gamma);
  const GaussRule rr = gauss_legendre(n_r, 0.0, 1.0);
  QuadratureGrid g;
  g.kind = GridKind::ball;
  g.counts = {n_r, n_alpha, n_beta, n_gamma};
  for (unsigned i = 0; i < n_r; ++i) {
    const double r = rr.nodes[i], wr = rr.weights[i] * r * r * r;
    for (std::size_t k = 0; k < s.size(); ++k) {
      const auto& p = s.nodes[k];
      g.nodes.push_back({r * p[0], r * p[1], r * p[2], r * p[3]});
      g.weights.push_back(wr * s.weights[k]);
    }
  }
  return g;
}

QuadratureGrid make_base_box_grid(const std::array<double, 6>& b, unsigned nx, unsigned ny, unsigned nu) {
  require(b[1] > b[0] && b[3] > b[2] && b[5] > b[4], "box bounds must be increasing");
  require(nx >= 1 && ny >= 1 && nu >= 1, "box grid counts must be positive");
  QuadratureGrid g;
  g.kind = GridKind::base_box;
  g.counts = {nx, ny, nu};
  g.params.assign(b.begin(), b.end());
  const GaussRule rx = gauss_legendre(nx, b[0], b[1]);
  const GaussRule ry = gauss_legendre(ny, b[2], b[3]);
  const GaussRule ru = gauss_legendre(nu, b[4], b[5]);
  for (unsigned i = 0; i < nx; ++i)
    for (unsigned j = 0; j < ny; ++j)
      for (unsigned k = 0; k < nu; ++k) {
        g.nodes.push_back({rx.nodes[i], ry.nodes[j], ru.nodes[k], 0.0});
        g.weights.push_back(rx.weights[i] * ry.weights[j] * ru.weights[k]);
      }
  return g;
}

QuadratureGrid make_base_ball_grid(double radius, unsigned n_r, unsigned n_polar, unsigned n_azimuth) {
  require(radius > 0, "base ball radius must be positive");
  require(n_r >= 1 && n_polar >= 1 && n_azimuth >= 2, "base ball grid counts too small");
  QuadratureGrid g;
  g.kind = GridKind::base_ball;
  g.counts = {n_r, n_polar, n_azimuth};
  g.params = {radius};
  const GaussRule rr = gauss_legendre(n_r, 0.0, radius);
  const GaussRule rp = gauss_legendre(n_polar);
  const double ha = 2 * kPi / n_azimuth;
  for (unsigned i = 0; i < n_r; ++i) {
    const double r = rr.nodes[i];
    for (unsigned j = 0; j < n_polar; ++j) {
      const double c = rp.nodes[j], s = std::sqrt(1.0 - c * c);
      for (unsigned k = 0; k < n_azimuth; ++k) {
        const double a = k * ha;
        g.nodes.push_back({r * s * std::cos(a), r * s * std::sin(a), r * c, 0.0});
        g.weights.push_back(rr.weights[i] * r * r * rp.weights[j] * ha);
      }
    }
  }
  return g;
}

QuadratureGrid make_disk_grid(unsigned n_psi, unsigned n_s, unsigned rings, double ratio) {
  require(n_psi >= 2 && n_s >= 2, "disk grid counts must be >= 2");
  require(ratio > 0 && ratio < 1, "grading ratio must lie in (0, 1)");
  rings = std::max(rings, 40U);
  QuadratureGrid g;
  g.kind = GridKind::disk;
  g.counts = {n_psi, n_s, rings};
  g.params = {ratio};
  const GaussRule rpsi = gauss_legendre(n_psi, kPi / 2, 3 * kPi / 2);
  std::vector<double> s_nodes, s_weights;
  double hi = 1.0;
  for (unsigned k = 0; k <= rings; ++k) {
    const double lo = k == rings ? 0.0 : hi * ratio;
    const GaussRule rs = gauss_legendre(n_s, lo, hi);
    s_nodes.insert(s_nodes.end(), rs.nodes.begin(), rs.nodes.end());
    s_weights.insert(s_weights.end(), rs.weights.begin(), rs.weights.end());
    hi = lo;
  }
  for (unsigned i = 0; i < n_psi; ++i) {
    const double psi = rpsi.nodes[i], rho_max = -2.0 * std::cos(psi);
    for (std::size_t k = 0; k < s_nodes.size(); ++k) {
      const double rho = s_nodes[k] * rho_max;
      g.nodes.push_back({1.0 + rho * std::cos(psi), rho * std::sin(psi), 0.0, 0.0});
      g.weights.push_back(rpsi.weights[i] * s_weights[k] * rho_max * rho);
    }
  }
  return g;
}

QuadratureGrid refine(const QuadratureGrid& g) {
  const auto& c = g.counts;
  switch (g.kind) {
    case GridKind::sphere_hopf:
      return make_sphere_grid(2 * c[0], 2 * c[1], 2 * c[2]);
    case GridKind::sphere_cap:
      return make_sphere_cap_grid(g.params[0], 2 * c[0], 2 * c[1], 2 * c[2]);
    case GridKind::ball:
      return make_ball_grid(2 * c[0], 2 * c[1], 2 * c[2], 2 * c[3]);
    case GridKind::base_box:
      return make_base_box_grid({g.params[0], g.params[1], g.params[2], g.params[3], g.params[4], g.params[5]},
                                2 * c[0], 2 * c[1], 2 * c[2]);
    case GridKind::base_ball:
      return make_base_ball_grid(g.params[0], 2 * c[0], 2 * c[1], 2 * c[2]);
    case GridKind::disk:
      return make_disk_grid(2 * c[0], 2 * c[1], c[2], g.params[0]);
  }
  throw DomainError("unknown grid kind");
}

}  // namespace fefflab
