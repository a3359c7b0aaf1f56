#include "fefflab/variation.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "fefflab/errors.hpp"
#include "fefflab/parallel.hpp"

namespace fefflab {

namespace {

using D3 = Dual2<3>;
using cplx = std::complex<double>;
constexpr cplx I{0.0, 1.0};

D3 bump1(const D3& t) {
  if (std::abs(t.v) >= 1.0) return D3(0.0);
  return exp(1.0 - 1.0 / (1.0 - t * t));
}

/// The eleven inner flux quantities of L₁ at one point.
std::array<cplx, 11> flux_terms(const Jet2Graph& j) {
  const double mu = graph_mu(j);
  if (!(mu > 0)) throw NotPseudoconvexError("mu(F) = " + std::to_string(mu) + " <= 0 on the L1 stencil");
  const double m = std::pow(mu, -2.0 / 3.0);
  return {2.0 * m * j.Fu * j.Fzzbar,
          m * (j.Fu * j.Fu + 1.0),
          m * j.Fzu * (j.Fu + I),
          m * j.Fzu * j.Fzbar,
          m * (j.Fu + I) * j.Fzbar,
          m * j.Fzbaru * (j.Fu - I),
          m * j.Fzbaru * j.Fz,
          m * (j.Fu - I) * j.Fz,
          m * j.Fuu * j.Fz,
          m * j.Fuu * j.Fzbar,
          m * j.Fz * j.Fzbar};
}

/// Σ sign_k D_k A_k with central differences of step h.
double L1_stencil(const GraphSurface& Z, const GraphPoint& p, double h) {
  const double x = p.z.real(), y = p.z.imag(), u = p.u;
  auto A = [&](double dx, double dy, double du) {
    return flux_terms(jet_of(Z.F, GraphPoint{{x + dx * h, y + dy * h}, u + du * h}));
  };
  const auto c = A(0, 0, 0);
  const auto xp = A(1, 0, 0), xm = A(-1, 0, 0), yp = A(0, 1, 0), ym = A(0, -1, 0), up = A(0, 0, 1), um = A(0, 0, -1);
  const auto xpup = A(1, 0, 1), xpum = A(1, 0, -1), xmup = A(-1, 0, 1), xmum = A(-1, 0, -1);
  const auto ypup = A(0, 1, 1), ypum = A(0, 1, -1), ymup = A(0, -1, 1), ymum = A(0, -1, -1);

  auto dx = [&](int k) { return (xp[k] - xm[k]) / (2 * h); };
  auto dy = [&](int k) { return (yp[k] - ym[k]) / (2 * h); };
  auto du = [&](int k) { return (up[k] - um[k]) / (2 * h); };
  auto dxx = [&](int k) { return (xp[k] - 2.0 * c[k] + xm[k]) / (h * h); };
  auto dyy = [&](int k) { return (yp[k] - 2.0 * c[k] + ym[k]) / (h * h); };
  auto duu = [&](int k) { return (up[k] - 2.0 * c[k] + um[k]) / (h * h); };
  auto dxu = [&](int k) { return (xpup[k] - xpum[k] - xmup[k] + xmum[k]) / (4 * h * h); };
  auto dyu = [&](int k) { return (ypup[k] - ypum[k] - ymup[k] + ymum[k]) / (4 * h * h); };
  auto dz = [&](int k) { return 0.5 * (dx(k) - I * dy(k)); };
  auto dzb = [&](int k) { return 0.5 * (dx(k) + I * dy(k)); };
  auto dzzb = [&](int k) { return 0.25 * (dxx(k) + dyy(k)); };
  auto dzu = [&](int k) { return 0.5 * (dxu(k) - I * dyu(k)); };
  auto dzbu = [&](int k) { return 0.5 * (dxu(k) + I * dyu(k)); };

  const cplx L1 = du(0) - dzzb(1) - dzb(2) - du(3) + dzu(4) - dz(5) - du(6) + dzbu(7) + dzb(8) + dz(9) - duu(10);
  return L1.real();
}

void require_support_inside(const BumpField& f, const QuadratureGrid& grid) {
  if (grid.kind != GridKind::base_box) throw DomainError("Heisenberg integrals need a base_box grid");
  const auto s = f.support();
  const auto& b = grid.params;
  for (int i = 0; i < 3; ++i) {
    if (s[2 * i] < b[2 * i] || s[2 * i + 1] > b[2 * i + 1]) {
      throw DomainError("bump support touches or crosses the boundary of the base box");
    }
  }
}

struct HeisQuadratic {
  double LLbar2 = 0.0;  ///< ∫ |LL̄F̊|²
  double T2 = 0.0;      ///< ∫ |TF̊|²
};

HeisQuadratic heis_quadratic(const BumpField& f, const QuadratureGrid& grid) {
  require_support_inside(f, grid);
  const GraphField F = f.field();
  HeisQuadratic q;
  q.LLbar2 = parallel_sum(grid.size(), [&](std::size_t i) {
    const auto& p = grid.nodes[i];
    const cplx z{p[0], p[1]};
    return grid.weights[i] * std::norm(heis_LLbar(jet_of(F, GraphPoint{z, p[2]}), z));
  });
  q.T2 = parallel_sum(grid.size(), [&](std::size_t i) {
    const auto& p = grid.nodes[i];
    const double t = jet_of(F, GraphPoint{{p[0], p[1]}, p[2]}).Fu;
    return grid.weights[i] * t * t;
  });
  return q;
}

}  // namespace

GraphField BumpField::field() const {
  const BumpField b = *this;
  return GraphField([b](const std::array<D3, 3>& p) {
    D3 prod(b.amplitude);
    D3 lin(1.0);
    for (int i = 0; i < 3; ++i) {
      const D3 t = (p[i] - b.center[i]) / b.half_width[i];
      const D3 bi = bump1(t);
      if (bi.v == 0.0) return D3(0.0);
      prod = prod * bi;
      lin = lin + b.tilt[i] * t;
    }
    return prod * lin;
  });
}

std::array<double, 6> BumpField::support() const {
  std::array<double, 6> s{};
  for (int i = 0; i < 3; ++i) {
    s[2 * i] = center[i] - half_width[i];
    s[2 * i + 1] = center[i] + half_width[i];
  }
  return s;
}

BumpField BumpField::scaled(double s) const {
  BumpField b = *this;
  b.amplitude *= s;
  return b;
}

double L1_graph(const GraphSurface& Z, const GraphPoint& p) {
  const double h = 1e-3 * Z.base.scale();
  const double coarse = L1_stencil(Z, p, h), fine = L1_stencil(Z, p, 0.5 * h);
  return fine + (fine - coarse) / 3.0;
}

double kappa_graph(const GraphSurface& Z, const GraphPoint& p) { return 0.375 * L1_graph(Z, p); }

double L1_rigid(const PlanarField& F, cplx z, double scale) {
  auto inner = [&](double x, double y) {
    const double a = planar_laplace_zzbar(F, {x, y});
    if (!(a > 0)) throw NotPseudoconvexError("F_zzbar = " + std::to_string(a) + " <= 0 near the evaluation point");
    return std::pow(a, -2.0 / 3.0);
  };
  auto lap = [&](double h) {
    const double x = z.real(), y = z.imag();
    const double c = inner(x, y);
    return 0.25 * (inner(x + h, y) + inner(x - h, y) + inner(x, y + h) + inner(x, y - h) - 4.0 * c) / (h * h);
  };
  const double h = 1e-3 * scale;
  const double coarse = lap(h), fine = lap(0.5 * h);
  return -(fine + (fine - coarse) / 3.0);
}

cplx heis_LLbar(const Jet2Graph& j, cplx z) {
  return j.Fzzbar - I * j.Fu - I * z * j.Fzu + I * std::conj(z) * j.Fzbaru + std::norm(z) * j.Fuu;
}

double heis_second_variation(const BumpField& f, const QuadratureGrid& grid) {
  const HeisQuadratic q = heis_quadratic(f, grid);
  return -(q.LLbar2 + 6.0 * q.T2) / 9.0;
}

double heis_second_variation_corrected(const BumpField& f, const QuadratureGrid& grid) {
  const HeisQuadratic q = heis_quadratic(f, grid);
  return -std::cbrt(4.0) * (q.LLbar2 - 10.0 * q.T2) / 9.0;
}

std::string to_string(Functional f) {
  switch (f) {
    case Functional::F:
      return "F";
    case Functional::V:
      return "V";
    case Functional::Q:
      return "Q";
  }
  return "?";
}

double FamilyValues::get(Functional f) const {
  switch (f) {
    case Functional::F:
      return fefferman;
    case Functional::V:
      if (!volume) throw PreconditionError("volume is not defined for this family");
      return *volume;
    case Functional::Q:
      if (!quotient) throw PreconditionError("quotient is not defined for this family");
      return *quotient;
  }
  return fefferman;
}

PerturbationFamily PerturbationFamily::sphere(const SpherePotential& base, const SpherePolynomial& direction,
                                              const QuadratureGrid& grid) {
  if (!base.poly().is_zero() && base.scale() != 0.0) {
    throw PreconditionError("sphere family base must not carry a polynomial part");
  }
  if (!direction.is_real()) throw PreconditionError("perturbation direction must be real-valued");
  PerturbationFamily f;
  f.name_ = "sphere[" + base.describe() + "] + eps*(" + direction.str() + ")";
  f.grid_ = grid;
  f.sphere_base_ = base;
  f.sphere_direction_ = direction;
  return f;
}

PerturbationFamily PerturbationFamily::graph(const GraphSurface& base, const BumpField& direction,
                                             const QuadratureGrid& grid) {
  PerturbationFamily f;
  f.name_ = base.name + " + eps*bump";
  f.grid_ = grid;
  f.graph_base_ = base;
  f.graph_direction_ = direction;
  return f;
}

FamilyValues PerturbationFamily::evaluate(double eps) const {
  FamilyValues out;
  if (sphere_base_) {
    SpherePotential g = SpherePotential::polynomial(sphere_direction_, eps);
    g.add_constant(sphere_base_->constant_term());
    for (const auto& t : sphere_base_->logs()) g.add_log(t.p, t.coeff);
    const RadialSurface Z = RadialSurface::from_potential(g, name_);
    out.fefferman = fefferman_radial(Z, grid_);
    out.volume = volume_radial(Z, grid_);
    out.quotient = iso_quotient(out.fefferman, *out.volume);
    return out;
  }
  GraphSurface Z = *graph_base_;
  if (eps != 0.0) {
    const GraphField base = graph_base_->F, bump = graph_direction_.field();
    Z.F = GraphField([base, bump, eps](const std::array<D3, 3>& p) { return base(p) + eps * bump(p); });
  }
  out.fefferman = fefferman_graph(Z, grid_);
  return out;
}

std::vector<double> default_eps_set() { return {-4e-2, -3e-2, -2e-2, -1e-2, 1e-2, 2e-2, 3e-2, 4e-2}; }

EpsFit eps_fit_oracle(const PerturbationFamily& fam, Functional functional, const std::vector<double>& eps,
                      unsigned degree) {
  if (degree > 4) throw PreconditionError("fit degree must be <= 4");
  if (eps.size() < degree + 1) throw PreconditionError("not enough eps values for the requested degree");
  for (double e : eps) {
    const bool mirrored =
        std::any_of(eps.begin(), eps.end(), [e](double f) { return std::abs(e + f) <= 1e-14 * std::abs(e); });
    if (!mirrored) throw PreconditionError("eps-set must be symmetric about 0");
  }
  EpsFit fit;
  fit.eps = eps;
  fit.values.resize(eps.size());
  parallel_for(eps.size(), [&](std::size_t i) { fit.values[i] = fam.evaluate(eps[i]).get(functional); });

  const Eigen::Index n = static_cast<Eigen::Index>(eps.size()), m = degree + 1;
  Eigen::MatrixXd V(n, m);
  Eigen::VectorXd b(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    double p = 1.0;
    for (Eigen::Index k = 0; k < m; ++k, p *= eps[i]) V(i, k) = p;
    b(i) = fit.values[i];
  }
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(V);
  const auto& sv = svd.singularValues();
  fit.condition = sv(sv.size() - 1) > 0 ? sv(0) / sv(sv.size() - 1) : INFINITY;
  if (!(fit.condition < 1e14)) {
    std::ostringstream msg;
    msg << "eps-fit is ill-conditioned (condition number " << fit.condition << ")";
    throw ConvergenceError(msg.str());
  }
  const Eigen::VectorXd c = V.colPivHouseholderQr().solve(b);
  fit.coeffs.assign(c.data(), c.data() + c.size());
  fit.residual = std::sqrt((V * c - b).squaredNorm() / static_cast<double>(n));
  double emax = 0.0;
  for (double e : eps) emax = std::max(emax, std::abs(e));
  const double c2 = fit.coeffs.size() > 2 ? fit.coeffs[2] : 0.0;
  fit.flagged = fit.residual > 1e-3 * std::abs(c2) * emax * emax;
  return fit;
}

bool CubeSimpReport::sides_agree(double rel_tol) const {
  return std::abs(lhs - rhs) <= rel_tol * std::max(std::abs(lhs), std::abs(rhs));
}

CubeSimpReport cube_simp_check(const BumpField& f, const QuadratureGrid& grid) {
  require_support_inside(f, grid);
  const GraphField bump = f.field();
  const GraphField F([bump](const std::array<D3, 3>& p) { return p[0] * p[0] + p[1] * p[1] + bump(p); });
  CubeSimpReport r;
  std::vector<double> mu(grid.size()), fzz(grid.size()), fu(grid.size());
  parallel_for(
      grid.size(),
      [&](std::size_t i) {
        const auto& p = grid.nodes[i];
        const GraphPoint q{{p[0], p[1]}, p[2]};
        mu[i] = graph_mu(jet_of(F, q));
        const Jet2Graph jb = jet_of(bump, q);
        fzz[i] = jb.Fzzbar;
        fu[i] = jb.Fu;
      },
      512);
  double vol = 0.0, fsum = 0.0;
  r.max_Fzzbar = -INFINITY;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double w = grid.weights[i];
    r.lhs += w * mu[i];
    r.rhs += w * (1.0 + (3.0 * fzz[i] - 1.0) * fu[i] * fu[i]);
    r.rhs_corrected += w * (1.0 + 3.0 * (1.0 + fzz[i]) * fu[i] * fu[i]);
    fsum += mu[i] > 0 ? w * std::cbrt(mu[i]) : NAN;
    vol += w;
    r.max_Fzzbar = std::max(r.max_Fzzbar, fzz[i]);
  }
  r.fefferman = std::cbrt(4.0) * fsum;  // NaN once the surface stops being pseudoconvex
  r.heisenberg = std::cbrt(4.0) * vol;
  return r;
}

}  // namespace fefflab
