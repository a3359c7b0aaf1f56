#include "fefflab/core_calculus.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fefflab/errors.hpp"

namespace fefflab {

namespace {

constexpr cplx I{0.0, 1.0};

template <int N>
std::string coords_str(const std::array<double, N>& p) {
  std::string s = "(";
  for (int i = 0; i < N; ++i) s += (i ? ", " : "") + std::to_string(p[i]);
  return s + ")";
}

}  // namespace

double bordered_hessian_M(const Jet2Ambient& j) {
  // Row 0: (0, ρ_{z_1}, ρ_{z_2}); row k: (ρ_{z̄_k}, ρ_{z_1 z̄_k}, ρ_{z_2 z̄_k}).
  const cplx a01 = j.d[0], a02 = j.d[1];
  const cplx a10 = j.dbar[0], a11 = j.levi[0][0], a12 = j.levi[1][0];
  const cplx a20 = j.dbar[1], a21 = j.levi[0][1], a22 = j.levi[1][1];

  const cplx t1 = -a01 * (a10 * a22 - a12 * a20);
  const cplx t2 = a02 * (a10 * a21 - a11 * a20);
  const cplx det = t1 + t2;

  const double scale = std::abs(a01 * a10 * a22) + std::abs(a01 * a12 * a20) + std::abs(a02 * a10 * a21) +
                       std::abs(a02 * a11 * a20);
  if (std::abs(det.imag()) > kImagResidueTolerance * std::max(scale, 1e-300) &&
      std::abs(det.imag()) > std::numeric_limits<double>::min()) {
    throw MalformedJetError("bordered Hessian determinant has imaginary residue " + std::to_string(det.imag()));
  }
  return -det.real();
}

double graph_mu(const Jet2Graph& j) {
  const cplx mu = j.Fzzbar * (j.Fu * j.Fu + 1.0) - j.Fzu * (j.Fu + I) * j.Fzbar - j.Fzbaru * (j.Fu - I) * j.Fz +
                  j.Fuu * std::norm(j.Fz);
  return mu.real();
}

template <int N>
double ScalarField<N>::value(const Coords& p) const {
  if (!contains(p)) throw DomainError("point " + coords_str<N>(p) + " outside field domain");
  std::array<Dual2<N>, N> args;
  for (int i = 0; i < N; ++i) args[i] = Dual2<N>(p[i]);
  return rule_(args).v;
}

template <int N>
RealJet<N> ScalarField<N>::real_jet(const Coords& p) const {
  if (!contains(p)) throw DomainError("point " + coords_str<N>(p) + " outside field domain");
  RealJet<N> out;
  if (mode_ == DerivativeMode::analytic) {
    std::array<Dual2<N>, N> args;
    for (int i = 0; i < N; ++i) args[i] = Dual2<N>::variable(p[i], i);
    const Dual2<N> r = rule_(args);
    out.value = r.v;
    out.grad = r.g;
    out.hess = r.h;
  } else {
    std::array<double, N> h;
    const double base = std::cbrt(std::numeric_limits<double>::epsilon());
    for (int i = 0; i < N; ++i) h[i] = step_ > 0 ? step_ : base * std::max(1.0, std::abs(p[i]));

    auto at = [&](std::initializer_list<std::pair<int, double>> offsets) {
      Coords q = p;
      for (auto [i, s] : offsets) q[i] += s * h[i];
      if (!contains(q)) throw DomainError("finite-difference stencil leaves the domain at " + coords_str<N>(p));
      return value(q);
    };
    out.value = value(p);
    for (int i = 0; i < N; ++i) {
      const double fp = at({{i, 1.0}}), fm = at({{i, -1.0}});
      out.grad[i] = (fp - fm) / (2.0 * h[i]);
      const double fpp = at({{i, 2.0}}), fmm = at({{i, -2.0}});
      out.hess[i * N + i] = (fpp - 2.0 * out.value + fmm) / (4.0 * h[i] * h[i]);
      for (int k = 0; k < i; ++k) {
        const double d = (at({{i, 1.0}, {k, 1.0}}) - at({{i, 1.0}, {k, -1.0}}) - at({{i, -1.0}, {k, 1.0}}) +
                          at({{i, -1.0}, {k, -1.0}})) /
                         (4.0 * h[i] * h[k]);
        out.hess[i * N + k] = out.hess[k * N + i] = d;
      }
    }
  }
  bool finite = std::isfinite(out.value);
  for (double g : out.grad) finite = finite && std::isfinite(g);
  for (double g : out.hess) finite = finite && std::isfinite(g);
  if (!finite) throw DomainError("non-finite derivative at " + coords_str<N>(p));
  return out;
}

template class ScalarField<2>;
template class ScalarField<3>;
template class ScalarField<4>;

Jet2Graph graph_jet_from_real(const RealJet<3>& j) {
  enum { X, Y, U };
  Jet2Graph g;
  g.F = j.value;
  g.Fz = 0.5 * cplx(j.grad[X], -j.grad[Y]);
  g.Fzbar = std::conj(g.Fz);
  g.Fu = j.grad[U];
  g.Fzzbar = 0.25 * (j.hessian(X, X) + j.hessian(Y, Y));
  g.Fzu = 0.5 * cplx(j.hessian(X, U), -j.hessian(Y, U));
  g.Fzbaru = std::conj(g.Fzu);
  g.Fuu = j.hessian(U, U);
  return g;
}

Jet2Ambient ambient_jet_from_real(const RealJet<4>& j) {
  Jet2Ambient a;
  a.value = j.value;
  // Real index pairs (re, im) of z_1 = z and z_2 = w.
  const int re[2] = {0, 2};
  const int im[2] = {1, 3};
  for (int p = 0; p < 2; ++p) {
    a.d[p] = 0.5 * cplx(j.grad[re[p]], -j.grad[im[p]]);
    a.dbar[p] = std::conj(a.d[p]);
  }
  for (int p = 0; p < 2; ++p) {
    for (int q = 0; q < 2; ++q) {
      const double xx = j.hessian(re[p], re[q]), yy = j.hessian(im[p], im[q]);
      const double xy = j.hessian(re[p], im[q]), yx = j.hessian(im[p], re[q]);
      // ∂_{z_p}∂_{z̄_q} = ¼(∂x_p − i∂y_p)(∂x_q + i∂y_q)
      a.levi[p][q] = 0.25 * cplx(xx + yy, xy - yx);
      // ∂_{z_p}∂_{z_q} = ¼(∂x_p − i∂y_p)(∂x_q − i∂y_q)
      a.hol[p][q] = 0.25 * cplx(xx - yy, -xy - yx);
    }
  }
  return a;
}

Jet2Graph jet_of(const GraphField& field, const GraphPoint& p) {
  return graph_jet_from_real(field.real_jet({p.z.real(), p.z.imag(), p.u}));
}

Jet2Ambient jet_of(const AmbientField& field, const AmbientPoint& p) {
  return ambient_jet_from_real(field.real_jet({p.z.real(), p.z.imag(), p.w.real(), p.w.imag()}));
}

double planar_laplace_zzbar(const PlanarField& field, cplx z) {
  const auto j = field.real_jet({z.real(), z.imag()});
  return 0.25 * (j.hessian(0, 0) + j.hessian(1, 1));
}

AmbientField graph_defining_function(const GraphField& graph) {
  auto rule = [graph](const std::array<Dual2<4>, 4>& p) {
    std::array<Dual2<3>, 3> args;
    for (int i = 0; i < 3; ++i) args[i] = Dual2<3>::variable(p[i].v, i);
    const Dual2<3> f = graph(args);
    Dual2<4> out(f.v);
    // Second-order chain rule through (x, y, u) = (p0, p1, p2).
    for (int a = 0; a < 4; ++a) {
      for (int i = 0; i < 3; ++i) out.g[a] += f.g[i] * p[i].g[a];
    }
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < 4; ++b) {
        double s = 0.0;
        for (int i = 0; i < 3; ++i) {
          s += f.g[i] * p[i].h[a * 4 + b];
          for (int k = 0; k < 3; ++k) s += f.h[i * 3 + k] * p[i].g[a] * p[k].g[b];
        }
        out.h[a * 4 + b] = s;
      }
    return out - p[3];
  };
  ScalarField<4>::Domain domain = [graph](const std::array<double, 4>& q) {
    return graph.contains({q[0], q[1], q[2]});
  };
  return AmbientField(rule, domain, graph.mode(), graph.step());
}

}  // namespace fefflab
