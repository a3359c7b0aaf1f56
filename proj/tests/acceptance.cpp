// One PASS/FAIL line per acceptance criterion; the exit status is nonzero when any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <json.hpp>
#include <numbers>
#include <sstream>
#include <string>

#include "fefflab/ball_pair.hpp"
#include "fefflab/cli.hpp"
#include "fefflab/corpus.hpp"
#include "fefflab/families.hpp"
#include "fefflab/measures.hpp"
#include "fefflab/polynomial_literal.hpp"
#include "fefflab/sphere_algebra.hpp"
#include "fefflab/surfaces.hpp"
#include "fefflab/variation.hpp"

using namespace fefflab;
using nlohmann::json;

namespace {

constexpr double pi = std::numbers::pi;
const double fs = std::cbrt(16.0) * pi * pi;

double rel_err(double a, double b) { return std::abs(a / b - 1); }

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

json run_cli(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = dispatch(args, out, err);
  return json::parse(out.str());
}

int failures = 0;

void criterion(int n, const char* title, double limit_s, const std::function<void(Verdict&)>& body) {
  Verdict v;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    body(v);
  } catch (const std::exception& e) {
    v.pass = false;
    v.detail << " [exception: " << e.what() << "]";
  }
  const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (dt > limit_s) {
    v.pass = false;
    v.detail << " [runtime above " << limit_s << " s]";
  }
  if (!v.pass) ++failures;
  std::printf("%s criterion %d: %s;%s (%.2f s of %.0f s)\n", v.pass ? "PASS" : "FAIL", n, title, v.detail.str().c_str(), dt,
              limit_s);
  std::fflush(stdout);
}

double kappa_at_center(const GraphSurface& Z, double offset) {
  const auto c = Z.base.center();
  const double h = offset * Z.base.scale();
  return kappa_graph(Z, {{c[0] + h, c[1] - h / 2}, c[2] + h / 3});
}

}  // namespace

int main() {
  criterion(1, "sphere constants from `measure --surface sphere` at 32^3", 5, [](Verdict& v) {
    int code = 0;
    const json d = run_cli({"measure", "--surface", "sphere", "--n", "32"}, code);
    const double eF = rel_err(d["result"]["fefferman"], fs), eV = rel_err(d["result"]["volume"], pi * pi / 2),
                 eQ = rel_err(d["result"]["quotient"], 8 * pi);
    v.detail << " rel errors F " << eF << ", V " << eV << ", Q " << eQ;
    v.require(code == 0, "exit code");
    v.require(eF <= 1e-6 && eV <= 1e-10 && eQ <= 1e-6, "tolerances");
  });

  criterion(2, "sphere and ball monomial integrals with a+b <= 6 against the exact values", 5, [](Verdict& v) {
    int code = 0;
    const json d = run_cli({"validate-quadrature", "--n", "32", "--max-degree", "6"}, code);
    const double worst = d["result"]["max_rel_err"];
    v.detail << " " << d["result"]["integrals"].size() << " (a,b) pairs, max rel error " << worst;
    v.require(code == 0 && worst <= 1e-8, "1e-8 relative");
  });

  criterion(3, "curvature invariant on spheres, hyperboloid, Heisenberg and v=sqrt(z^-2+zbar^-2)", 30, [](Verdict& v) {
    const double k0 = 3 / std::cbrt(2.0);
    double worst_rel = 0, worst_abs = 0;
    for (double R : {0.5, 1.0, 2.0})
      for (double off : {0.0, 0.15, -0.2}) worst_rel = std::max(worst_rel, rel_err(kappa_at_center(sphere_graph(R), off), k0 * std::pow(R, -4.0 / 3.0)));
    for (double off : {0.0, 0.15, -0.2}) worst_rel = std::max(worst_rel, rel_err(kappa_at_center(hyperboloid_graph(1), off), -k0));
    for (double off : {0.0, 0.15, -0.2}) {
      worst_abs = std::max(worst_abs, std::abs(kappa_at_center(heisenberg_graph(), off)));
      worst_abs = std::max(worst_abs, std::abs(kappa_at_center(rigid_sqrt_graph(), off)));
    }
    v.detail << " max rel error " << worst_rel << ", max |kappa| on flat cases " << worst_abs;
    v.require(worst_rel <= 1e-3, "1e-3 relative");
    v.require(worst_abs <= 1e-6, "1e-6 absolute");
  });

  criterion(4, "exact second variation equals the closed forms on Example A and B modes", 2, [](Verdict& v) {
    unsigned checked = 0, bad = 0;
    for (unsigned j = 0; j <= 8; ++j)
      for (unsigned k = 0; j + k <= 8; ++k) {
        if (j + k == 0) continue;
        ++checked;
        if (!(second_variation_Q(example_mode(ExampleKind::A, j, k)) == closed_form_coeff(ExampleKind::A, j, k))) ++bad;
      }
    for (unsigned j = 1; j <= 4; ++j)
      for (unsigned k = 1; k <= 4; ++k) {
        ++checked;
        if (!(second_variation_Q(example_mode(ExampleKind::B, j, k)) == closed_form_coeff(ExampleKind::B, j, k))) ++bad;
      }
    v.detail << " " << checked << " modes, " << bad << " mismatches";
    v.require(bad == 0, "exact equality");
  });

  criterion(5, "eps-fit of Q reproduces 64pi/9 and -64pi/45", 120, [](Verdict& v) {
    const QuadratureGrid grid = make_sphere_grid(24, 24, 24);
    const std::pair<const char*, double> cases[] = {{"z^2 + zb^2", 64 * pi / 9}, {"z^2*wb^2 + zb^2*w^2", -64 * pi / 45}};
    for (const auto& [poly, exact] : cases) {
      const auto fam = PerturbationFamily::sphere(SpherePotential::constant(0), parse_polynomial(poly), grid);
      const double c2 = eps_fit_oracle(fam, Functional::Q).coeffs[2];
      v.detail << " " << poly << ": " << c2 << " (rel " << rel_err(c2, exact) << ")";
      v.require(rel_err(c2, exact) <= 1e-2, std::string("1% on ") + poly);
    }
  });

  criterion(6, "Heisenberg second variation vs eps-fit, cube identity, semi-global bound", 120, [](Verdict& v) {
    const BumpField bumps[] = {{0.05, {0, 0, 0}, {1, 1, 1}, {0, 0, 0}}, {0.05, {0.2, -0.1, 0.1}, {0.8, 0.9, 0.7}, {0.3, -0.2, 0.4}}};
    int idx = 0;
    for (const BumpField& b : bumps) {
      ++idx;
      const auto sup = b.support();
      const QuadratureGrid grid = make_base_box_grid(sup, 48, 48, 48);
      const double form = heis_second_variation(b, grid), corrected = heis_second_variation_corrected(b, grid);
      const double c2 =
          eps_fit_oracle(PerturbationFamily::graph(heisenberg_graph(GraphBase::box(sup)), b, grid), Functional::F).coeffs[2];
      const CubeSimpReport cube = cube_simp_check(b, grid);
      v.detail << " bump" << idx << ": form " << form << " vs fit " << c2 << " (expanded form " << corrected << ")"
               << ", cube lhs " << cube.lhs << " rhs " << cube.rhs << " (rel " << rel_err(cube.rhs, cube.lhs)
               << "), max Fzzbar " << cube.max_Fzzbar << ", F " << cube.fefferman << " vs " << cube.heisenberg << ";";
      v.require(rel_err(form, c2) <= 1e-2, "bump" + std::to_string(idx) + " second variation within 1%");
      v.require(cube.sides_agree(1e-6), "bump" + std::to_string(idx) + " cube identity 1e-6");
      if (cube.semi_global_hypothesis())
        v.require(cube.fefferman <= cube.heisenberg, "bump" + std::to_string(idx) + " semi-global bound");
    }
  });

  criterion(7, "ball-pair minimum and theta^3 expansion order", 120, [](Verdict& v) {
    const MinimizeResult m = minimize_q();
    v.detail << " (R, theta, q) = (" << m.R << ", " << m.theta << ", " << m.q << ")";
    v.require(std::abs(m.R) <= 1e-3 && std::abs(m.theta - 1.9473) <= 1e-3 && std::abs(m.q - 17.0297) <= 1e-3, "argmin");
    for (double R : {0.3, 0.5, 0.7}) {
      std::vector<double> lx, ly;
      for (double t = 1e-3; t <= 0.1 + 1e-12; t *= std::pow(10.0, 0.25)) {
        lx.push_back(std::log(t));
        ly.push_back(std::log(std::abs(theta_expansion_residual(R, t))));
      }
      const double slope = fit_line(lx, ly).slope;
      v.detail << ", slope at R=" << R << " " << slope;
      v.require(slope >= 3.9, "slope >= 3.9");
    }
  });

  criterion(8, "shear asymptotic slopes over eps = 1e-2..1e-6", 180, [](Verdict& v) {
    const ShearAsymptotics a = shear_asymptotics({1e-2, 1e-3, 1e-4, 1e-5, 1e-6});
    const double tF = fs, tV = 4 * pi, tQ = pi * pi;
    v.detail << " F " << a.F_vs_log.slope << " vs " << tF << " (rel " << rel_err(a.F_vs_log.slope, tF) << ")"
             << ", V " << a.V_vs_log.slope << " vs " << tV << " (rel " << rel_err(a.V_vs_log.slope, tV) << ")"
             << ", Q " << a.Q_vs_sqrt_log.slope << " vs " << tQ << " (rel " << rel_err(a.Q_vs_sqrt_log.slope, tQ) << ")";
    v.require(rel_err(a.F_vs_log.slope, tF) <= 0.05, "F slope 5%");
    v.require(rel_err(a.V_vs_log.slope, tV) <= 0.05, "V slope 5%");
    v.require(rel_err(a.Q_vs_sqrt_log.slope, tQ) <= 0.10, "Q slope 10%");
  });

  criterion(9, "inequality suites: HL, JL, circular Q <= 8pi, tubes", 600, [](Verdict& v) {
    Corpus rng(20240601);
    const QuadratureGrid g32 = make_sphere_grid(32, 32, 32);
    unsigned hl_bad = 0;
    double hl_max = 0;
    for (int k = 0; k < 50; ++k) {
      const HLReport r = hl_check(rng.holomorphic(4), g32);
      hl_bad += !r.holds;
      hl_max = std::max(hl_max, r.ratio);
    }
    unsigned jl_bad = 0;
    for (int k = 0; k < 50; ++k) jl_bad += !jl_check(rng.holomorphic(4)).holds;
    bool jl_eq = true;
    for (int k = 0; k < 3; ++k) {
      const JLReport r = jl_check(SpherePolynomial(rng.rational() + ExactComplex(1)));
      jl_eq = jl_eq && r.holds && r.equality;
    }
    double circ_max = 0;
    for (int k = 0; k < 20; ++k) {
      const CircularReport c = circular_measures(CircularSurface::from_potential(rng.circular()), g32);
      circ_max = std::max(circ_max, *c.report.quotient / (8 * pi));
    }
    double lin_dev = 0;
    unsigned lin_n = 0;
    for (int k = 0; k < 5; ++k) {
      const auto Z = CircularSurface::from_potential(SpherePotential::linear_image(rng.invertible()));
      // eccentric images concentrate the integrand, so refine until two resolutions agree
      double q = NAN;
      for (unsigned n : {32U, 48U, 64U, 96U, 128U}) {
        const double next = *circular_measures(Z, make_sphere_grid(n, n, n)).report.quotient;
        const bool settled = std::abs(next - q) <= 1e-9 * next;
        q = next;
        lin_n = std::max(lin_n, n);
        if (settled) break;
      }
      lin_dev = std::max(lin_dev, rel_err(q, 8 * pi));
    }
    double tube_max = 0, ellipse_dev = 0;
    for (auto [a, b] : {std::pair{1.0, 1.0}, {2.0, 1.0}, {3.0, 0.5}, {1.3, 1.1}}) {
      const TubeReport t = tube_measures(ConvexCurve::ellipse(a, b));
      ellipse_dev = std::max(ellipse_dev, rel_err(t.ratio, 8 * pi * pi));
    }
    for (const ConvexCurve& c : {ConvexCurve::smoothed_superellipse(), ConvexCurve::polar_wave(0.1, 3),
                                 ConvexCurve::polar_wave(0.05, 2), ConvexCurve::polar_wave(0.02, 5)})
      tube_max = std::max(tube_max, tube_measures(c).ratio / (8 * pi * pi));
    v.detail << " HL failures " << hl_bad << "/50 (max ratio " << hl_max << "); JL failures " << jl_bad
             << "/50, constants equal " << (jl_eq ? "yes" : "no") << "; circular max Q/8pi " << circ_max
             << ", linear-image max deviation " << lin_dev << " (finest grid " << lin_n << "^3)" << "; non-ellipse tube max ratio/8pi^2 " << tube_max
             << ", ellipse deviation " << ellipse_dev;
    v.require(hl_bad == 0, "HL");
    v.require(jl_bad == 0 && jl_eq, "JL");
    v.require(circ_max <= 1 + 1e-6, "circular Q <= 8pi");
    v.require(lin_dev <= 1e-6, "linear-image equality");
    v.require(tube_max <= 1 + 1e-6 && ellipse_dev <= 1e-8, "tubes");
  });

  criterion(10, "unitary invariance, dilation law, graph/radial cap agreement", 120, [](Verdict& v) {
    Corpus rng(7);
    const QuadratureGrid grid = make_sphere_grid(32, 32, 32);
    const SpherePotential g = SpherePotential::polynomial(parse_polynomial("z^2*wb + zb^2*w + 0.5*z*zb*w*wb - 1/8"), 0.1);
    const RadialSurface Z = RadialSurface::from_potential(g);
    const double f = fefferman_radial(Z, grid), vol = volume_radial(Z, grid);
    double uni = 0;
    for (int k = 0; k < 5; ++k) {
      const RadialSurface ZU = RadialSurface::from_potential(g.precompose(rng.unitary()));
      uni = std::max({uni, rel_err(fefferman_radial(ZU, grid), f), rel_err(volume_radial(ZU, grid), vol)});
    }
    double dil = 0;
    for (double R : {0.5, 2.0, 3.0}) {
      const MeasureReport r = measure_radial(RadialSurface::sphere(R), grid);
      dil = std::max({dil, rel_err(r.fefferman, fs * std::pow(R, 8.0 / 3.0)), rel_err(*r.quotient, 8 * pi)});
    }
    double cap = 0;
    for (double t0 : {0.6, 1.0, 1.4}) {
      const GraphSurface C = sphere_cap_graph(t0);
      const double graph = fefferman_graph(C, C.base.grid(32));
      const double radial = fefferman_radial(RadialSurface::sphere(), make_sphere_cap_grid(t0, 24, 16, 16));
      cap = std::max(cap, rel_err(graph, radial));
    }
    v.detail << " unitary " << uni << ", dilation " << dil << ", caps " << cap;
    v.require(uni <= 1e-8, "unitary");
    v.require(dil <= 1e-8, "dilation");
    v.require(cap <= 1e-5, "caps");
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
