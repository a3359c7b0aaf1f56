#include "fefflab/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <sstream>

#include "fefflab/ball_pair.hpp"
#include "fefflab/corpus.hpp"
#include "fefflab/errors.hpp"
#include "fefflab/families.hpp"
#include "fefflab/measures.hpp"
#include "fefflab/polynomial_literal.hpp"
#include "fefflab/report.hpp"
#include "fefflab/surfaces.hpp"
#include "fefflab/variation.hpp"

namespace fefflab {

namespace {

constexpr double kPi = std::numbers::pi;

struct Output {
  json config = json::object();
  json result = json::object();
  Contracts contracts;
  std::optional<std::string> csv;
};

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

void require_min(const std::string& flag, unsigned value, unsigned min) {
  if (value < min) throw DomainError(flag + " must be at least " + std::to_string(min));
}

SpherePolynomial polynomial_arg(const std::string& text) {
  if (text.empty()) throw DomainError("--poly is required");
  return parse_polynomial(text);
}

ExactComplex constant_arg(const std::string& text) {
  const SpherePolynomial p = parse_polynomial(text);
  if (p.degree() != 0) throw DomainError("matrix entry '" + text + "' is not a constant");
  return p.coefficient({});
}

struct MeasureArgs {
  std::string surface = "sphere";
  double radius = 1.0;
  std::string poly;
  double scale = 1.0;
  bool circular = false;
  std::vector<std::string> matrix{"1", "0", "0", "1"};
  double theta0 = 1.0;
  unsigned n = 32;
};

Output run_measure(const MeasureArgs& a) {
  require_min("--n", a.n, 4);
  Output o;
  o.config = {{"surface", a.surface}, {"radius", a.radius}, {"poly", a.poly},         {"scale", a.scale},
              {"circular", a.circular}, {"matrix", a.matrix}, {"theta0", a.theta0}, {"n", a.n}};
  const double fs = std::cbrt(16.0) * kPi * kPi;
  auto circular_result = [&](const CircularSurface& Z) {
    const CircularReport c = circular_measures(Z, make_sphere_grid(a.n, a.n, a.n));
    o.result = to_json(c.report);
    o.result["circular"] = to_json(c);
    o.contracts.add("quotient_le_8pi", *c.report.quotient <= 8 * kPi * (1 + 1e-6));
    o.contracts.add("gauss_bonnet", rel_close(c.gauss_bonnet, 4 * kPi, 1e-4));
    o.contracts.add("curvature_formula", rel_close(c.fefferman_from_curvature, c.report.fefferman, 1e-10));
    o.csv = measures_csv({c.report});
  };
  if (a.surface == "sphere") {
    if (!(a.radius > 0)) throw DomainError("--radius must be positive");
    const MeasureReport r = measure_radial(RadialSurface::sphere(a.radius), make_sphere_grid(a.n, a.n, a.n));
    o.result = to_json(r);
    o.contracts.add("fefferman_constant", rel_close(r.fefferman, fs * std::pow(a.radius, 8.0 / 3.0), 1e-6));
    o.contracts.add("volume_constant", rel_close(*r.volume, kPi * kPi / 2 * std::pow(a.radius, 4), 1e-10));
    o.contracts.add("quotient_constant", rel_close(*r.quotient, 8 * kPi, 1e-6));
    o.csv = measures_csv({r});
  } else if (a.surface == "polynomial") {
    const SpherePotential g = SpherePotential::polynomial(polynomial_arg(a.poly), a.scale);
    if (a.circular) {
      circular_result(CircularSurface::from_potential(g, "circular(" + g.describe() + ")"));
    } else {
      const MeasureReport r =
          measure_radial(RadialSurface::from_potential(g, "radial(" + g.describe() + ")"), make_sphere_grid(a.n, a.n, a.n));
      o.result = to_json(r);
      o.contracts.add("finite", std::isfinite(r.fefferman) && std::isfinite(*r.volume));
      o.csv = measures_csv({r});
    }
  } else if (a.surface == "linear-image") {
    if (a.matrix.size() != 4) throw DomainError("--matrix needs four entries");
    std::array<ExactComplex, 4> m;
    for (int k = 0; k < 4; ++k) m[k] = constant_arg(a.matrix[k]);
    if ((m[0] * m[3] - m[1] * m[2]).is_zero()) throw DomainError("--matrix is singular");
    const SpherePotential g = SpherePotential::linear_image(m);
    circular_result(CircularSurface::from_potential(g, "linear_image(" + g.describe() + ")"));
    o.contracts.add("linear_image_equality", rel_close(o.result["quotient"].get<double>(), 8 * kPi, 1e-6));
  } else if (a.surface == "heisenberg" || a.surface == "paraboloid" || a.surface == "sphere-cap" ||
             a.surface == "hyperboloid") {
    GraphSurface Z = a.surface == "heisenberg"    ? heisenberg_graph()
                     : a.surface == "paraboloid" ? paraboloid_graph()
                     : a.surface == "sphere-cap" ? sphere_cap_graph(a.theta0)
                                                 : hyperboloid_graph(a.radius);
    const MeasureReport r = measure_graph(Z, Z.base.grid(a.n));
    o.result = to_json(r);
    if (a.surface == "heisenberg") {
      o.contracts.add("heisenberg_volume", rel_close(r.fefferman, std::cbrt(4.0) * Z.base.volume(), 1e-10));
    } else if (a.surface == "sphere-cap") {
      const double oracle = std::cbrt(2.0) * 2 * kPi * (a.theta0 - std::sin(a.theta0) * std::cos(a.theta0));
      o.result["radial_oracle"] = oracle;
      o.contracts.add("cap_agreement", rel_close(r.fefferman, oracle, 1e-5));
    } else {
      o.contracts.add("finite", std::isfinite(r.fefferman));
    }
    o.csv = measures_csv({r});
  } else {
    throw DomainError("unknown --surface '" + a.surface + "'");
  }
  return o;
}

struct KappaArgs {
  std::string surface = "sphere";
  double radius = 1.0;
};

Output run_kappa(const KappaArgs& a) {
  Output o;
  o.config = {{"surface", a.surface}, {"radius", a.radius}};
  if (!(a.radius > 0)) throw DomainError("--radius must be positive");
  std::optional<double> expected;
  GraphSurface Z;
  const double k0 = 3.0 / std::cbrt(2.0) * std::pow(a.radius, -4.0 / 3.0);
  if (a.surface == "sphere") {
    Z = sphere_graph(a.radius);
    expected = k0;
  } else if (a.surface == "hyperboloid") {
    Z = hyperboloid_graph(a.radius);
    expected = -k0;
  } else if (a.surface == "heisenberg") {
    Z = heisenberg_graph();
    expected = 0.0;
  } else if (a.surface == "rigid-sqrt") {
    Z = rigid_sqrt_graph();
    expected = 0.0;
  } else if (a.surface == "paraboloid") {
    Z = paraboloid_graph();
  } else {
    throw DomainError("unknown --surface '" + a.surface + "'");
  }
  const auto c = Z.base.center();
  const double h = 0.2 * Z.base.scale();
  const std::array<std::array<double, 3>, 5> offsets{{{0, 0, 0}, {h, 0, 0}, {0, -h, 0}, {0, 0, h}, {-h, h / 2, -h / 2}}};
  json pts = json::array();
  double worst = 0.0;
  for (const auto& d : offsets) {
    const GraphPoint p{{c[0] + d[0], c[1] + d[1]}, c[2] + d[2]};
    const double k = kappa_graph(Z, p);
    pts.push_back({{"x", p.z.real()}, {"y", p.z.imag()}, {"u", p.u}, {"kappa", k}});
    if (expected) {
      const double dev = *expected == 0.0 ? std::abs(k) : std::abs(k / *expected - 1.0);
      worst = std::max(worst, dev);
    }
  }
  o.result = {{"surface", Z.name}, {"points", pts}, {"expected", expected ? json(*expected) : json(nullptr)}};
  if (expected) {
    o.result["max_deviation"] = worst;
    o.contracts.add("kappa_matches", worst <= (*expected == 0.0 ? 1e-6 : 1e-3));
  }
  return o;
}

struct SecondVarArgs {
  std::string poly;
  std::string mode;
  unsigned j = 2;
  unsigned k = 0;
  bool fit = false;
  unsigned n = 24;
};

Output run_sphere_secondvar(const SecondVarArgs& a) {
  Output o;
  o.config = {{"poly", a.poly}, {"mode", a.mode}, {"j", a.j}, {"k", a.k}, {"fit", a.fit}, {"n", a.n}};
  std::optional<ExampleKind> kind;
  SpherePolynomial g;
  if (!a.mode.empty()) {
    if (a.mode != "A" && a.mode != "B") throw DomainError("--mode must be A or B");
    kind = a.mode == "A" ? ExampleKind::A : ExampleKind::B;
    g = example_mode(*kind, a.j, a.k);
  } else {
    g = polynomial_arg(a.poly);
  }
  const PiMultiple exact = second_variation_Q(g);
  const PiMultiple expanded = second_variation_Q_expanded(g);
  o.result["polynomial"] = g.str();
  o.result["coefficient"] = to_json(exact);
  o.result["expanded"] = to_json(expanded);
  o.contracts.add("forms_agree", exact == expanded);
  if (kind) {
    const PiMultiple closed = closed_form_coeff(*kind, a.j, a.k);
    o.result["closed_form"] = to_json(closed);
    o.contracts.add("closed_form", exact == closed);
  }
  if (a.fit) {
    require_min("--n", a.n, 8);
    const auto fam = PerturbationFamily::sphere(SpherePotential::constant(0.0), g, make_sphere_grid(a.n, a.n, a.n));
    const EpsFit fit = eps_fit_oracle(fam, Functional::Q);
    const double rel = std::abs(fit.coeffs[2] / exact.value() - 1.0);
    o.result["fit"] = to_json(fit);
    o.result["fit_relative_error"] = rel;
    o.contracts.add("fit_within_1pct", rel <= 1e-2);
  }
  return o;
}

struct HeisArgs {
  double amplitude = 0.05;
  std::vector<double> center{0, 0, 0};
  std::vector<double> half_width{1, 1, 1};
  std::vector<double> tilt{0, 0, 0};
  unsigned n = 48;
};

Output run_heisenberg(const HeisArgs& a) {
  require_min("--n", a.n, 8);
  Output o;
  o.config = {{"amplitude", a.amplitude}, {"center", a.center}, {"half_width", a.half_width}, {"tilt", a.tilt}, {"n", a.n}};
  BumpField b;
  b.amplitude = a.amplitude;
  for (int i = 0; i < 3; ++i) {
    b.center[i] = a.center[i];
    b.half_width[i] = a.half_width[i];
    b.tilt[i] = a.tilt[i];
    if (!(b.half_width[i] > 0)) throw DomainError("--half-width entries must be positive");
  }
  const auto sup = b.support();
  const QuadratureGrid grid = make_base_box_grid(sup, a.n, a.n, a.n);
  const double paper = heis_second_variation(b, grid);
  const double corrected = heis_second_variation_corrected(b, grid);
  const auto fam = PerturbationFamily::graph(heisenberg_graph(GraphBase::box(sup)), b, grid);
  const EpsFit fit = eps_fit_oracle(fam, Functional::F);
  const double c2 = fit.coeffs[2];
  const CubeSimpReport cube = cube_simp_check(b, grid);
  o.result["second_variation"] = {{"paper_form", paper}, {"corrected_form", corrected}, {"fit", c2}};
  o.result["eps_fit"] = to_json(fit);
  o.result["cube"] = to_json(cube);
  o.result["semi_global_hypothesis"] = cube.semi_global_hypothesis();
  o.result["corrected_form_matches_fit"] = rel_close(corrected, c2, 1e-2);
  o.result["cube_identity_corrected"] = rel_close(cube.lhs, cube.rhs_corrected, 1e-6);
  o.contracts.add("second_variation_matches_fit", rel_close(paper, c2, 1e-2));
  o.contracts.add("cube_identity", cube.sides_agree(1e-6));
  if (cube.semi_global_hypothesis()) o.contracts.add("semi_global_bound", cube.fefferman <= cube.heisenberg);
  return o;
}

struct BallArgs {
  bool minimize = false;
  bool sweep = false;
  std::optional<double> R;
  std::optional<double> theta;
  unsigned n_R = 64;
  unsigned n_theta = 64;
  double theta_max = -1.0;
  unsigned sweep_n = 16;
};

Output run_ball_caps(const BallArgs& a) {
  Output o;
  o.config = {{"minimize", a.minimize}, {"sweep", a.sweep},           {"n_R", a.n_R},
              {"n_theta", a.n_theta},   {"theta_max", a.theta_max},   {"sweep_n", a.sweep_n}};
  if (a.sweep) {
    require_min("--sweep-n", a.sweep_n, 2);
    std::vector<double> Rs, ths;
    for (unsigned i = 1; i <= a.sweep_n; ++i) Rs.push_back(double(i) / a.sweep_n);
    const double hi = a.theta_max > 0 ? a.theta_max : kPi - 0.05;
    for (unsigned j = 1; j <= a.sweep_n; ++j) ths.push_back(hi * j / a.sweep_n);
    const auto pts = sweep_q(Rs, ths);
    json arr = json::array();
    for (const auto& p : pts) arr.push_back({{"R", p.R}, {"theta", p.theta}, {"q", p.q}});
    o.result["points"] = arr;
    o.csv = sweep_csv(pts);
    o.contracts.add("finite", std::all_of(pts.begin(), pts.end(), [](const ScanPoint& p) { return std::isfinite(p.q); }));
    return o;
  }
  if (a.R || a.theta) {
    if (!a.R || !a.theta) throw DomainError("--R and --theta go together");
    o.config["R"] = *a.R;
    o.config["theta"] = *a.theta;
    if (*a.R == 0.0) {
      const LimitResult lim = q_ball_pair_limit({EdgeKind::R_zero, *a.theta});
      o.result = {{"R", 0.0}, {"theta", *a.theta}, {"q", lim.value}, {"extrapolation_error", lim.error}};
      o.contracts.add("limit_settled", lim.error <= 1e-6);
      return o;
    }
    const double q = q_ball_pair({*a.R, *a.theta});
    const double q2 = q_ball_pair_alt({*a.R, *a.theta});
    o.result = {{"R", *a.R}, {"theta", *a.theta}, {"q", q}, {"q_alt", q2}};
    o.contracts.add("codings_agree", rel_close(q2, q, 1e-9));
    return o;
  }
  MinimizeOptions opt;
  opt.n_R = a.n_R;
  opt.n_theta = a.n_theta;
  opt.theta_max = a.theta_max;
  const MinimizeResult m = minimize_q(opt);
  o.result = to_json(m);
  const bool argmin = std::all_of(m.scan.begin(), m.scan.end(), [&](const ScanPoint& p) { return p.q >= m.q - 1e-9; });
  o.contracts.add("argmin_consistent", argmin);
  return o;
}

struct ShearArgs {
  std::string phi = "log";
  std::vector<double> eps{1e-2, 1e-3, 1e-4, 1e-5, 1e-6};
  double t = 0.5;
};

Output run_shear(const ShearArgs& a) {
  Output o;
  o.config = {{"phi", a.phi}, {"eps", a.eps}, {"t", a.t}};
  const double fs = std::cbrt(16.0) * kPi * kPi;
  std::vector<MeasureReport> reports;
  if (a.phi == "log" && a.eps.size() >= 3) {
    const ShearAsymptotics s = shear_asymptotics(a.eps);
    reports = s.reports;
    o.result["eps"] = s.eps;
    o.result["fits"] = {{"F_vs_log", to_json(s.F_vs_log)},
                        {"V_vs_log", to_json(s.V_vs_log)},
                        {"Q_vs_sqrt_log", to_json(s.Q_vs_sqrt_log)}};
    o.result["targets"] = {{"F", fs}, {"V", 4 * kPi}, {"Q", kPi * kPi}};
    o.result["implied_Q_slope"] = std::pow(s.F_vs_log.slope, 1.5) / s.V_vs_log.slope;
    o.contracts.add("F_slope", rel_close(s.F_vs_log.slope, fs, 0.05));
    o.contracts.add("V_slope", rel_close(s.V_vs_log.slope, 4 * kPi, 0.05));
    o.contracts.add("Q_slope", rel_close(s.Q_vs_sqrt_log.slope, kPi * kPi, 0.10));
  } else if (a.phi == "log") {
    if (a.eps.empty()) throw DomainError("--eps needs at least one value");
    for (double e : a.eps) {
      reports.push_back(shear_measures(ShearSurface::log_divergent(e), shear_disk_grid(e)));
      o.contracts.add("F_log_growth(" + std::to_string(e) + ")",
                      rel_close(reports.back().fefferman, fs * std::abs(std::log(e)), 0.15));
    }
  } else if (a.phi == "one" || a.phi == "w" || a.phi == "linear") {
    const ShearSurface s = a.phi == "one" ? ShearSurface::constant_one()
                           : a.phi == "w" ? ShearSurface::identity_w()
                                          : ShearSurface::linear(a.t);
    reports.push_back(shear_measures(s, shear_disk_grid()));
    if (a.phi == "one") o.contracts.add("ball_constants", rel_close(*reports[0].quotient, 8 * kPi, 1e-8));
    if (a.phi == "w") o.contracts.add("polar_integrals", rel_close(reports[0].fefferman, 0.6 * fs, 1e-4));
    if (a.phi == "linear") o.contracts.add("quotient_ge_4pi", *reports[0].quotient >= 4 * kPi);
  } else {
    throw DomainError("unknown --phi '" + a.phi + "'");
  }
  json arr = json::array();
  for (const auto& r : reports) arr.push_back(to_json(r));
  o.result["reports"] = arr;
  o.csv = measures_csv(reports);
  return o;
}

struct TubeArgs {
  std::string curve = "ellipse";
  double a = 2.0;
  double b = 1.0;
  double e = 0.1;
  unsigned k = 3;
  unsigned n = 512;
};

Output run_tube(const TubeArgs& a) {
  require_min("--n", a.n, 8);
  Output o;
  o.config = {{"curve", a.curve}, {"a", a.a}, {"b", a.b}, {"e", a.e}, {"k", a.k}, {"n", a.n}};
  const ConvexCurve c = a.curve == "ellipse"        ? ConvexCurve::ellipse(a.a, a.b)
                        : a.curve == "polar-wave"   ? ConvexCurve::polar_wave(a.e, a.k)
                        : a.curve == "superellipse" ? ConvexCurve::smoothed_superellipse()
                                                    : throw DomainError("unknown --curve '" + a.curve + "'");
  const TubeReport t = tube_measures(c, a.n);
  o.result = to_json(t);
  o.result["curve"] = c.name;
  const double bound = 8 * kPi * kPi;
  o.contracts.add("ratio_le_8pi2", t.ratio <= bound * (1 + 1e-6));
  if (a.curve == "ellipse") o.contracts.add("ellipse_equality", rel_close(t.ratio, bound, 1e-8));
  return o;
}

struct SobolevArgs {
  std::string poly;
  unsigned random = 0;
  unsigned degree = 4;
  unsigned n = 32;
};

std::vector<SpherePolynomial> sobolev_cases(const SobolevArgs& a, std::uint64_t seed) {
  std::vector<SpherePolynomial> out;
  if (!a.poly.empty()) out.push_back(parse_polynomial(a.poly));
  Corpus corpus(seed);
  for (unsigned i = 0; i < a.random; ++i) out.push_back(corpus.holomorphic(a.degree));
  if (out.empty()) throw DomainError("give --poly or --random");
  return out;
}

Output run_hl(const SobolevArgs& a, std::uint64_t seed) {
  require_min("--n", a.n, 8);
  Output o;
  o.config = {{"poly", a.poly}, {"random", a.random}, {"degree", a.degree}, {"n", a.n}};
  const QuadratureGrid grid = make_sphere_grid(a.n, a.n, a.n);
  json cases = json::array();
  bool all = true;
  double sup = 0.0;
  for (const auto& h : sobolev_cases(a, seed)) {
    const HLReport r = hl_check(h, grid);
    json j = to_json(r);
    j["polynomial"] = h.str();
    cases.push_back(j);
    all = all && r.holds;
    sup = std::max(sup, r.ratio);
  }
  o.result["cases"] = cases;
  o.result["max_ratio"] = sup;
  o.result["constant_ratio"] = 1.0 / (std::pow(2.0, 1.25) * std::sqrt(kPi));
  o.result["bound_ratio"] = 1.0 / (std::pow(2.0, 0.75) * std::sqrt(kPi));
  o.contracts.add("hl_bound", all);
  return o;
}

Output run_jl(const SobolevArgs& a, std::uint64_t seed) {
  Output o;
  o.config = {{"poly", a.poly}, {"random", a.random}, {"degree", a.degree}};
  json cases = json::array();
  bool all = true;
  for (const auto& g : sobolev_cases(a, seed)) {
    if (!g.is_holomorphic()) throw DomainError("jl needs holomorphic polynomials");
    const JLReport r = jl_check(g);
    json j = to_json(r);
    j["polynomial"] = g.str();
    cases.push_back(j);
    all = all && r.holds;
  }
  o.result["cases"] = cases;
  o.contracts.add("jl_bound", all);
  return o;
}

struct QStarArgs {
  std::string family = "shear";
  unsigned n = 16;
  unsigned n_r = 12;
};

Output run_qstar(const QStarArgs& a) {
  require_min("--n", a.n, 4);
  require_min("--n-r", a.n_r, 4);
  Output o;
  o.config = {{"family", a.family}, {"n", a.n}, {"n_r", a.n_r}};
  const MapFamily fam = a.family == "unitary"      ? MapFamily::unitary()
                        : a.family == "shear"      ? MapFamily::shear()
                        : a.family == "identity"   ? MapFamily::identity_only()
                        : a.family == "triangular" ? MapFamily::triangular()
                                                   : throw DomainError("unknown --family '" + a.family + "'");
  const QStarResult r =
      q_star_search(fam, make_sphere_grid(a.n, a.n, a.n), make_ball_grid(a.n_r, a.n, a.n, a.n));
  o.result = to_json(r);
  o.result["family"] = fam.name;
  o.contracts.add("between_4pi_and_8pi", r.q >= 4 * kPi && r.q <= 8 * kPi * (1 + 1e-9));
  o.contracts.add("simplex_ok", !r.collapsed);
  return o;
}

struct QuadArgs {
  unsigned n = 32;
  unsigned max_degree = 6;
};

Output run_validate_quadrature(const QuadArgs& a) {
  require_min("--n", a.n, 2);
  Output o;
  o.config = {{"n", a.n}, {"max_degree", a.max_degree}};
  const QuadratureGrid sphere = make_sphere_grid(a.n, a.n, a.n);
  const QuadratureGrid ball = make_ball_grid(std::max(8U, a.n / 2), a.n, a.n, a.n);
  auto quad = [](const QuadratureGrid& g, const SpherePolynomial& p) {
    const CompiledPolynomial c(p);
    return parallel_sum(g.size(), [&](std::size_t i) { return g.weights[i] * c(g.z(i), g.w(i)).real(); });
  };
  json rows = json::array();
  double worst = 0.0;
  for (unsigned s = 0; s <= a.max_degree; ++s) {
    for (unsigned k = 0; k <= s; ++k) {
      const SpherePolynomial p = SpherePolynomial::monomial({k, s - k, k, s - k});
      const double es = integrate_sphere(p).value(), eb = integrate_ball(p).value();
      const double qs = quad(sphere, p), qb = quad(ball, p);
      const double rs = std::abs(qs / es - 1), rb = std::abs(qb / eb - 1);
      worst = std::max({worst, rs, rb});
      rows.push_back({{"a", k}, {"b", s - k}, {"sphere", es}, {"sphere_rel_err", rs}, {"ball", eb}, {"ball_rel_err", rb}});
    }
  }
  double phase = 0.0;
  for (unsigned a1 = 0; a1 <= 2; ++a1)
    for (unsigned b1 = 0; b1 <= 2; ++b1)
      for (unsigned c1 = 0; c1 <= 2; ++c1)
        for (unsigned d1 = 0; d1 <= 2; ++d1) {
          if (a1 == c1 && b1 == d1) continue;
          const SpherePolynomial p = SpherePolynomial::monomial({a1, b1, c1, d1});
          const CompiledPolynomial c(p);
          const std::complex<double> v(
              parallel_sum(sphere.size(), [&](std::size_t i) { return sphere.weights[i] * c(sphere.z(i), sphere.w(i)).real(); }),
              parallel_sum(sphere.size(), [&](std::size_t i) { return sphere.weights[i] * c(sphere.z(i), sphere.w(i)).imag(); }));
          phase = std::max(phase, std::abs(v));
        }
  o.result["integrals"] = rows;
  o.result["max_rel_err"] = worst;
  o.result["max_phase_residual"] = phase;
  o.result["total_weight"] = sphere.total_weight();
  o.contracts.add("fourier_integrals", worst <= 1e-8);
  o.contracts.add("phase_orthogonality", phase <= 1e-10);
  o.contracts.add("total_weight", rel_close(sphere.total_weight(), 2 * kPi * kPi, 1e-10));
  return o;
}

bool is_contract_error(const std::exception& e) {
  return dynamic_cast<const NotPseudoconvexError*>(&e) || dynamic_cast<const ConvergenceError*>(&e);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fefferman measure lab for hypersurfaces in C^2", "fefflab"};
  app.require_subcommand(0, 1);
  std::string format = "json";
  std::string output;
  std::uint64_t seed = 20240601;
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output", output, "write the report here instead of stdout");
  app.add_option("--seed", seed, "seed for random corpora");

  std::function<Output()> job;
  std::string command;
  auto sub = [&](const char* name, const char* help) {
    CLI::App* s = app.add_subcommand(name, help);
    s->callback([&command, name] { command = name; });
    return s;
  };

  MeasureArgs ma;
  auto* m = sub("measure", "F, V and Q of a surface");
  m->add_option("--surface", ma.surface, "sphere|polynomial|linear-image|heisenberg|paraboloid|sphere-cap|hyperboloid")
      ->capture_default_str();
  m->add_option("--radius", ma.radius)->capture_default_str();
  m->add_option("--poly", ma.poly, "potential G on the sphere, e.g. 'z^2*wb^2+zb^2*w^2'");
  m->add_option("--scale", ma.scale, "multiplies --poly")->capture_default_str();
  m->add_flag("--circular", ma.circular, "treat --poly as a circular potential");
  m->add_option("--matrix", ma.matrix, "a,b,c,d of the linear image")->delimiter(',')->expected(4);
  m->add_option("--theta0", ma.theta0, "cap angle")->capture_default_str();
  m->add_option("--n", ma.n, "nodes per axis")->capture_default_str();

  KappaArgs ka;
  auto* k = sub("kappa", "curvature invariant at sample points of a graph patch");
  k->add_option("--surface", ka.surface, "sphere|hyperboloid|heisenberg|rigid-sqrt|paraboloid")->capture_default_str();
  k->add_option("--radius", ka.radius)->capture_default_str();

  SecondVarArgs sa;
  auto* sv = sub("sphere-secondvar", "exact second variation of Q about the sphere");
  sv->add_option("--poly", sa.poly, "real zero-mean direction");
  sv->add_option("--mode", sa.mode, "A or B example mode")->check(CLI::IsMember({"A", "B"}));
  sv->add_option("--j", sa.j)->capture_default_str();
  sv->add_option("--k", sa.k)->capture_default_str();
  sv->add_flag("--fit", sa.fit, "also fit the coefficient from quadrature");
  sv->add_option("--n", sa.n, "fit grid nodes per axis")->capture_default_str();

  HeisArgs ha;
  auto* he = sub("heisenberg", "second variation and cube identity for a bump on the Heisenberg group");
  he->add_option("--amplitude", ha.amplitude)->capture_default_str();
  he->add_option("--center", ha.center)->delimiter(',')->expected(3);
  he->add_option("--half-width", ha.half_width)->delimiter(',')->expected(3);
  he->add_option("--tilt", ha.tilt)->delimiter(',')->expected(3);
  he->add_option("--n", ha.n)->capture_default_str();

  BallArgs ba;
  auto* bc = sub("ball-caps", "isoperimetric quotient of ball pairs");
  bc->add_flag("--minimize", ba.minimize, "scan and refine the minimum (default action)");
  bc->add_flag("--sweep", ba.sweep, "tensor sweep, CSV friendly");
  bc->add_option("--R", ba.R);
  bc->add_option("--theta", ba.theta);
  bc->add_option("--n-R", ba.n_R)->capture_default_str();
  bc->add_option("--n-theta", ba.n_theta)->capture_default_str();
  bc->add_option("--theta-max", ba.theta_max, "restrict the scan to theta <= this");
  bc->add_option("--sweep-n", ba.sweep_n)->capture_default_str();

  ShearArgs sh;
  auto* shc = sub("shear", "shear images (z, w) -> (phi(w) z, w) of the ball");
  shc->add_option("--phi", sh.phi, "log|one|w|linear")->capture_default_str();
  shc->add_option("--eps", sh.eps)->delimiter(',');
  shc->add_option("--t", sh.t)->capture_default_str();

  TubeArgs ta;
  auto* tu = sub("tube", "tube over a convex curve");
  tu->add_option("--curve", ta.curve, "ellipse|polar-wave|superellipse")->capture_default_str();
  tu->add_option("--a", ta.a)->capture_default_str();
  tu->add_option("--b", ta.b)->capture_default_str();
  tu->add_option("--e", ta.e)->capture_default_str();
  tu->add_option("--k", ta.k)->capture_default_str();
  tu->add_option("--n", ta.n)->capture_default_str();

  SobolevArgs hla, jla;
  auto* hl = sub("hl", "L2(ball) against L4/3(sphere) norms of holomorphic polynomials");
  hl->add_option("--poly", hla.poly);
  hl->add_option("--random", hla.random, "number of seeded random polynomials");
  hl->add_option("--degree", hla.degree)->capture_default_str();
  hl->add_option("--n", hla.n)->capture_default_str();
  auto* jl = sub("jl", "exact L4 Sobolev check for holomorphic polynomials");
  jl->add_option("--poly", jla.poly);
  jl->add_option("--random", jla.random, "number of seeded random polynomials");
  jl->add_option("--degree", jla.degree)->capture_default_str();

  QStarArgs qa;
  auto* qs = sub("qstar", "upper bound for Q* of the ball over a map family");
  qs->add_option("--family", qa.family, "unitary|shear|identity|triangular")->capture_default_str();
  qs->add_option("--n", qa.n)->capture_default_str();
  qs->add_option("--n-r", qa.n_r)->capture_default_str();

  QuadArgs va;
  auto* vq = sub("validate-quadrature", "sphere and ball monomial integrals against closed forms");
  vq->add_option("--n", va.n)->capture_default_str();
  vq->add_option("--max-degree", va.max_degree)->capture_default_str();

  sub("schema", "print the report JSON schema");

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fefflab: " << e.what() << "\n";
    return kExitUsage;
  }

  if (command.empty()) {
    out << kSchemaId << "\n";
    return kExitOk;
  }
  if (command == "schema") {
    out << report_schema();
    return kExitOk;
  }

  auto emit = [&](const std::string& text) -> int {
    if (output.empty()) {
      out << text;
      return kExitOk;
    }
    std::ofstream f(output, std::ios::binary);
    if (!f) {
      err << "fefflab: cannot write " << output << "\n";
      return kExitUsage;
    }
    f << text;
    return kExitOk;
  };

  Output o;
  try {
    if (command == "measure") o = run_measure(ma);
    else if (command == "kappa") o = run_kappa(ka);
    else if (command == "sphere-secondvar") o = run_sphere_secondvar(sa);
    else if (command == "heisenberg") o = run_heisenberg(ha);
    else if (command == "ball-caps") o = run_ball_caps(ba);
    else if (command == "shear") o = run_shear(sh);
    else if (command == "tube") o = run_tube(ta);
    else if (command == "hl") o = run_hl(hla, seed);
    else if (command == "jl") o = run_jl(jla, seed);
    else if (command == "qstar") o = run_qstar(qa);
    else if (command == "validate-quadrature") o = run_validate_quadrature(va);
  } catch (const Error& e) {
    if (!is_contract_error(e)) {
      err << "fefflab " << command << ": " << e.what() << "\n";
      return kExitUsage;
    }
    json env = envelope(command, {{"seed", seed}}, nullptr, Contracts{});
    env["ok"] = false;
    env["error"] = e.what();
    err << "fefflab " << command << ": " << e.what() << "\n";
    const int rc = emit(dump(env));
    return rc == kExitOk ? kExitContract : rc;
  }

  json config = {{"seed", seed}, {"format", format}};
  for (auto& [key, value] : o.config.items()) config[key] = value;
  if (format == "csv" && !o.csv) {
    err << "fefflab " << command << ": no CSV form for this command\n";
    return kExitUsage;
  }
  const int rc = emit(format == "csv" ? *o.csv : dump(envelope(command, config, o.result, o.contracts)));
  if (rc != kExitOk) return rc;
  return o.contracts.ok() ? kExitOk : kExitContract;
}

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return dispatch(args, out, err);
}

}  // namespace fefflab
