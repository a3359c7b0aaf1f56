#include <doctest.h>

#include <cmath>
#include <map>
#include <numbers>
#include <tuple>

#include "fefflab/errors.hpp"
#include "fefflab/polynomial_literal.hpp"
#include "fefflab/sphere_algebra.hpp"
#include "fefflab/surfaces.hpp"
#include "fefflab/variation.hpp"

using namespace fefflab;
using D2 = Dual2<2>;
using D3 = Dual2<3>;

namespace {

constexpr double pi = std::numbers::pi;
const double k_sphere = 3 / std::cbrt(2.0);

bool rel(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

// Polynomials in (z, z̄, u) with exact integer coefficients kept in complex<double>.
struct HPoly {
  using Key = std::tuple<int, int, int>;
  std::map<Key, std::complex<double>> c;

  HPoly& add(Key k, std::complex<double> v) {
    if ((c[k] += v) == 0.0) c.erase(k);
    return *this;
  }
  HPoly operator+(const HPoly& o) const {
    HPoly r = *this;
    for (const auto& [k, v] : o.c) r.add(k, v);
    return r;
  }
  HPoly operator*(std::complex<double> s) const {
    HPoly r;
    for (const auto& [k, v] : c) r.add(k, v * s);
    return r;
  }
  HPoly operator-(const HPoly& o) const { return *this + o * -1.0; }
  bool operator==(const HPoly& o) const { return c == o.c; }

  HPoly dz() const {
    HPoly r;
    for (const auto& [k, v] : c)
      if (auto [a, b, e] = k; a > 0) r.add({a - 1, b, e}, v * double(a));
    return r;
  }
  HPoly dzb() const {
    HPoly r;
    for (const auto& [k, v] : c)
      if (auto [a, b, e] = k; b > 0) r.add({a, b - 1, e}, v * double(b));
    return r;
  }
  HPoly du() const {
    HPoly r;
    for (const auto& [k, v] : c)
      if (auto [a, b, e] = k; e > 0) r.add({a, b, e - 1}, v * double(e));
    return r;
  }
  HPoly times(int da, int db) const {
    HPoly r;
    for (const auto& [k, v] : c) r.add({std::get<0>(k) + da, std::get<1>(k) + db, std::get<2>(k)}, v);
    return r;
  }
  std::complex<double> operator()(std::complex<double> z, double u) const {
    std::complex<double> s = 0;
    for (const auto& [k, v] : c) {
      auto [a, b, e] = k;
      s += v * std::pow(z, a) * std::pow(std::conj(z), b) * std::pow(u, e);
    }
    return s;
  }
};

const std::complex<double> I(0, 1);
HPoly L(const HPoly& f) { return f.dz() + f.du().times(0, 1) * I; }
HPoly Lb(const HPoly& f) { return f.dzb() - f.du().times(1, 0) * I; }
HPoly T(const HPoly& f) { return f.du(); }

BumpField unit_bump(double amp = 0.05) {
  BumpField b;
  b.amplitude = amp;
  return b;
}

EpsFit graph_fit(const GraphSurface& base, const BumpField& b, unsigned n, Functional f = Functional::F) {
  const auto sup = b.support();
  const GraphSurface Z{base.name, base.F, GraphBase::box(sup)};
  return eps_fit_oracle(PerturbationFamily::graph(Z, b, make_base_box_grid(sup, n, n, n)), f);
}

}  // namespace

TEST_CASE("kappa on spheres, hyperboloids and the Heisenberg group") {
  const GraphSurface S = sphere_graph(1.0), H = hyperboloid_graph(1.0), N = heisenberg_graph();
  const auto cs = S.base.center(), ch = H.base.center();
  std::vector<double> ks;
  for (double d : {-0.2, 0.0, 0.15, 0.3}) {
    ks.push_back(kappa_graph(S, {{cs[0] + d, cs[1] - d / 2}, cs[2] + d / 3}));
    CHECK(kappa_graph(H, {{ch[0] + d / 2, ch[1] + d}, ch[2] - d}) == doctest::Approx(-k_sphere).epsilon(1e-3));
    CHECK(std::abs(kappa_graph(N, {{d, 0.5 * d}, -d})) < 1e-6);
  }
  double mean = 0, var = 0;
  for (double k : ks) mean += k / ks.size();
  for (double k : ks) var += (k - mean) * (k - mean) / ks.size();
  CHECK(mean == doctest::Approx(k_sphere).epsilon(1e-3));
  CHECK(std::sqrt(var) <= 1e-3 * mean);
  // κ scales like R^{-4/3}
  const GraphSurface S2 = sphere_graph(2.0);
  const auto c2 = S2.base.center();
  CHECK(kappa_graph(S2, {{c2[0], c2[1]}, c2[2]}) == doctest::Approx(k_sphere * std::pow(2.0, -4.0 / 3.0)).epsilon(1e-3));
  CHECK(kappa_graph(S, {{cs[0], cs[1]}, cs[2]}) == doctest::Approx(0.375 * L1_graph(S, {{cs[0], cs[1]}, cs[2]})).epsilon(1e-14));
}

TEST_CASE("rigid first-variation operator") {
  CHECK(std::abs(L1_rigid(planar_abs2(), {0.3, -0.4})) < 1e-8);
  CHECK(L1_rigid(planar_abs4(), {1, 0}) == doctest::Approx(-std::pow(4.0, -2.0 / 3.0) * 4.0 / 9.0).epsilon(1e-6));
  // (4|z|²)^{−2/3} has Laplacian (1/4)·(4)^{−2/3}·(4/9)·4|z|^{−10/3}; at |z| = 2 this scales by 2^{−10/3}
  CHECK(L1_rigid(planar_abs4(), {0, 2}) == doctest::Approx(-std::pow(4.0, -2.0 / 3.0) * 4.0 / 9.0 * std::pow(2.0, -10.0 / 3.0)).epsilon(1e-6));
  for (std::complex<double> z : {std::complex<double>(1, 0), std::complex<double>(1.1, 0.2), std::complex<double>(0.9, -0.3)})
    CHECK(std::abs(L1_rigid(planar_rigid_sqrt(), z)) < 1e-6);
  const PlanarField concave([](const std::array<D2, 2>& p) { return -(p[0] * p[0] + p[1] * p[1]); });
  CHECK_THROWS_AS(L1_rigid(concave, {0.5, 0.5}), NotPseudoconvexError);
}

TEST_CASE("Heisenberg vector fields satisfy their commutation relations") {
  HPoly a, b, c;
  a.add({2, 1, 0}, 3).add({0, 0, 2}, {1, -2}).add({1, 1, 1}, 5);
  b.add({3, 0, 1}, {0, 1}).add({0, 2, 3}, -4).add({1, 0, 0}, 1);
  c.add({2, 2, 2}, 1).add({1, 3, 1}, {2, 7}).add({0, 0, 1}, -1);
  for (const HPoly& f : {a, b, c}) {
    CHECK(L(Lb(f)) - Lb(L(f)) == T(f) * (-2.0 * I));
    CHECK(L(T(f)) == T(L(f)));
    CHECK(Lb(T(f)) == T(Lb(f)));
  }
}

TEST_CASE("jet-level LL̄ agrees with the symbolic fields") {
  HPoly f;
  f.add({2, 1, 0}, 1).add({1, 2, 0}, 1).add({1, 1, 2}, 3).add({0, 0, 3}, 2).add({3, 0, 1}, {0, 1}).add({0, 3, 1}, {0, -1});
  const GraphField F([](const std::array<D3, 3>& p) {
    const D3 &x = p[0], &y = p[1], &u = p[2];
    const D3 r2 = x * x + y * y;
    // 2x|z|² + 3|z|²u² + 2u³ + i(z³ − z̄³)u, the last being −2 Im(z³) u
    return 2.0 * x * r2 + 3.0 * r2 * u * u + 2.0 * u * u * u - 2.0 * (3.0 * x * x * y - y * y * y) * u;
  });
  const HPoly llb = L(Lb(f));
  for (const auto& [z, u] : {std::pair{std::complex<double>(0.3, -0.2), 0.4}, std::pair{std::complex<double>(-1.1, 0.5), -0.7}}) {
    CHECK(std::abs(f(z, u).imag()) < 1e-12);
    const std::complex<double> got = heis_LLbar(jet_of(F, {z, u}), z);
    CHECK(std::abs(got - llb(z, u)) < 1e-11);
  }
}

TEST_CASE("Heisenberg second-variation forms") {
  const QuadratureGrid g = make_base_box_grid(unit_bump().support(), 24, 24, 24);
  CHECK(heis_second_variation(unit_bump(0), g) == 0.0);
  CHECK(heis_second_variation_corrected(unit_bump(0), g) == 0.0);
  BumpField off;
  off.center = {0.3, -0.2, 0.5};
  off.half_width = {0.5, 0.7, 0.4};
  off.tilt = {0.4, 0.1, -0.6};
  for (const BumpField& b : {unit_bump(1), off, off.scaled(-3)}) {
    const QuadratureGrid gb = make_base_box_grid(b.support(), 24, 24, 24);
    CHECK(heis_second_variation(b, gb) < 0);
  }
  // both forms are quadratic in the bump
  CHECK(heis_second_variation(off.scaled(2), make_base_box_grid(off.support(), 24, 24, 24)) ==
        doctest::Approx(4 * heis_second_variation(off, make_base_box_grid(off.support(), 24, 24, 24))).epsilon(1e-12));
}

TEST_CASE("expanded second variation matches the fitted ε² coefficient") {
  for (BumpField b : {unit_bump(), BumpField{0.05, {0.2, -0.1, 0.1}, {0.8, 0.9, 0.7}, {0.3, -0.2, 0.4}}}) {
    const QuadratureGrid g = make_base_box_grid(b.support(), 48, 48, 48);
    const EpsFit fit = graph_fit(heisenberg_graph(), b, 48);
    CHECK(!fit.flagged);
    CHECK(rel(heis_second_variation_corrected(b, g), fit.coeffs[2], 1e-2));
    // stationary: the ε¹ term stays below the fit's ε² scale
    CHECK(std::abs(fit.coeffs[1]) < 1e-3 * std::abs(fit.coeffs[2]));
  }
}

TEST_CASE("the surface v = sqrt(z^-2 + zbar^-2) is stationary") {
  BumpField b;
  b.amplitude = 0.01;
  b.center = {1.0, 0.0, 0.0};
  b.half_width = {0.15, 0.15, 0.15};
  b.tilt = {0.2, -0.3, 0.1};
  const EpsFit coarse = graph_fit(rigid_sqrt_graph(), b, 24), fit = graph_fit(rigid_sqrt_graph(), b, 32);
  CHECK(std::abs(fit.coeffs[1]) < 1e-3 * std::abs(fit.coeffs[2]));
  CHECK(std::abs(fit.coeffs[1]) < std::abs(coarse.coeffs[1]));
  // the paraboloid is not stationary under the same kind of bump
  BumpField bp = b;
  bp.center = {0.2, 0.1, 0.3};
  CHECK(std::abs(graph_fit(paraboloid_graph(), bp, 24).coeffs[1]) > 1e-6);
}

TEST_CASE("ε-fits on sphere families") {
  const QuadratureGrid grid = make_sphere_grid(24, 24, 24);
  const SpherePotential round = SpherePotential::constant(0);
  const auto fam = PerturbationFamily::sphere(round, parse_polynomial("z^2 + zb^2"), grid);
  const FamilyValues zero = fam.evaluate(0);
  CHECK(zero.fefferman == doctest::Approx(std::cbrt(16.0) * pi * pi).epsilon(1e-12));

  const EpsFit q = eps_fit_oracle(fam, Functional::Q);
  CHECK(rel(q.coeffs[2], 64 * pi / 9, 1e-2));
  CHECK(std::abs(q.coeffs[1]) < 1e-8);

  const EpsFit f = eps_fit_oracle(fam, Functional::F);
  CHECK(std::abs(f.coeffs[1]) < 1e-8);
  const SphereExpansionIntegrals ex = sphere_expansion_integrals(parse_polynomial("z^2 + zb^2"));
  CHECK(rel(f.coeffs[2], std::pow(2.0, -2.0 / 3.0) / 9 * ex.second_F.value(), 1e-2));

  // ½∫G̊²η with ∫G̊²η = 2∫|z|⁴η = 4π²/3
  const EpsFit v = eps_fit_oracle(fam, Functional::V);
  CHECK(rel(v.coeffs[2], 2 * pi * pi / 3, 1e-6));
  CHECK(rel(v.coeffs[2], 0.5 * ex.second_V.value(), 1e-6));
}

TEST_CASE("ε-fit of a constant family and invalid ε-sets") {
  const QuadratureGrid grid = make_sphere_grid(8, 8, 8);
  const auto fam = PerturbationFamily::sphere(SpherePotential::constant(0.3), SpherePolynomial{}, grid);
  const EpsFit fit = eps_fit_oracle(fam, Functional::F);
  for (std::size_t k = 1; k < fit.coeffs.size(); ++k) CHECK(std::abs(fit.coeffs[k]) < 1e-10);
  CHECK(fit.condition > 1);
  CHECK_THROWS_AS(eps_fit_oracle(fam, Functional::F, {0.01, 0.02, -0.01}), PreconditionError);
  CHECK_THROWS_AS(eps_fit_oracle(fam, Functional::F, {-0.01, 0.01}, 4), PreconditionError);
  CHECK_THROWS_AS(eps_fit_oracle(fam, Functional::F, {-3e-5, -2e-5, -1e-5, 1e-5, 2e-5, 3e-5}, 4), ConvergenceError);
}

TEST_CASE("first-variation ratio equals 2^{11/3}κ/9 on the sphere") {
  const QuadratureGrid grid = make_sphere_grid(16, 16, 16);
  const auto fam = PerturbationFamily::sphere(SpherePotential::constant(0), parse_polynomial("1 + z^2 + zb^2"), grid);
  const double f1 = eps_fit_oracle(fam, Functional::F).coeffs[1];
  const double v1 = eps_fit_oracle(fam, Functional::V).coeffs[1];
  CHECK(rel(f1 / v1, std::pow(2.0, 11.0 / 3.0) / 9 * k_sphere, 1e-2));
  CHECK(rel(f1 / v1, std::pow(2.0, 10.0 / 3.0) / 3, 1e-5));
}

TEST_CASE("cube identity") {
  const QuadratureGrid g = make_base_box_grid(unit_bump().support(), 16, 16, 16);
  const CubeSimpReport flat = cube_simp_check(unit_bump(0), g);
  CHECK(flat.lhs == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(flat.rhs == doctest::Approx(8.0).epsilon(1e-13));
  CHECK(flat.fefferman == doctest::Approx(8 * std::cbrt(4.0)).epsilon(1e-13));
  CHECK(flat.sides_agree());

  const BumpField b{0.05, {0.2, -0.1, 0.1}, {0.8, 0.9, 0.7}, {0.3, -0.2, 0.4}};
  const CubeSimpReport r = cube_simp_check(b, make_base_box_grid(b.support(), 48, 48, 48));
  CHECK(rel(r.lhs, r.rhs_corrected, 1e-6));
  CHECK(r.max_Fzzbar > 0);
}
