#include "fefflab/sphere_algebra.hpp"

#include <cmath>
#include <sstream>

#include "fefflab/errors.hpp"

namespace fefflab {

SpherePolynomial::SpherePolynomial(const ExactComplex& constant) {
  if (!constant.is_zero()) terms_[Monomial{}] = constant;
}

SpherePolynomial SpherePolynomial::monomial(const Monomial& m, const ExactComplex& coeff) {
  SpherePolynomial p;
  p.add_term(m, coeff);
  return p;
}

unsigned SpherePolynomial::degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, m.degree());
  return d;
}

ExactComplex SpherePolynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? ExactComplex() : it->second;
}

void SpherePolynomial::add_term(const Monomial& m, const ExactComplex& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

SpherePolynomial SpherePolynomial::conj() const {
  SpherePolynomial out;
  for (const auto& [m, c] : terms_) out.terms_.emplace(m.conj(), c.conj());
  return out;
}

bool SpherePolynomial::is_holomorphic() const {
  for (const auto& [m, c] : terms_)
    if (!m.holomorphic()) return false;
  return true;
}

bool SpherePolynomial::is_circular() const {
  for (const auto& [m, c] : terms_)
    if (m.a + m.b != m.c + m.d) return false;
  return true;
}

bool SpherePolynomial::is_homogeneous(unsigned k) const {
  for (const auto& [m, c] : terms_)
    if (m.degree() != k) return false;
  return true;
}

SpherePolynomial SpherePolynomial::pow(unsigned n) const {
  SpherePolynomial result(1L), base = *this;
  while (n) {
    if (n & 1U) result = result * base;
    n >>= 1U;
    if (n) base = base * base;
  }
  return result;
}

std::complex<double> SpherePolynomial::evaluate(std::complex<double> z, std::complex<double> w) const {
  return CompiledPolynomial(*this)(z, w);
}

namespace {

std::string coeff_literal(const ExactComplex& c) {
  if (c.is_real()) return c.re.get_str();
  std::string s;
  if (sgn(c.re) != 0) s = c.re.get_str() + (sgn(c.im) > 0 ? "+" : "");
  return "(" + s + c.im.get_str() + "*i)";
}

}  // namespace

std::string SpherePolynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << coeff_literal(c);
    const std::pair<const char*, unsigned> vars[] = {{"z", m.a}, {"w", m.b}, {"zb", m.c}, {"wb", m.d}};
    for (auto [name, e] : vars) {
      if (e == 0) continue;
      out << "*" << name;
      if (e > 1) out << "^" << e;
    }
  }
  return out.str();
}

SpherePolynomial& SpherePolynomial::operator+=(const SpherePolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SpherePolynomial& SpherePolynomial::operator-=(const SpherePolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SpherePolynomial& SpherePolynomial::operator*=(const ExactComplex& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

SpherePolynomial operator*(const SpherePolynomial& a, const SpherePolynomial& b) {
  SpherePolynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  return out;
}

SpherePolynomial poly_arith(const SpherePolynomial& p, const SpherePolynomial& q, PolyOp op, const ExactComplex& s) {
  switch (op) {
    case PolyOp::add:
      return p + q;
    case PolyOp::mul:
      return p * q;
    case PolyOp::scale:
      return p * s;
    case PolyOp::conj:
      return p.conj();
  }
  return {};
}

SpherePolynomial apply_field(SphereField field, const SpherePolynomial& p) {
  SpherePolynomial out;
  for (const auto& [m, c] : p.terms()) {
    const long a = m.a, b = m.b, cc = m.c, d = m.d;
    switch (field) {
      case SphereField::L:
        if (a) out.add_term({m.a - 1, m.b, m.c, m.d + 1}, c * ExactComplex(a));
        if (b) out.add_term({m.a, m.b - 1, m.c + 1, m.d}, c * ExactComplex(-b));
        break;
      case SphereField::Lbar:
        if (cc) out.add_term({m.a, m.b + 1, m.c - 1, m.d}, c * ExactComplex(cc));
        if (d) out.add_term({m.a + 1, m.b, m.c, m.d - 1}, c * ExactComplex(-d));
        break;
      case SphereField::T:
        out.add_term(m, c * ExactComplex(Rational(0), Rational(a + b - cc - d)));
        break;
      case SphereField::S:
        out.add_term(m, c * ExactComplex(a + b + cc + d));
        break;
    }
  }
  return out;
}

SpherePolynomial euler_holomorphic(const SpherePolynomial& p) {
  SpherePolynomial out;
  for (const auto& [m, c] : p.terms()) out.add_term(m, c * ExactComplex(long(m.a + m.b)));
  return out;
}

PiMultiple integrate_sphere(const SpherePolynomial& p) {
  ExactComplex total;
  for (const auto& [m, c] : p.terms()) {
    if (m.a != m.c || m.b != m.d) continue;
    total += c * ExactComplex(Rational(2) * factorial(m.a) * factorial(m.b) / factorial(m.a + m.b + 1));
  }
  return {total, 2};
}

PiMultiple integrate_ball(const SpherePolynomial& p) {
  ExactComplex total;
  for (const auto& [m, c] : p.terms()) {
    if (m.a != m.c || m.b != m.d) continue;
    total += c * ExactComplex(factorial(m.a) * factorial(m.b) / factorial(m.a + m.b + 2));
  }
  return {total, 2};
}

namespace {

SpherePolynomial abs2(const SpherePolynomial& p) { return p * p.conj(); }

SpherePolynomial LLbar(const SpherePolynomial& g) {
  return apply_field(SphereField::L, apply_field(SphereField::Lbar, g));
}

SpherePolynomial sym_laplacian(const SpherePolynomial& g) {
  SpherePolynomial s = LLbar(g) + apply_field(SphereField::Lbar, apply_field(SphereField::L, g));
  return s * ExactComplex(Rational(1, 2));
}

void require_real_zero_mean(const SpherePolynomial& g) {
  if (!g.is_real()) throw PreconditionError("perturbation must be real-valued");
  if (!integrate_sphere(g).coeff.is_zero()) throw PreconditionError("perturbation must have zero sphere mean");
}

PiMultiple over_3pi(const PiMultiple& integral) {
  return {integral.coeff / Rational(3), integral.pi_power - 1};
}

}  // namespace

PiMultiple second_variation_Q(const SpherePolynomial& g) {
  require_real_zero_mean(g);
  const SpherePolynomial tg = apply_field(SphereField::T, g);
  const SpherePolynomial k = LLbar(g) + g * ExactComplex(2);
  return over_3pi(integrate_sphere(abs2(tg) * ExactComplex(5) - abs2(k) * ExactComplex(2)));
}

PiMultiple second_variation_Q_expanded(const SpherePolynomial& g) {
  require_real_zero_mean(g);
  const SpherePolynomial tg = apply_field(SphereField::T, g);
  const SpherePolynomial lg = apply_field(SphereField::L, g);
  const SpherePolynomial integrand = abs2(tg) * ExactComplex(5) - abs2(LLbar(g)) * ExactComplex(2) +
                                     abs2(lg) * ExactComplex(8) - g * g * ExactComplex(8);
  return over_3pi(integrate_sphere(integrand));
}

SphereExpansionIntegrals sphere_expansion_integrals(const SpherePolynomial& g) {
  const SpherePolynomial tg = apply_field(SphereField::T, g);
  const SpherePolynomial lg = apply_field(SphereField::L, g);
  SphereExpansionIntegrals out;
  out.first_F = integrate_sphere(g);
  out.second_F = integrate_sphere(abs2(tg) * ExactComplex(5) - abs2(LLbar(g)) * ExactComplex(2) +
                                  abs2(lg) * ExactComplex(8) + g * g * ExactComplex(16));
  out.first_V = integrate_sphere(g);
  out.second_V = integrate_sphere(g * g);
  return out;
}

SpherePolynomial example_mode(ExampleKind kind, unsigned j, unsigned k) {
  const Monomial m = kind == ExampleKind::A ? Monomial{j, k, 0, 0} : Monomial{j, 0, 0, k};
  return SpherePolynomial::monomial(m) + SpherePolynomial::monomial(m.conj());
}

PiMultiple closed_form_coeff(ExampleKind kind, unsigned j, unsigned k) {
  const Rational base = factorial(j) * factorial(k) / factorial(j + k + 1);
  const long J = j, K = k;
  if (kind == ExampleKind::A) {
    if (j == 0 && k == 0) throw DomainError("kind A requires (j,k) != (0,0)");
    return {ExactComplex(Rational(16, 3) * base * Rational((J + K + 2) * (J + K - 1))), 1};
  }
  if (j < 1 || k < 1) throw DomainError("kind B requires j,k >= 1");
  return {ExactComplex(Rational(-8, 3) * base * Rational((J + 2) * (J - 1) * (K + 2) * (K - 1))), 1};
}

std::array<PiMultiple, 4> parts_identities_check(const SpherePolynomial& g) {
  if (!g.is_real()) throw PreconditionError("parts identities need a real-valued polynomial");
  const SpherePolynomial tg = apply_field(SphereField::T, g);
  const SpherePolynomial lg = apply_field(SphereField::L, g);
  const SpherePolynomial lbg = apply_field(SphereField::Lbar, g);
  const SpherePolynomial ltg = apply_field(SphereField::L, tg);
  const SpherePolynomial llb = LLbar(g);
  const SpherePolynomial delta = sym_laplacian(g);
  const ExactComplex t2 = integrate_sphere(abs2(tg)).coeff;

  std::array<PiMultiple, 4> r;
  r[0] = integrate_sphere(delta);
  r[1] = {ExactComplex(Rational(2) * integrate_sphere(lbg * ltg).coeff.im) - t2, 2};
  r[2] = {ExactComplex(Rational(2) * integrate_sphere(llb * llb).coeff.re) -
              (integrate_sphere(abs2(llb)).coeff * ExactComplex(2) - t2),
          2};
  r[3] = {integrate_sphere(g * delta).coeff + integrate_sphere(abs2(lg)).coeff, 2};
  return r;
}

SpherePolynomial solve_X(const SpherePolynomial& h) {
  if (!h.is_holomorphic()) throw DomainError("solve_X requires a holomorphic polynomial");
  SpherePolynomial g;
  for (const auto& [m, c] : h.terms()) g.add_term(m, c / Rational(m.a + m.b + 2));
  return g;
}

double JLReport::lhs() const { return lhs_coeff * M_PI * M_PI; }
double JLReport::rhs() const { return rhs_coeff.get_d() * M_PI * M_PI; }

JLReport jl_check(const SpherePolynomial& g) {
  if (!g.is_holomorphic()) throw DomainError("jl_check requires a holomorphic polynomial");
  const SpherePolynomial g2 = abs2(g);
  JLReport r;
  r.lhs_radicand = Rational(2) * integrate_sphere(g2 * g2).coeff.re;
  r.rhs_coeff = integrate_sphere(g2 + abs2(apply_field(SphereField::L, g))).coeff.re;
  r.lhs_coeff = std::sqrt(r.lhs_radicand.get_d());
  const Rational rhs2 = r.rhs_coeff * r.rhs_coeff;
  r.holds = sgn(r.rhs_coeff) >= 0 && r.lhs_radicand <= rhs2;
  r.equality = r.lhs_radicand == rhs2;
  return r;
}

SpherePolynomial substitute_linear(const SpherePolynomial& p, const std::array<ExactComplex, 4>& m) {
  const SpherePolynomial zi = SpherePolynomial::z() * m[0] + SpherePolynomial::w() * m[1];
  const SpherePolynomial wi = SpherePolynomial::z() * m[2] + SpherePolynomial::w() * m[3];
  const SpherePolynomial images[4] = {zi, wi, zi.conj(), wi.conj()};
  std::map<std::pair<int, unsigned>, SpherePolynomial> cache;
  auto power = [&](int var, unsigned e) -> const SpherePolynomial& {
    auto key = std::make_pair(var, e);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, images[var].pow(e)).first;
    return it->second;
  };
  SpherePolynomial out;
  for (const auto& [mono, c] : p.terms()) {
    SpherePolynomial t(c);
    const unsigned e[4] = {mono.a, mono.b, mono.c, mono.d};
    for (int v = 0; v < 4; ++v)
      if (e[v]) t = t * power(v, e[v]);
    out += t;
  }
  return out;
}

std::array<ExactComplex, 4> cayley_unitary(const Rational& a, const Rational& b, const Rational& c,
                                           const Rational& d) {
  const ExactComplex A[4] = {ExactComplex(0, a), ExactComplex(b, c), ExactComplex(-b, c), ExactComplex(0, d)};
  const ExactComplex one(1);
  const ExactComplex P[4] = {one - A[0], -A[1], -A[2], one - A[3]};
  const ExactComplex Q[4] = {one + A[0], A[1], A[2], one + A[3]};
  const ExactComplex det = Q[0] * Q[3] - Q[1] * Q[2];
  const ExactComplex inv = det.inverse();
  const ExactComplex Qi[4] = {Q[3] * inv, -Q[1] * inv, -Q[2] * inv, Q[0] * inv};
  return {P[0] * Qi[0] + P[1] * Qi[2], P[0] * Qi[1] + P[1] * Qi[3], P[2] * Qi[0] + P[3] * Qi[2],
          P[2] * Qi[1] + P[3] * Qi[3]};
}

CompiledPolynomial::CompiledPolynomial(const SpherePolynomial& p) {
  for (const auto& [m, c] : p.terms()) {
    terms_.push_back({m, c.to_complex()});
    max_exp_ = std::max({max_exp_, m.a, m.b, m.c, m.d});
  }
}

std::complex<double> CompiledPolynomial::operator()(std::complex<double> z, std::complex<double> w) const {
  if (terms_.empty()) return 0.0;
  constexpr unsigned kStack = 16;
  std::complex<double> stack[4][kStack];
  std::vector<std::complex<double>> heap;
  std::complex<double>* pw[4];
  const unsigned n = max_exp_ + 1;
  if (n <= kStack) {
    for (int v = 0; v < 4; ++v) pw[v] = stack[v];
  } else {
    heap.resize(4 * n);
    for (int v = 0; v < 4; ++v) pw[v] = heap.data() + v * n;
  }
  const std::complex<double> base[4] = {z, w, std::conj(z), std::conj(w)};
  for (int v = 0; v < 4; ++v) {
    pw[v][0] = 1.0;
    for (unsigned e = 1; e < n; ++e) pw[v][e] = pw[v][e - 1] * base[v];
  }
  std::complex<double> s = 0.0;
  for (const auto& t : terms_) s += t.coeff * pw[0][t.m.a] * pw[1][t.m.b] * pw[2][t.m.c] * pw[3][t.m.d];
  return s;
}

}  // namespace fefflab
