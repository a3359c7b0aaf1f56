#include "fefflab/potential.hpp"

#include <cmath>
#include <memory>
#include <sstream>

#include "fefflab/errors.hpp"

namespace fefflab {

namespace {

struct DerivTable {
  CompiledPolynomial v, L, T, LLb, LbL, LT, TT;

  explicit DerivTable(const SpherePolynomial& p) {
    const SpherePolynomial lp = apply_field(SphereField::L, p);
    const SpherePolynomial tp = apply_field(SphereField::T, p);
    v = CompiledPolynomial(p);
    L = CompiledPolynomial(lp);
    T = CompiledPolynomial(tp);
    LLb = CompiledPolynomial(apply_field(SphereField::L, apply_field(SphereField::Lbar, p)));
    LbL = CompiledPolynomial(apply_field(SphereField::Lbar, lp));
    LT = CompiledPolynomial(apply_field(SphereField::L, tp));
    TT = CompiledPolynomial(apply_field(SphereField::T, tp));
  }

  TangentialJet eval(std::complex<double> z, std::complex<double> w) const {
    TangentialJet j;
    j.g = v(z, w).real();
    j.Lg = L(z, w);
    j.Tg = T(z, w).real();
    j.LLbar = LLb(z, w);
    j.LbarL = LbL(z, w);
    j.LT = LT(z, w);
    j.TT = TT(z, w).real();
    return j;
  }
};

void accumulate(TangentialJet& acc, const TangentialJet& j, double s) {
  acc.g += s * j.g;
  acc.Lg += s * j.Lg;
  acc.Tg += s * j.Tg;
  acc.LLbar += s * j.LLbar;
  acc.LbarL += s * j.LbarL;
  acc.LT += s * j.LT;
  acc.TT += s * j.TT;
}

/// Tangential jet of log P from the jet of P.
TangentialJet log_jet(const TangentialJet& p) {
  if (!(p.g > 0)) throw DomainError("logarithmic potential term is not positive on the sphere");
  const double q = 1.0 / p.g;
  const std::complex<double> lq = p.Lg * q;
  const double tq = p.Tg * q;
  TangentialJet j;
  j.g = std::log(p.g);
  j.Lg = lq;
  j.Tg = tq;
  j.LLbar = p.LLbar * q - lq * std::conj(lq);
  j.LbarL = p.LbarL * q - std::conj(lq) * lq;
  j.LT = p.LT * q - tq * lq;
  j.TT = p.TT * q - tq * tq;
  return j;
}

}  // namespace

SpherePotential SpherePotential::constant(double c) {
  SpherePotential g;
  g.constant_ = c;
  return g;
}

SpherePotential SpherePotential::polynomial(const SpherePolynomial& p, double scale) {
  if (!p.is_real()) throw PreconditionError("potential polynomial must be real-valued");
  SpherePotential g;
  g.poly_ = p;
  g.scale_ = scale;
  return g;
}

SpherePotential SpherePotential::linear_image(const std::array<ExactComplex, 4>& m) {
  const SpherePolynomial a = SpherePolynomial::z() * m[0] + SpherePolynomial::w() * m[1];
  const SpherePolynomial b = SpherePolynomial::z() * m[2] + SpherePolynomial::w() * m[3];
  if ((m[0] * m[3] - m[1] * m[2]).is_zero()) throw DomainError("linear map is singular");
  SpherePotential g;
  g.add_log(a * a.conj() + b * b.conj());
  return g;
}

SpherePotential& SpherePotential::add_constant(double c) {
  constant_ += c;
  return *this;
}

SpherePotential& SpherePotential::add_log(const SpherePolynomial& p, double coeff) {
  if (!p.is_real()) throw PreconditionError("logarithmic term must be real-valued");
  logs_.push_back({p, coeff});
  return *this;
}

SpherePotential SpherePotential::with_scale(double s) const {
  SpherePotential g = *this;
  g.scale_ = s;
  return g;
}

SpherePotential SpherePotential::precompose(const std::array<ExactComplex, 4>& m) const {
  SpherePotential g = *this;
  g.poly_ = substitute_linear(poly_, m);
  for (auto& t : g.logs_) t.p = substitute_linear(t.p, m);
  return g;
}

bool SpherePotential::is_circular() const {
  if (scale_ != 0.0 && !poly_.is_circular()) return false;
  for (const auto& t : logs_)
    if (!t.p.is_circular()) return false;
  return true;
}

TangentialJet SpherePotential::jet(std::complex<double> z, std::complex<double> w) const { return source()(z, w); }

JetSource SpherePotential::source() const {
  auto poly = std::make_shared<const DerivTable>(poly_);
  std::vector<std::pair<std::shared_ptr<const DerivTable>, double>> logs;
  for (const auto& t : logs_) logs.emplace_back(std::make_shared<const DerivTable>(t.p), t.coeff);
  const double c = constant_, s = scale_;
  return [poly, logs, c, s](std::complex<double> z, std::complex<double> w) {
    TangentialJet j;
    j.g = c;
    if (s != 0.0) accumulate(j, poly->eval(z, w), s);
    for (const auto& [table, coeff] : logs) accumulate(j, log_jet(table->eval(z, w)), coeff);
    return j;
  };
}

std::string SpherePotential::describe() const {
  std::ostringstream out;
  out << constant_;
  if (!poly_.is_zero() && scale_ != 0.0) out << " + " << scale_ << "*(" << poly_.str() << ")";
  for (const auto& t : logs_) out << " + " << t.coeff << "*log(" << t.p.str() << ")";
  return out.str();
}

}  // namespace fefflab
