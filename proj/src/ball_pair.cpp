#include "fefflab/ball_pair.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "fefflab/errors.hpp"
#include "fefflab/optimize.hpp"
#include "fefflab/parallel.hpp"

namespace fefflab {

namespace {

const mp50& mp_pi() {
  static const mp50 pi = boost::math::constants::pi<mp50>();
  return pi;
}

mp50 safe_acos(const mp50& x) {
  if (x > 1) {
    if (x - 1 > 1e-12) throw DomainError("arccos argument above 1");
    return mp50(0);
  }
  if (x < -1) {
    if (-1 - x > 1e-12) throw DomainError("arccos argument below -1");
    return mp_pi();
  }
  return acos(x);
}

void check_domain(double R, double theta) {
  if (!(R > 0 && R <= 1)) throw DomainError("ball pair needs 0 < R <= 1, got " + std::to_string(R));
  if (!(theta > 0 && theta < std::numbers::pi)) {
    throw DomainError("ball pair needs 0 < theta < pi, got " + std::to_string(theta));
  }
}

}  // namespace

mp50 q_ball_pair_mp(const mp50& R, const mp50& theta) {
  check_domain(static_cast<double>(R), static_cast<double>(theta));
  const mp50 c = cos(theta), s = sin(theta);
  const mp50 d2 = 1 + R * R - 2 * R * c;
  // arccos((1 − R cosθ)/d) sits next to 1 for small R and loses half the digits; the
  // atan2 forms are the same angles without that loss.
  const mp50 lambda = atan2(s, R - c);
  const mp50 nu = atan2(R * s, 1 - R * c);
  const mp50 R13 = cbrt(R);
  const mp50 R23 = R13 * R13;
  const mp50 R53 = R * R23;
  const mp50 R83 = R * R53;
  const mp50 R4 = R * R * R * R;
  const mp50 num = R83 * lambda + nu - R * s * (1 + R83 - (R + R53) * c) / d2;
  const mp50 den = R4 * lambda + nu - R * s * (1 + mp50(2) / 3 * R * R * s * s + R4 - (R + R * R * R) * c) / d2;
  if (num < 0) throw DomainError("negative Fefferman bracket in q(R, theta)");
  return 8 * sqrt(mp_pi()) * num * sqrt(num) / den;
}

double q_ball_pair(const BallPairParams& p) {
  check_domain(p.R, p.theta);
  return static_cast<double>(q_ball_pair_mp(mp50(p.R), mp50(p.theta)));
}

double q_ball_pair_alt(const BallPairParams& p) {
  check_domain(p.R, p.theta);
  // Both brackets vanish like the lens volume as θ → π, so double precision is not enough here.
  const mp50 R(p.R), th(p.theta);
  const mp50 s = sin(th), c = cos(th);
  const mp50 d = sqrt(1 + R * R - 2 * R * c);
  const mp50 lambda = safe_acos((R - c) / d);
  const mp50 nu = safe_acos((1 - R * c) / d);
  const mp50 k = 1 / (d * d);
  const mp50 r13 = cbrt(R);
  const mp50 r83 = pow(r13, 8);
  // Brackets collected by powers of R.
  const mp50 a = nu + r83 * lambda - k * s * (R - R * R * c - r83 * c + pow(r13, 11));
  const mp50 b = nu + pow(R, 4) * lambda - k * s * (R - R * R * c + mp50(2) / 3 * pow(R, 3) * s * s - pow(R, 4) * c + pow(R, 5));
  return static_cast<double>(8 * sqrt(mp_pi()) * pow(a, mp50(1.5)) / b);
}

double theta_expansion_residual(double R, double theta) {
  if (!(R > 0 && R < 1)) throw DomainError("theta expansion needs 0 < R < 1");
  const mp50 r(R), t(theta);
  const mp50 q = q_ball_pair_mp(r, t);
  const mp50 one_minus = 1 - r;
  const mp50 model = 8 * mp_pi() - 8 * (1 - cbrt(r)) / (one_minus * one_minus * one_minus) * t * t * t;
  return static_cast<double>(q - model);
}

double corner_expansion_residual(double R, double theta) {
  const mp50 r(R), t(theta);
  const mp50 q = q_ball_pair_mp(r, t);
  const mp50 model = 8 * mp_pi() - 8 * t * t * t / (3 * (t * t + (1 - r) * (1 - r)));
  return static_cast<double>(q - model);
}

LimitResult q_ball_pair_limit(const EdgeSpec& edge, unsigned levels) {
  if (levels < 2) throw DomainError("limit extrapolation needs at least two levels");
  std::vector<mp50> samples;
  LimitResult out;
  double ratio = 2.0;
  switch (edge.kind) {
    case EdgeKind::R_zero: {
      if (!(edge.value > 0 && edge.value < std::numbers::pi)) throw DomainError("R-edge needs theta in (0, pi)");
      // t = R^{1/3} halves from level to level. Near θ = π the expansion in t only
      // becomes asymptotic once t is well below sin θ.
      mp50 R = std::min(mp50(1) / 100, pow(sin(mp50(edge.value)) / 2, 3));
      for (unsigned k = 0; k < levels; ++k, R /= 8) {
        out.steps.push_back(static_cast<double>(cbrt(R)));
        samples.push_back(q_ball_pair_mp(R, mp50(edge.value)));
      }
      break;
    }
    case EdgeKind::theta_zero: {
      if (!(edge.value > 0 && edge.value <= 1)) throw DomainError("theta-edge needs R in (0, 1]");
      mp50 t = mp50(1) / 20;
      for (unsigned k = 0; k < levels; ++k, t /= 2) {
        out.steps.push_back(static_cast<double>(t));
        samples.push_back(q_ball_pair_mp(mp50(edge.value), t));
      }
      break;
    }
    case EdgeKind::corner: {
      if (!(edge.value > 0)) throw DomainError("corner approach needs a positive slope s");
      mp50 delta = mp50(1) / 20 / std::max(1.0, edge.value);
      for (unsigned k = 0; k < levels; ++k, delta /= 2) {
        out.steps.push_back(static_cast<double>(delta));
        samples.push_back(q_ball_pair_mp(1 - delta, edge.value * delta));
      }
      break;
    }
  }
  const auto r = richardson(samples, ratio, 1.0, 1.0);
  for (const auto& s : samples) out.samples.push_back(static_cast<double>(s));
  out.value = static_cast<double>(r.value);
  out.error = static_cast<double>(r.error);
  if (!(out.error <= 1e-6)) {
    std::ostringstream msg;
    msg << "edge extrapolation did not settle (error " << out.error << ")";
    throw ConvergenceError(msg.str());
  }
  return out;
}

MinimizeResult minimize_q(const MinimizeOptions& opt) {
  if (opt.n_R < 2 || opt.n_theta < 2) throw DomainError("scan needs at least 2 points per axis");
  const double pi = std::numbers::pi;
  const double th_hi = opt.theta_max > 0 ? opt.theta_max : pi - opt.delta;
  const double th_lo = opt.theta_min;
  if (!(th_hi > th_lo && th_lo >= 0 && th_hi < pi)) throw DomainError("invalid theta scan range");

  auto value = [&](double R, double th) {
    if (th == 0.0) return 8.0 * pi;
    if (R == 0.0) return q_ball_pair_limit({EdgeKind::R_zero, th}).value;
    return q_ball_pair({R, th});
  };

  MinimizeResult res;
  res.scan.resize(std::size_t(opt.n_R) * opt.n_theta);
  parallel_for(res.scan.size(), [&](std::size_t idx) {
    const std::size_t i = idx / opt.n_theta, j = idx % opt.n_theta;
    const double R = double(i) / (opt.n_R - 1);
    const double th = th_lo + (th_hi - th_lo) * double(j) / (opt.n_theta - 1);
    res.scan[idx] = {R, th, value(R, th)};
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < res.scan.size(); ++k)
    if (res.scan[k].q < res.scan[best].q) best = k;
  res.scan_min = res.scan[best].q;

  const double dth = (th_hi - th_lo) / (opt.n_theta - 1);
  const ScanPoint start = res.scan[best];
  NelderMeadOptions nm;
  nm.xtol = opt.tol;
  nm.initial_step = 0.25;
  if (start.R == 0.0) {
    res.on_R_zero_edge = true;
    const double lo = std::max(th_lo, start.theta - dth), hi = std::min(th_hi, start.theta + dth);
    auto f = [&](const std::vector<double>& x) { return x[0] > 0 ? value(0.0, x[0]) : 8.0 * pi; };
    const auto r = nelder_mead(f, {start.theta}, {std::max(lo, 1e-9)}, {hi}, nm);
    res.R = 0.0;
    res.theta = r.x[0];
    res.q = r.f;
    res.iterations = r.iterations;
    res.trace = r.trace;
  } else {
    const double dR = 1.0 / (opt.n_R - 1);
    auto f = [&](const std::vector<double>& x) { return value(x[0], x[1]); };
    const auto r = nelder_mead(f, {start.R, start.theta}, {std::max(0.0, start.R - dR), std::max(th_lo, start.theta - dth)},
                               {std::min(1.0, start.R + dR), std::min(th_hi, start.theta + dth)}, nm);
    res.R = r.x[0];
    res.theta = r.x[1];
    res.q = r.f;
    res.iterations = r.iterations;
    res.trace = r.trace;
  }
  if (res.q > res.scan_min) {
    res.R = start.R;
    res.theta = start.theta;
    res.q = start.q;
  }
  return res;
}

std::vector<ScanPoint> sweep_q(const std::vector<double>& R, const std::vector<double>& theta) {
  std::vector<ScanPoint> out(R.size() * theta.size());
  parallel_for(out.size(), [&](std::size_t idx) {
    const double r = R[idx / theta.size()], t = theta[idx % theta.size()];
    out[idx] = {r, t, q_ball_pair({r, t})};
  });
  return out;
}

std::string sweep_csv(const std::vector<ScanPoint>& points) {
  std::ostringstream out;
  out.precision(17);
  out << "R,theta,q\n";
  for (const auto& p : points) out << p.R << "," << p.theta << "," << p.q << "\n";
  return out.str();
}

}  // namespace fefflab
