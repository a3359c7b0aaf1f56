#include "fefflab/optimize.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <numeric>

#include "fefflab/errors.hpp"

namespace fefflab {

namespace {

void project(std::vector<double>& x, const std::vector<double>& lo, const std::vector<double>& hi) {
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::clamp(x[i], lo[i], hi[i]);
}

bool degenerate(const std::vector<std::vector<double>>& s) {
  const std::size_t n = s[0].size();
  Eigen::MatrixXd E(n, n);
  double scale = 0.0;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      E(i, j) = s[j + 1][i] - s[0][i];
      scale = std::max(scale, std::abs(E(i, j)));
    }
  if (scale == 0.0) return true;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(E / scale);
  const auto& sv = svd.singularValues();
  return sv(n - 1) < 1e-10 * sv(0);
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const std::vector<double>& lower, const std::vector<double>& upper,
                             const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  if (n == 0 || lower.size() != n || upper.size() != n) throw DomainError("Nelder-Mead dimension mismatch");
  for (std::size_t i = 0; i < n; ++i)
    if (!(upper[i] >= lower[i])) throw DomainError("Nelder-Mead box is empty");
  project(x0, lower, upper);

  NelderMeadResult res;
  auto eval = [&](const std::vector<double>& x) {
    ++res.evaluations;
    return f(x);
  };

  std::vector<std::vector<double>> s(n + 1, x0);
  for (std::size_t i = 0; i < n; ++i) {
    const double step = opt.initial_step * std::max(upper[i] - lower[i], 1e-12);
    s[i + 1][i] = x0[i] + step <= upper[i] ? x0[i] + step : x0[i] - step;
    project(s[i + 1], lower, upper);
  }
  std::vector<double> fs(n + 1);
  for (std::size_t i = 0; i <= n; ++i) fs[i] = eval(s[i]);

  std::vector<std::size_t> order(n + 1);
  for (res.iterations = 0; res.iterations < opt.max_iter; ++res.iterations) {
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    {
      std::vector<std::vector<double>> s2;
      std::vector<double> f2;
      for (auto k : order) {
        s2.push_back(s[k]);
        f2.push_back(fs[k]);
      }
      s.swap(s2);
      fs.swap(f2);
    }
    std::vector<double> row = s[0];
    row.push_back(fs[0]);
    res.trace.push_back(row);

    double spread = 0.0;
    for (std::size_t k = 1; k <= n; ++k)
      for (std::size_t i = 0; i < n; ++i) spread = std::max(spread, std::abs(s[k][i] - s[0][i]));
    if (spread <= opt.xtol && fs[n] - fs[0] <= opt.ftol * (1.0 + std::abs(fs[0]))) {
      res.converged = true;
      break;
    }
    if (spread > opt.xtol && degenerate(s)) {
      res.collapsed = true;
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += s[k][i] / n;
    auto along = [&](double t) {
      std::vector<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = centroid[i] + t * (s[n][i] - centroid[i]);
      project(x, lower, upper);
      return x;
    };

    const auto xr = along(-1.0);
    const double fr = eval(xr);
    if (fr < fs[0]) {
      const auto xe = along(-2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        s[n] = xe;
        fs[n] = fe;
      } else {
        s[n] = xr;
        fs[n] = fr;
      }
      continue;
    }
    if (fr < fs[n - 1]) {
      s[n] = xr;
      fs[n] = fr;
      continue;
    }
    const bool outside = fr < fs[n];
    const auto xc = along(outside ? -0.5 : 0.5);
    const double fc = eval(xc);
    if (fc < (outside ? fr : fs[n])) {
      s[n] = xc;
      fs[n] = fc;
      continue;
    }
    for (std::size_t k = 1; k <= n; ++k) {
      for (std::size_t i = 0; i < n; ++i) s[k][i] = s[0][i] + 0.5 * (s[k][i] - s[0][i]);
      fs[k] = eval(s[k]);
    }
  }
  const auto best = std::min_element(fs.begin(), fs.end()) - fs.begin();
  res.x = s[best];
  res.f = fs[best];
  return res;
}

}  // namespace fefflab
