#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace fefflab {

struct NelderMeadOptions {
  double xtol = 1e-6;      ///< stop when every vertex is within xtol of the best (∞-norm)
  double ftol = 1e-12;     ///< and the value spread is below ftol·(1 + |f_best|)
  unsigned max_iter = 5000;
  double initial_step = 0.05;  ///< relative to the box width per coordinate
};

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  unsigned iterations = 0;
  unsigned evaluations = 0;
  bool converged = false;
  /// The simplex became degenerate (affinely dependent vertices) before converging.
  bool collapsed = false;
  /// Best point after each iteration: x..., f.
  std::vector<std::vector<double>> trace;
};

/// Nelder–Mead on the box [lower, upper]; trial points are projected onto the box.
NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double> x0,
                             const std::vector<double>& lower, const std::vector<double>& upper,
                             const NelderMeadOptions& opt = {});

template <class Real>
struct RichardsonResult {
  Real value{};
  Real error{};  ///< difference between the last two diagonal entries
  std::vector<std::vector<Real>> table;
};

/// Richardson tableau for samples A(h_k), h_k = h₀/ratio^k, assuming an error
/// expansion in h^{p₀}, h^{p₀+Δp}, h^{p₀+2Δp}, ...
template <class Real>
RichardsonResult<Real> richardson(const std::vector<Real>& samples, double ratio, double p0 = 1.0, double dp = 1.0) {
  RichardsonResult<Real> r;
  r.table.push_back(samples);
  for (std::size_t j = 1; j < samples.size(); ++j) {
    const auto& prev = r.table.back();
    const Real factor = Real(std::pow(ratio, p0 + (j - 1) * dp));
    std::vector<Real> next;
    for (std::size_t k = 1; k < prev.size(); ++k) next.push_back(prev[k] + (prev[k] - prev[k - 1]) / (factor - 1));
    r.table.push_back(next);
  }
  r.value = r.table.back().back();
  if (r.table.size() >= 2) {
    using std::abs;
    r.error = abs(r.table.back().back() - r.table[r.table.size() - 2].back());
  }
  return r;
}

}  // namespace fefflab
