#pragma once

#include <array>
#include <cstdint>
#include <random>

#include "fefflab/potential.hpp"
#include "fefflab/sphere_algebra.hpp"

namespace fefflab {

/// Seeded generators for the property suites. All draws go through mt19937_64
/// with plain modular reduction, so a seed fixes the corpus on every platform.
class Corpus {
 public:
  explicit Corpus(std::uint64_t seed) : rng_(seed) {}

  /// p/q with p ∈ [−num_max, num_max], q ∈ [1, den_max].
  Rational rational(unsigned num_max = 5, unsigned den_max = 4);
  /// Holomorphic polynomial of degree ≤ max_degree with small Q(i) coefficients, never zero.
  SpherePolynomial holomorphic(unsigned max_degree = 4);
  /// Real circular polynomial Σ c m + conj over monomials with a+b = c+d ∈ {1, 2},
  /// scaled so that its sphere bracket stays near 1.
  SpherePotential circular();
  /// Invertible 2×2 matrix with Q(i) entries.
  std::array<ExactComplex, 4> invertible();
  /// Unitary matrix with Q(i) entries via the Cayley transform.
  std::array<ExactComplex, 4> unitary();

 private:
  std::uint64_t draw(std::uint64_t n) { return rng_() % n; }
  std::mt19937_64 rng_;
};

}  // namespace fefflab
