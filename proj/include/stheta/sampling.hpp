// Seeded random inputs: Siegel points, characteristics, group words and
// theta-product families. Every draw goes through Rng so that a seed fixes
// the whole sequence on every platform.
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "stheta/modularity.hpp"
#include "stheta/primgen.hpp"
#include "stheta/symplectic.hpp"
#include "stheta/theta.hpp"

namespace stheta {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [lo, hi].
  long integer(long lo, long hi);
  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(integer(0, static_cast<long>(v.size()) - 1))];
  }

 private:
  std::mt19937_64 engine_;
};

/// Z = X + iY with X symmetric, entries in [-1/2, 1/2], and Y = L tL + y_min
/// I for a random lower-triangular L with entries in [-1/2, 1/2].
SiegelPoint random_siegel_point(Rng& rng, std::size_t g, double y_min = 0.8);

/// Characteristic with numerators uniform in [0, den).
Characteristic random_characteristic(Rng& rng, std::size_t g, long den);

/// A random generator of Gamma(N) from special_gamma, or its inverse.
SympMatrix random_gamma_generator(Rng& rng, long level, std::size_t g);
/// Product of `length` random generators.
SympMatrix random_gamma_word(Rng& rng, long level, std::size_t g, int length);

/// A random element of the theta group (tAC, tBD with even diagonals) in
/// Sp_2g(Z): a word in J, diag(U, tU^{-1}) and [[I,S],[0,I]], [[I,0],[S,I]]
/// with S symmetric of even diagonal.
SympMatrix random_theta_group_word(Rng& rng, std::size_t g, int length);

/// A family on `terms` distinct random characteristics in (1/N)Z^2g outside
/// Sigma_- with exponents in (-N, N], not all zero, that satisfies
/// check_family. Built from the lattice of solutions of the congruences.
ThetaProduct random_passing_family(Rng& rng, long level, std::size_t g, std::size_t terms);

/// A random family with small exponents that fails check_family.
ThetaProduct random_failing_family(Rng& rng, long level, std::size_t g, std::size_t terms);

/// A random tower inside Q(zeta_n): subgroup chain base >= mid >= top with
/// x fixed exactly by mid and y cutting out top inside mid.
AbelianTower random_tower(Rng& rng, long n);

}  // namespace stheta
