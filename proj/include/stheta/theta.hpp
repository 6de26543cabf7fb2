// Theta functions with rational characteristics: truncated lattice sums with
// a certified tail, theta constants, the vanishing set and reduction.
#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "stheta/exact.hpp"
#include "stheta/symplectic.hpp"

namespace stheta {

/// Raised when a numeric evaluation cannot meet its error target.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A pair (r, s) = (r_num, s_num) / den of rational g-vectors. The common
/// denominator is normalized: gcd(den, all numerators) = 1.
class Characteristic {
 public:
  Characteristic(Integer den, std::vector<Integer> r_num, std::vector<Integer> s_num);
  static Characteristic from_rationals(std::span<const Rational> r, std::span<const Rational> s);
  /// [r; s] given as one 2g-vector.
  static Characteristic from_vector(std::span<const Rational> rs);
  static Characteristic zero(std::size_t g);
  /// "r1 .. rg s1 .. sg" with entries as integers or num/den, whitespace or
  /// comma separated. Throws std::invalid_argument.
  static Characteristic parse(std::string_view text);

  std::size_t g() const { return r_num_.size(); }
  const Integer& den() const { return den_; }
  const std::vector<Integer>& r_num() const { return r_num_; }
  const std::vector<Integer>& s_num() const { return s_num_; }
  Rational r(std::size_t i) const { return make_rational(r_num_[i], den_); }
  Rational s(std::size_t i) const { return make_rational(s_num_[i], den_); }
  std::vector<Rational> r_vec() const;
  std::vector<Rational> s_vec() const;
  /// [r; s] as a 2g-vector.
  std::vector<Rational> as_vector() const;

  Characteristic negated() const;
  /// (r, s) with s replaced by -s.
  Characteristic conjugate_s() const;
  /// Representative with 0 <= r_j, s_j < 1.
  Characteristic canonical() const;
  bool is_zero() const;

  std::string to_string() const;
  bool operator==(const Characteristic& other) const = default;
  bool operator<(const Characteristic& other) const;

 private:
  Integer den_;
  std::vector<Integer> r_num_;
  std::vector<Integer> s_num_;
};

struct EvalSettings {
  double tol = 1e-12;
  int max_radius = 200;
  double denominator_threshold = 1e-8;
};

/// Bound on the sum of |terms| with |x + r| >= radius, for lambda the least
/// eigenvalue of Im Z and y = |Im u|.
double theta_tail_bound(double lambda, double imag_u_norm, std::size_t g, int radius);

/// Smallest radius whose tail bound is below tol, or -1 past max_radius.
int theta_radius(double lambda, double imag_u_norm, std::size_t g, const EvalSettings& settings);

/// Theta(u, Z; r, s) = sum_x e(t(x+r) Z (x+r) / 2 + t(x+r)(u+s)). Throws
/// NumericError when the radius cap is hit before the tail bound.
std::complex<double> theta_eval(const Eigen::VectorXcd& u, const SiegelPoint& z, const Characteristic& chi,
                                const EvalSettings& settings = {});

/// The partial sum over |x + r| < radius, with no tail control.
std::complex<double> theta_sum(const Eigen::VectorXcd& u, const SiegelPoint& z, const Characteristic& chi,
                               int radius);

/// Theta(0, Z; r, s) / Theta(0, Z; 0, 0). Throws NumericError when the
/// denominator falls below settings.denominator_threshold.
std::complex<double> phi_eval(const Characteristic& chi, const SiegelPoint& z, const EvalSettings& settings = {});

/// r, s half-integral and e(2 tr s) = -1.
bool in_sigma_minus(const Characteristic& chi);

/// r mod Z^g and s mod (M / gcd(M, l)) Z^g, each into [0, modulus). Requires
/// r in (1/M) Z^g. The l-th power of the theta constant is unchanged.
Characteristic reduce_char(const Characteristic& chi, const Integer& power, const Integer& m);

/// Canonical representative together with the phase e(t r_hat b) such that
/// Phi_chi = phase * Phi_canonical.
std::pair<RootOfUnity, Characteristic> canonicalize_with_phase(const Characteristic& chi);

}  // namespace stheta
