// Products of theta constants, the even-level modularity criterion and the
// Gamma(N) multiplier of a single theta constant.
#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <vector>

#include "stheta/symplectic.hpp"
#include "stheta/theta.hpp"

namespace stheta {

struct ProductTerm {
  Characteristic chi;
  Integer exponent;
};

/// prod Phi_chi^m over finitely many characteristics in (1/N)Z^2g.
/// Characteristics are stored canonically (entries in [0,1)) and merged; this
/// changes the product by a constant root of unity only.
class ThetaProduct {
 public:
  /// Throws std::invalid_argument on genus mismatch, a denominator not
  /// dividing level, or a characteristic in Sigma_-.
  ThetaProduct(std::size_t g, Integer level, std::vector<ProductTerm> terms);

  std::size_t g() const { return g_; }
  const Integer& level() const { return level_; }
  const std::vector<ProductTerm>& terms() const { return terms_; }

  std::complex<double> evaluate(const SiegelPoint& z, const EvalSettings& settings = {}) const;

 private:
  std::size_t g_;
  Integer level_;
  std::vector<ProductTerm> terms_;
};

/// Text format: first non-comment line "g N", then one line per term
/// "m r1 .. rg s1 .. sg" with rationals written as num/den. '#' starts a
/// comment. Throws std::invalid_argument with a line number.
ThetaProduct parse_product(std::string_view text);
std::string format_product(const ThetaProduct& product);

enum class Congruence { rr, ss, rs };
std::string to_string(Congruence c);

struct FamilyFailure {
  std::size_t j;  // 1-based
  std::size_t k;
  Congruence which;
  Integer sum;
  Integer modulus;
};

struct FamilyCheck {
  bool ok = true;
  std::vector<FamilyFailure> failures;
  std::string diagnostic() const;
};

/// The Gamma(N)-invariance criterion for even N: with S_rr(j,k) =
/// sum m (N r_j)(N r_k) and likewise S_ss, S_rs,
///   S_rr(j,j), S_ss(j,j) = 0 mod 2N,
///   S_rr(j,k), S_ss(j,k) = 0 mod N for j != k,
///   S_rs(j,k) = 0 mod N.
/// Throws std::invalid_argument for odd N or denominators not dividing N.
FamilyCheck check_family(const ThetaProduct& product, const Integer& level);

/// The root of unity mu with Phi_chi(gamma Z) = mu Phi_chi(Z) for gamma in
/// Gamma(N), N even, chi in (1/N)Z^2g. Throws std::invalid_argument when
/// gamma is not in Gamma(N) or chi has the wrong denominator.
RootOfUnity gamma_multiplier(const SympMatrix& gamma, const Characteristic& chi, const Integer& level);

}  // namespace stheta
