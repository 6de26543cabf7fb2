// Actions of iota(a), G_N and G_{2M^2} on theta-constant characteristics.
#pragma once

#include <optional>

#include "stheta/symplectic.hpp"
#include "stheta/theta.hpp"

namespace stheta {

struct ActionResult {
  RootOfUnity multiplier;
  Characteristic chi_out;
};

/// (r, s) -> (r, a s), reduced with r mod Z^g and s mod M Z^g (M = den), which
/// leaves Phi unchanged. Requires gcd(a, 2 M^2) = 1.
Characteristic act_iota_inv(const Integer& a, const Characteristic& chi);

/// chi -> t(alpha) chi mod Z^2g for alpha in G_N and chi in (1/N)Z^2g; this
/// is the action on Phi_chi^(2N^2). Throws std::invalid_argument otherwise.
Characteristic act_power_family(const SympMatrix& alpha, const Characteristic& chi, const Integer& level);

/// For odd M with chi in (1/M)Z^2g and alpha in G_{2M^2}, a = nu(alpha):
/// multiplier e((t r a s - t r' s') / 2) and chi_out = [r'; s'] = t(alpha)
/// [r; s], unreduced. alpha is used with the entries it carries. M defaults
/// to the denominator of chi.
ActionResult act_phi(const SympMatrix& alpha, const Characteristic& chi, std::optional<Integer> m = std::nullopt);

/// act_phi followed by canonical reduction; the translation phase is folded
/// into the multiplier, so Phi_chi^alpha = multiplier * Phi_{chi_out}.
ActionResult act_phi_reduced(const SympMatrix& alpha, const Characteristic& chi,
                             std::optional<Integer> m = std::nullopt);

/// t(alpha) v for a 2g-vector v.
std::vector<Rational> transpose_apply(const IntMatrix& alpha, std::span<const Rational> v);

}  // namespace stheta
