// The CM field K = Q(zeta_5) with CM type {zeta -> zeta, zeta -> zeta^2}:
// period matrix, CM point Z0, the regular representation h on the basis
// xi_1..xi_4, the reflex norm and the induced action on theta constants.
#pragma once

#include <array>
#include <complex>

#include "stheta/action.hpp"
#include "stheta/exact.hpp"
#include "stheta/symplectic.hpp"
#include "stheta/theta.hpp"

namespace stheta {

/// Embedding exponents: phi_1 = 1, phi_2 = 2, phi_2^{-1} = 3, conjugation 4.
inline constexpr long kPhi1 = 1;
inline constexpr long kPhi2 = 2;
inline constexpr long kPhi2Inverse = 3;
inline constexpr long kComplexConjugation = 4;

struct CMContext {
  CycloField field{5};
  CycloElem zeta;
  CycloElem xi;                   // (zeta - zeta^4) / 5
  std::array<CycloElem, 4> basis;  // zeta^2, zeta^4, zeta, zeta + zeta^3
  RationalMatrix riemann_matrix;  // [E(Phi xi_j, Phi xi_k)], equal to J
  Eigen::MatrixXcd omega;         // 2 x 4, columns Phi(xi_i)
  SiegelPoint z0;
  EvalSettings settings;
  std::complex<double> theta_null;  // Theta(0, Z0; 0, 0)

  /// Builds and verifies the context; throws std::logic_error if the Riemann
  /// matrix is not J, Z0 is not in H_2 or |theta_null| <= 0.1.
  static CMContext build(const EvalSettings& settings = {});

  /// Phi_chi(Z0).
  std::complex<double> phi(const Characteristic& chi) const;
};

/// The symplectic matrix beta with beta(Z0) = -conj(Z0).
IntMatrix beta_matrix();

/// Tr_{K/Q}(xi x conj(y)), exactly.
Rational riemann_form(const CycloElem& x, const CycloElem& y, const CMContext& ctx);

/// The rational matrix with x (xi_1..xi_4)^t = h(x) (xi_1..xi_4)^t.
RationalMatrix h_map(const CycloElem& x);

/// x * x^{phi_2^{-1}} = x * galois_conjugate(x, 3).
CycloElem reflex_norm(const CycloElem& x);

/// The action of the Artin symbol of (x) at level 2p^2 through h(phi*(x)).
struct GaloisActor {
  CycloElem x;
  long p;
  CycloElem reflex;
  RationalMatrix h_matrix;
  SympMatrix h_mod;                // h_matrix mod 2p^2
  std::array<Integer, 4> first_row;

  /// Requires x integral in Q(zeta_5) and p an odd prime.
  static GaloisActor make(const CycloElem& x, long p);
};

/// x_1 = 1 + 2p zeta and x_2 = 1 + 2p(zeta^2 - zeta^3 + zeta^4).
CycloElem paper_x1(const CMContext& ctx, long p);
CycloElem paper_x2(const CMContext& ctx, long p);

/// x = a0 + a1 zeta + ... + a4 zeta^4.
CycloElem from_coordinates(const CycloField& field, const std::array<Integer, 5>& a);

/// Applies h(phi*(x)) mod 2p^2 to Phi_chi for chi in (1/p)Z^4 and folds the
/// translation phase of the canonical reduction into the multiplier. Throws
/// std::invalid_argument when h(phi*(x)) is not in G_{2p^2}, the norm of x is
/// not prime to 2p, or chi has the wrong denominator.
ActionResult artin_action(const CycloElem& x, long p, const Characteristic& chi, const CMContext& ctx);
ActionResult artin_action(const GaloisActor& actor, const Characteristic& chi);

struct BelongResult {
  Integer a, b, c, d;
  /// -2ab + 2ac + ad - 2bc - 2cd - 2d^2 as an integer and mod p.
  Integer raw_value;
  Integer value;
  /// The same criterion recomputed from the actions of x_1 and x_2 on
  /// chi = (a, b, c, d)/p, mod p.
  Integer phase_value;
};

/// Evaluates the four quadratic forms in a0..a4 and the criterion, checking
/// (a, b, c, d) against the first row of h(phi*(x)). Throws
/// std::invalid_argument when a precondition fails and std::logic_error on a
/// cross-check mismatch.
BelongResult belong_criterion(const std::array<Integer, 5>& coords, long p);

bool is_odd_prime(long p);

}  // namespace stheta
