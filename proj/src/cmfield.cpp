#include "stheta/cmfield.hpp"

#include <Eigen/LU>

namespace stheta {

namespace {

constexpr double kEmbedPrecision = 1e-13;

RationalMatrix basis_coefficients(const std::array<CycloElem, 4>& basis) {
  RationalMatrix m(4, 4);
  for (std::size_t k = 0; k < 4; ++k)
    for (std::size_t i = 0; i < 4; ++i) m(k, i) = basis[k].coeffs()[i];
  return m;
}

std::array<CycloElem, 4> standard_basis(const CycloField& f) {
  return {f.zeta(2), f.zeta(4), f.zeta(1), f.zeta(1) + f.zeta(3)};
}

const RationalMatrix& basis_inverse() {
  static const RationalMatrix inv = basis_coefficients(standard_basis(CycloField(5))).inverse();
  return inv;
}

void require_order5(const CycloElem& x) {
  if (x.order() != 5) throw std::invalid_argument("element must lie in Q(zeta_5)");
}

}  // namespace

bool is_odd_prime(long p) {
  if (p < 3 || p % 2 == 0) return false;
  for (long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

IntMatrix beta_matrix() { return IntMatrix{{0, 0, 1, -1}, {0, 0, -1, 0}, {0, 1, 0, 0}, {1, 1, 0, 0}}; }

Rational riemann_form(const CycloElem& x, const CycloElem& y, const CMContext& ctx) {
  require_order5(x);
  require_order5(y);
  const CycloElem t = ctx.xi * x * galois_conjugate(y, kComplexConjugation);
  auto q = conjugate_sum(t, ctx.field.units()).as_rational();
  if (!q) throw std::logic_error("trace is not rational");
  return *q;
}

CMContext CMContext::build(const EvalSettings& settings) {
  CycloField f(5);
  const CycloElem zeta = f.zeta(1);
  const CycloElem xi = (f.zeta(1) - f.zeta(4)) * Rational(1, 5);
  const auto basis = standard_basis(f);

  Eigen::MatrixXcd omega(2, 4);
  for (int i = 0; i < 4; ++i) {
    omega(0, i) = cyclo_embed(basis[static_cast<std::size_t>(i)], kPhi1, kEmbedPrecision);
    omega(1, i) = cyclo_embed(basis[static_cast<std::size_t>(i)], kPhi2, kEmbedPrecision);
  }
  const Eigen::MatrixXcd left = omega.leftCols(2);
  const Eigen::MatrixXcd right = omega.rightCols(2);
  Eigen::MatrixXcd z = right.partialPivLu().solve(left);
  if (!((z - z.transpose()).cwiseAbs().maxCoeff() < kSymmetryTolerance))
    throw std::logic_error("period matrix does not give a symmetric Z0");
  z = (z + z.transpose()).eval() * 0.5;

  std::optional<SiegelPoint> z0;
  try {
    z0.emplace(z);
  } catch (const std::invalid_argument& e) {
    throw std::logic_error(std::string("Z0 is not in H_2: ") + e.what());
  }

  const std::complex<double> theta0 = theta_eval(Eigen::VectorXcd::Zero(2), *z0, Characteristic::zero(2), settings);
  CMContext ctx{f, zeta, xi, basis, RationalMatrix(4, 4), omega, *z0, settings, theta0};
  for (std::size_t j = 0; j < 4; ++j)
    for (std::size_t k = 0; k < 4; ++k) ctx.riemann_matrix(j, k) = riemann_form(basis[j], basis[k], ctx);
  if (!(ctx.riemann_matrix == form_J(2).to_rational()))
    throw std::logic_error("Riemann form matrix is not J");
  if (!(std::abs(theta0) > 0.1)) throw std::logic_error("theta null at Z0 is too small");
  return ctx;
}

std::complex<double> CMContext::phi(const Characteristic& chi) const { return phi_eval(chi, z0, settings); }

RationalMatrix h_map(const CycloElem& x) {
  require_order5(x);
  const auto basis = standard_basis(x.field());
  RationalMatrix prod(4, 4);
  for (std::size_t j = 0; j < 4; ++j) {
    const CycloElem e = x * basis[j];
    for (std::size_t i = 0; i < 4; ++i) prod(j, i) = e.coeffs()[i];
  }
  return prod * basis_inverse();
}

CycloElem reflex_norm(const CycloElem& x) {
  require_order5(x);
  return x * galois_conjugate(x, kPhi2Inverse);
}

GaloisActor GaloisActor::make(const CycloElem& x, long p) {
  require_order5(x);
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (!x.is_integral()) throw std::invalid_argument("x must be an algebraic integer");
  CycloElem reflex = reflex_norm(x);
  RationalMatrix h = h_map(reflex);
  IntMatrix hi(4, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) hi(i, j) = h(i, j).get_num();
  const Integer level = 2 * Integer(p) * Integer(p);
  std::array<Integer, 4> row{hi(0, 0), hi(0, 1), hi(0, 2), hi(0, 3)};
  return GaloisActor{x, p, std::move(reflex), std::move(h), SympMatrix(std::move(hi), level), row};
}

CycloElem paper_x1(const CMContext& ctx, long p) {
  return ctx.field.one() + ctx.zeta * Rational(2 * p);
}

CycloElem paper_x2(const CMContext& ctx, long p) {
  const CycloField& f = ctx.field;
  return f.one() + (f.zeta(2) - f.zeta(3) + f.zeta(4)) * Rational(2 * p);
}

CycloElem from_coordinates(const CycloField& field, const std::array<Integer, 5>& a) {
  std::vector<Rational> c(a.begin(), a.end());
  return field.from_powers(c);
}

ActionResult artin_action(const GaloisActor& actor, const Characteristic& chi) {
  const Integer p(actor.p);
  if (chi.g() != 2) throw std::invalid_argument("characteristic must have genus 2");
  if (p % chi.den() != 0) throw std::invalid_argument("characteristic is not in (1/p)Z^4");
  const Integer level = 2 * p * p;
  if (!membership(actor.h_mod, Group::G, level))
    throw std::invalid_argument("h(phi*(x)) is not in G_" + level.get_str());
  Integer n(absolute_norm(actor.x).get_num());
  Integer g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), Integer(2 * p).get_mpz_t());
  if (g != 1) throw std::invalid_argument("norm of x is not prime to 2p");
  return act_phi_reduced(actor.h_mod, chi, p);
}

ActionResult artin_action(const CycloElem& x, long p, const Characteristic& chi, const CMContext& ctx) {
  (void)ctx;  // the action itself is exact; ctx fixes the embeddings it refers to
  return artin_action(GaloisActor::make(x, p), chi);
}

BelongResult belong_criterion(const std::array<Integer, 5>& a, long p) {
  if (!is_odd_prime(p)) throw std::invalid_argument("p must be an odd prime");
  const auto& [a0, a1, a2, a3, a4] = a;
  BelongResult r;
  r.a = a0 * a0 - a0 * a1 - a0 * a3 + a1 * a2 + a1 * a3 - a1 * a4 - a2 * a2 + a2 * a4;
  r.b = -a0 * a1 + a0 * a2 - a0 * a3 + a0 * a4 + a1 * a2 - a2 * a2 + a3 * a3 - a3 * a4;
  r.c = -a0 * a1 - a0 * a2 + a0 * a3 + a0 * a4 + a1 * a1 - a1 * a3 + a2 * a4 - a4 * a4;
  r.d = a0 * a2 - a0 * a3 + a1 * a3 - a1 * a4 - a2 * a2 + a2 * a3 - a3 * a4 + a4 * a4;
  r.raw_value = -2 * r.a * r.b + 2 * r.a * r.c + r.a * r.d - 2 * r.b * r.c - 2 * r.c * r.d - 2 * r.d * r.d;
  const Integer pz(p);
  r.value = mod(r.raw_value, pz);

  const CycloField f(5);
  const GaloisActor actor = GaloisActor::make(from_coordinates(f, a), p);
  const std::array<Integer, 4> forms{r.a, r.b, r.c, r.d};
  if (actor.first_row != forms)
    throw std::logic_error("quadratic forms disagree with the first row of h(phi*(x))");
  Integer g;
  const Integer n(absolute_norm(actor.x).get_num());
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), Integer(2 * pz).get_mpz_t());
  if (g != 1) throw std::invalid_argument("norm of x (" + n.get_str() + ") is not prime to 2p");
  const Integer level = 2 * pz * pz;
  if (!membership(actor.h_mod, Group::G, level))
    throw std::invalid_argument("h(phi*(x)) is not in G_" + level.get_str());

  // Ratio of the x_1 and x_2 actions on Phi_(a,b,c,d)/p against the same
  // ratio on Phi_(1,0,0,0)/p; the criterion is half its exponent times p.
  CycloElem x1 = f.one() + f.zeta(1) * Rational(2 * p);
  CycloElem x2 = f.one() + (f.zeta(2) - f.zeta(3) + f.zeta(4)) * Rational(2 * p);
  const GaloisActor act1 = GaloisActor::make(x1, p);
  const GaloisActor act2 = GaloisActor::make(x2, p);
  auto ratio = [&](const Characteristic& chi) {
    ActionResult u = artin_action(act1, chi);
    ActionResult v = artin_action(act2, chi);
    if (!(u.chi_out == chi.canonical()) || !(v.chi_out == chi.canonical()))
      throw std::logic_error("x_1 or x_2 moved the characteristic");
    return u.multiplier * v.multiplier.inverse();
  };
  auto chi_of = [&](const Integer& w, const Integer& x, const Integer& y, const Integer& z) {
    return Characteristic(pz, {mod(w, pz), mod(x, pz)}, {mod(y, pz), mod(z, pz)});
  };
  const RootOfUnity rho = ratio(chi_of(r.a, r.b, r.c, r.d)) * ratio(chi_of(1, 0, 0, 0)).inverse();
  const Rational scaled = rho.exponent() * pz;
  if (scaled.get_den() != 1) throw std::logic_error("action ratio is not a p-th root of unity");
  r.phase_value = mod(scaled.get_num() * *inverse_mod(2, pz), pz);
  return r;
}

}  // namespace stheta
