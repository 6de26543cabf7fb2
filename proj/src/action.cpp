#include "stheta/action.hpp"

namespace stheta {

std::vector<Rational> transpose_apply(const IntMatrix& alpha, std::span<const Rational> v) {
  if (alpha.rows() != v.size()) throw std::invalid_argument("vector length does not match matrix");
  std::vector<Rational> out(alpha.cols(), Rational(0));
  for (std::size_t i = 0; i < alpha.cols(); ++i)
    for (std::size_t j = 0; j < alpha.rows(); ++j)
      if (alpha(j, i) != 0) out[i] += Rational(alpha(j, i)) * v[j];
  return out;
}

Characteristic act_iota_inv(const Integer& a, const Characteristic& chi) {
  const Integer m = chi.den();
  if (!inverse_mod(a, 2 * m * m) && 2 * m * m > 1)
    throw std::invalid_argument(a.get_str() + " is not a unit mod " + Integer(2 * m * m).get_str());
  std::vector<Integer> sn = chi.s_num();
  for (auto& x : sn) x *= a;
  return reduce_char(Characteristic(m, chi.r_num(), std::move(sn)), 1, m);
}

Characteristic act_power_family(const SympMatrix& alpha, const Characteristic& chi, const Integer& level) {
  if (alpha.g() != chi.g()) throw std::invalid_argument("genus mismatch");
  if (level % chi.den() != 0)
    throw std::invalid_argument("characteristic is not in (1/" + level.get_str() + ")Z^2g");
  if (!membership(alpha, Group::G, level)) throw std::invalid_argument("matrix is not in G_" + level.get_str());
  const auto v = chi.as_vector();
  return Characteristic::from_vector(transpose_apply(alpha.entries(), v)).canonical();
}

ActionResult act_phi(const SympMatrix& alpha, const Characteristic& chi, std::optional<Integer> m_opt) {
  if (alpha.g() != chi.g()) throw std::invalid_argument("genus mismatch");
  const Integer m = m_opt.value_or(chi.den());
  if (m <= 0 || m % 2 == 0) throw std::invalid_argument("act_phi needs an odd denominator M");
  if (m % chi.den() != 0) throw std::invalid_argument("characteristic is not in (1/" + m.get_str() + ")Z^2g");
  const Integer level = 2 * m * m;
  if (!membership(alpha, Group::G, level)) throw std::invalid_argument("matrix is not in G_" + level.get_str());
  const Integer a = *sympl_multiplier(alpha.reduced(level));

  const std::size_t g = chi.g();
  const auto v = chi.as_vector();
  const auto w = transpose_apply(alpha.entries(), v);
  Rational e = 0;
  for (std::size_t i = 0; i < g; ++i) e += v[i] * Rational(a) * v[g + i] - w[i] * w[g + i];
  return {RootOfUnity(e / 2), Characteristic::from_vector(w)};
}

ActionResult act_phi_reduced(const SympMatrix& alpha, const Characteristic& chi, std::optional<Integer> m) {
  ActionResult raw = act_phi(alpha, chi, std::move(m));
  auto [phase, canon] = canonicalize_with_phase(raw.chi_out);
  return {raw.multiplier * phase, canon};
}

}  // namespace stheta
