#include "stheta/modularity.hpp"

#include <map>
#include <sstream>

namespace stheta {

namespace {

void require_den_divides(const Characteristic& chi, const Integer& level) {
  if (level % chi.den() != 0)
    throw std::invalid_argument("characteristic " + chi.to_string() + " is not in (1/" + level.get_str() +
                                ")Z^2g");
}

std::complex<double> ipow(std::complex<double> z, Integer e) {
  if (e < 0) {
    z = 1.0 / z;
    e = -e;
  }
  std::complex<double> r = 1;
  while (e > 0) {
    if (e % 2 != 0) r *= z;
    e /= 2;
    if (e > 0) z *= z;
  }
  return r;
}

// Integer vector N * v for v in (1/N)Z^g.
std::vector<Integer> scaled_vec(const std::vector<Rational>& v, const Integer& level) {
  std::vector<Integer> out;
  for (const auto& q : v) {
    Rational x = q * level;
    out.push_back(x.get_num());
  }
  return out;
}

Rational quad(const std::vector<Integer>& u, const IntMatrix& m, const std::vector<Integer>& v) {
  Integer acc = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) acc += u[i] * m(i, j) * v[j];
  return Rational(acc);
}

}  // namespace

ThetaProduct::ThetaProduct(std::size_t g, Integer level, std::vector<ProductTerm> terms)
    : g_(g), level_(std::move(level)) {
  if (g_ == 0) throw std::invalid_argument("genus must be positive");
  if (level_ <= 0) throw std::invalid_argument("level must be positive");
  std::map<Characteristic, Integer> merged;
  for (auto& t : terms) {
    if (t.chi.g() != g_) throw std::invalid_argument("term genus differs from product genus");
    require_den_divides(t.chi, level_);
    if (in_sigma_minus(t.chi))
      throw std::invalid_argument("characteristic " + t.chi.to_string() + " is in Sigma_- (theta vanishes)");
    merged[t.chi.canonical()] += t.exponent;
  }
  for (auto& [chi, m] : merged)
    if (m != 0) terms_.push_back({chi, m});
}

std::complex<double> ThetaProduct::evaluate(const SiegelPoint& z, const EvalSettings& settings) const {
  std::complex<double> acc = 1;
  for (const auto& t : terms_) acc *= ipow(phi_eval(t.chi, z, settings), t.exponent);
  return acc;
}

std::string to_string(Congruence c) {
  switch (c) {
    case Congruence::rr: return "rr";
    case Congruence::ss: return "ss";
    case Congruence::rs: return "rs";
  }
  return "?";
}

std::string FamilyCheck::diagnostic() const {
  if (ok) return "all congruences hold";
  std::ostringstream out;
  for (std::size_t i = 0; i < failures.size(); ++i) {
    const auto& f = failures[i];
    out << (i ? "; " : "") << to_string(f.which) << "(" << f.j << "," << f.k << ") = " << f.sum.get_str()
        << " not 0 mod " << f.modulus.get_str();
  }
  return out.str();
}

FamilyCheck check_family(const ThetaProduct& product, const Integer& level) {
  if (level <= 0 || level % 2 != 0) throw std::invalid_argument("check_family needs an even positive level");
  const std::size_t g = product.g();
  std::vector<Integer> srr(g * g, Integer(0)), sss(g * g, Integer(0)), srs(g * g, Integer(0));
  for (const auto& t : product.terms()) {
    require_den_divides(t.chi, level);
    auto nr = scaled_vec(t.chi.r_vec(), level);
    auto ns = scaled_vec(t.chi.s_vec(), level);
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t k = 0; k < g; ++k) {
        srr[j * g + k] += t.exponent * nr[j] * nr[k];
        sss[j * g + k] += t.exponent * ns[j] * ns[k];
        srs[j * g + k] += t.exponent * nr[j] * ns[k];
      }
  }
  FamilyCheck out;
  auto test = [&](const Integer& sum, const Integer& mod_by, std::size_t j, std::size_t k, Congruence c) {
    if (mod(sum, mod_by) != 0) out.failures.push_back({j + 1, k + 1, c, sum, mod_by});
  };
  for (std::size_t j = 0; j < g; ++j)
    for (std::size_t k = 0; k < g; ++k) {
      const Integer sym_mod = j == k ? Integer(2 * level) : level;
      if (j <= k) {
        test(srr[j * g + k], sym_mod, j, k, Congruence::rr);
        test(sss[j * g + k], sym_mod, j, k, Congruence::ss);
      }
      test(srs[j * g + k], level, j, k, Congruence::rs);
    }
  out.ok = out.failures.empty();
  return out;
}

RootOfUnity gamma_multiplier(const SympMatrix& gamma, const Characteristic& chi, const Integer& level) {
  if (level <= 0 || level % 2 != 0) throw std::invalid_argument("gamma_multiplier needs an even positive level");
  if (chi.g() != gamma.g()) throw std::invalid_argument("genus mismatch in gamma_multiplier");
  if (!membership(gamma, Group::Gamma, level))
    throw std::invalid_argument("matrix is not in Gamma(" + level.get_str() + ")");
  require_den_divides(chi, level);

  const std::size_t g = gamma.g();
  IntMatrix diff = gamma.entries() - IntMatrix::identity(2 * g);
  for (std::size_t i = 0; i < 2 * g; ++i)
    for (std::size_t j = 0; j < 2 * g; ++j) diff(i, j) /= level;
  const IntMatrix a0 = diff.block(0, 0, g, g);
  const IntMatrix b0 = diff.block(0, g, g, g);
  const IntMatrix c0 = diff.block(g, 0, g, g);
  const IntMatrix d0 = diff.block(g, g, g, g);
  const Integer half = level / 2;

  const IntMatrix m_rr = b0.transpose().scaled(-1) + (a0 * b0.transpose()).scaled(level);
  const IntMatrix m_ss = c0 + (c0 * d0.transpose()).scaled(level);
  const IntMatrix m_rs =
      a0 + (a0 * d0.transpose() + d0.transpose() * a0 + b0 * c0.transpose() - b0.transpose() * c0).scaled(half);

  const auto nr = scaled_vec(chi.r_vec(), level);
  const auto ns = scaled_vec(chi.s_vec(), level);
  const Rational two_n(2 * level);
  const Rational exponent =
      -quad(nr, m_rr, nr) / two_n - quad(ns, m_ss, ns) / two_n - quad(nr, m_rs, ns) / Rational(level);
  return RootOfUnity(exponent);
}

}  // namespace stheta
