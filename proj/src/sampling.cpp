#include "stheta/sampling.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace stheta {

long Rng::integer(long lo, long hi) {
  if (hi < lo) throw std::invalid_argument("empty integer range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<long>(engine_());
  // rejection keeps the draw unbiased
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t v;
  do {
    v = engine_();
  } while (v >= limit);
  return lo + static_cast<long>(v % span);
}

SiegelPoint random_siegel_point(Rng& rng, std::size_t g, double y_min) {
  const auto n = static_cast<Eigen::Index>(g);
  Eigen::MatrixXd x(n, n), l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j <= i; ++j) {
      x(i, j) = x(j, i) = rng.uniform(-0.5, 0.5);
      l(i, j) = rng.uniform(-0.5, 0.5);
    }
  Eigen::MatrixXd y = l * l.transpose() + y_min * Eigen::MatrixXd::Identity(n, n);
  y = (y + y.transpose()).eval() * 0.5;
  Eigen::MatrixXcd z(n, n);
  z.real() = x;
  z.imag() = y;
  return SiegelPoint(z);
}

Characteristic random_characteristic(Rng& rng, std::size_t g, long den) {
  std::vector<Integer> r, s;
  for (std::size_t i = 0; i < g; ++i) r.emplace_back(rng.integer(0, den - 1));
  for (std::size_t i = 0; i < g; ++i) s.emplace_back(rng.integer(0, den - 1));
  return Characteristic(den, std::move(r), std::move(s));
}

SympMatrix random_gamma_generator(Rng& rng, long level, std::size_t g) {
  static const GammaKind kinds[] = {GammaKind::upper, GammaKind::lower, GammaKind::mixed, GammaKind::block};
  GammaKind kind = kinds[rng.integer(0, 3)];
  std::size_t j = static_cast<std::size_t>(rng.integer(1, static_cast<long>(g)));
  std::size_t k = static_cast<std::size_t>(rng.integer(1, static_cast<long>(g)));
  if (kind == GammaKind::block && j == k) {
    if (g == 1) kind = GammaKind::upper;
    else k = j % g + 1;
  }
  SympMatrix m = special_gamma(kind, j, k, level, g);
  return rng.integer(0, 1) ? m : m.inverse();
}

SympMatrix random_gamma_word(Rng& rng, long level, std::size_t g, int length) {
  SympMatrix w(IntMatrix::identity(2 * g), 0);
  for (int i = 0; i < length; ++i) w = w * random_gamma_generator(rng, level, g);
  return w;
}

SympMatrix random_theta_group_word(Rng& rng, std::size_t g, int length) {
  const std::size_t n = 2 * g;
  SympMatrix w(IntMatrix::identity(n), 0);
  for (int step = 0; step < length; ++step) {
    IntMatrix m = IntMatrix::identity(n);
    const long kind = rng.integer(0, 3);
    const std::size_t j = static_cast<std::size_t>(rng.integer(0, static_cast<long>(g) - 1));
    const std::size_t k = static_cast<std::size_t>(rng.integer(0, static_cast<long>(g) - 1));
    const long sign = rng.integer(0, 1) ? 1 : -1;
    if (kind == 0) {
      m = form_J(g);
    } else if (kind == 1) {
      // diag(U, tU^{-1}) with U = I + sign E_jk, or U = diag(.., -1, ..)
      if (j != k) {
        m(j, k) = sign;
        m(g + k, g + j) = -sign;
      } else {
        m(j, j) = -1;
        m(g + j, g + j) = -1;
      }
    } else {
      const std::size_t off = kind == 2 ? g : 0;  // upper puts S in B, lower in C
      const std::size_t roff = kind == 2 ? 0 : g;
      if (j == k) {
        m(roff + j, off + j) = 2 * sign;
      } else {
        m(roff + j, off + k) = sign;
        m(roff + k, off + j) = sign;
      }
    }
    w = w * SympMatrix(std::move(m), 0);
  }
  return w;
}

namespace {

// Basis (as columns) of {m in Z^k : sum_i rows[c][i] m_i = 0 mod mods[c]}.
std::vector<std::vector<Integer>> congruence_lattice(const std::vector<std::vector<Integer>>& rows,
                                                     const std::vector<Integer>& mods, std::size_t k) {
  std::vector<std::vector<Integer>> basis(k, std::vector<Integer>(k, Integer(0)));
  for (std::size_t i = 0; i < k; ++i) basis[i][i] = 1;
  auto value = [&](const std::vector<Integer>& row, const std::vector<Integer>& b) {
    Integer v = 0;
    for (std::size_t i = 0; i < k; ++i) v += row[i] * b[i];
    return v;
  };
  for (std::size_t c = 0; c < rows.size(); ++c) {
    const Integer& q = mods[c];
    std::vector<Integer> vals(k);
    for (std::size_t i = 0; i < k; ++i) vals[i] = mod(value(rows[c], basis[i]), q);
    // fold every value into basis[0] with unimodular column operations
    for (std::size_t i = 1; i < k; ++i) {
      if (vals[i] == 0) continue;
      Integer g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), vals[0].get_mpz_t(), vals[i].get_mpz_t());
      const Integer u = vals[i] / g;
      const Integer v = vals[0] / g;
      std::vector<Integer> b0(k), bi(k);
      for (std::size_t e = 0; e < k; ++e) {
        b0[e] = s * basis[0][e] + t * basis[i][e];
        bi[e] = u * basis[0][e] - v * basis[i][e];
      }
      basis[0] = std::move(b0);
      basis[i] = std::move(bi);
      vals[0] = g;
      vals[i] = 0;
    }
    Integer g;
    mpz_gcd(g.get_mpz_t(), vals[0].get_mpz_t(), q.get_mpz_t());
    const Integer scale = q / g;
    for (auto& e : basis[0]) e *= scale;
  }
  return basis;
}

std::vector<Characteristic> distinct_characteristics(Rng& rng, long level, std::size_t g, std::size_t terms) {
  std::set<Characteristic> seen;
  std::vector<Characteristic> out;
  for (int guard = 0; out.size() < terms; ++guard) {
    if (guard > 10000) throw std::runtime_error("could not draw distinct characteristics");
    Characteristic chi = random_characteristic(rng, g, level);
    if (in_sigma_minus(chi) || chi.is_zero() || !seen.insert(chi).second) continue;
    out.push_back(chi);
  }
  return out;
}

}  // namespace

ThetaProduct random_passing_family(Rng& rng, long level, std::size_t g, std::size_t terms) {
  const Integer n(level);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto chis = distinct_characteristics(rng, level, g, terms);
    std::vector<std::vector<Integer>> rows;
    std::vector<Integer> mods;
    auto scaled = [&](const Rational& q) { return Rational(q * n).get_num(); };
    for (std::size_t j = 0; j < g; ++j)
      for (std::size_t k = 0; k < g; ++k) {
        std::vector<Integer> rr, ss, rs;
        for (const auto& chi : chis) {
          rr.push_back(scaled(chi.r(j)) * scaled(chi.r(k)));
          ss.push_back(scaled(chi.s(j)) * scaled(chi.s(k)));
          rs.push_back(scaled(chi.r(j)) * scaled(chi.s(k)));
        }
        if (j <= k) {
          const Integer m = j == k ? Integer(2 * n) : n;
          rows.push_back(rr);
          mods.push_back(m);
          rows.push_back(ss);
          mods.push_back(m);
        }
        rows.push_back(rs);
        mods.push_back(n);
      }
    const auto basis = congruence_lattice(rows, mods, terms);
    for (int draw = 0; draw < 20; ++draw) {
      std::vector<Integer> m(terms, Integer(0));
      for (const auto& b : basis) {
        const long c = rng.integer(-3, 3);
        for (std::size_t i = 0; i < terms; ++i) m[i] += c * b[i];
      }
      // shifting an exponent by 2N keeps every congruence
      bool all_zero = true;
      std::vector<ProductTerm> pt;
      for (std::size_t i = 0; i < terms; ++i) {
        Integer e = mod(m[i], 2 * n);
        if (e > n) e -= 2 * n;
        if (e != 0) all_zero = false;
        pt.push_back({chis[i], e});
      }
      if (all_zero) continue;
      ThetaProduct prod(g, n, std::move(pt));
      if (!check_family(prod, n).ok) throw std::logic_error("lattice family fails the criterion");
      return prod;
    }
  }
  throw std::runtime_error("no passing family found");
}

ThetaProduct random_failing_family(Rng& rng, long level, std::size_t g, std::size_t terms) {
  const Integer n(level);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto chis = distinct_characteristics(rng, level, g, terms);
    std::vector<ProductTerm> pt;
    for (auto& chi : chis) {
      long e = 0;
      while (e == 0) e = rng.integer(-level, level);
      pt.push_back({chi, Integer(e)});
    }
    ThetaProduct prod(g, n, std::move(pt));
    if (!check_family(prod, n).ok) return prod;
  }
  throw std::runtime_error("no failing family found");
}

AbelianTower random_tower(Rng& rng, long n) {
  const CycloField field(n);
  const auto subgroups = unit_subgroups(n);
  auto subgroups_of = [&](const std::vector<long>& h) {
    std::vector<std::vector<long>> out;
    for (const auto& s : subgroups)
      if (std::includes(h.begin(), h.end(), s.begin(), s.end())) out.push_back(s);
    return out;
  };
  auto random_integral = [&]() {
    std::vector<Rational> c;
    for (long i = 0; i < field.degree(); ++i) c.emplace_back(rng.integer(-2, 2));
    return CycloElem(field, std::move(c));
  };
  auto sorted = [](std::vector<long> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const auto base = rng.pick(subgroups);
    const auto mid = rng.pick(subgroups_of(base));
    const auto tops = subgroups_of(mid);
    const auto top = rng.pick(tops);
    std::optional<CycloElem> x, y;
    for (int i = 0; i < 20 && !x; ++i) {
      CycloElem c = conjugate_sum(random_integral(), mid);
      if (sorted(stabilizer(c, base)) == mid) x = c;
    }
    for (int i = 0; i < 20 && !y; ++i) {
      CycloElem c = conjugate_sum(random_integral(), top);
      if (sorted(stabilizer(c, mid)) == top) y = c;
    }
    if (x && y) return AbelianTower(n, base, mid, *x, *y);
  }
  throw std::runtime_error("no random tower found for n = " + std::to_string(n));
}

}  // namespace stheta
