#include "stheta/primgen.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace stheta {

namespace {

std::vector<long> normalized(std::vector<long> h, long n) {
  for (auto& t : h) t = ((t % n) + n) % n;
  std::sort(h.begin(), h.end());
  h.erase(std::unique(h.begin(), h.end()), h.end());
  return h;
}

bool subset_of(const std::vector<long>& a, const std::vector<long>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

bool nonzero_integer(long v) { return v != 0; }

}  // namespace

AbelianTower::AbelianTower(long conductor, std::vector<long> base_h, std::vector<long> mid_h, CycloElem x,
                           CycloElem y)
    : n_(conductor), x_(std::move(x)), y_(std::move(y)) {
  if (n_ < 1) throw std::invalid_argument("conductor must be positive");
  if (x_.order() != n_ || y_.order() != n_) throw std::invalid_argument("x and y must lie in Q(zeta_n)");
  base_h_ = normalized(std::move(base_h), n_);
  mid_h_ = normalized(std::move(mid_h), n_);
  if (!is_unit_subgroup(base_h_, n_) || !is_unit_subgroup(mid_h_, n_))
    throw std::invalid_argument("tower groups must be subgroups of the units mod n");
  if (!subset_of(mid_h_, base_h_)) throw std::invalid_argument("mid group is not inside the base group");
  if (normalized(stabilizer(x_, base_h_), n_) != mid_h_)
    throw std::invalid_argument("mid group is not the stabilizer of x in the base group");
  top_h_ = normalized(stabilizer(y_, mid_h_), n_);

  // coset representatives of mid_h / top_h
  std::set<long> covered;
  for (long t : mid_h_) {
    if (covered.count(t)) continue;
    coset_reps_.push_back(t);
    for (long u : top_h_) covered.insert((t * u) % n_);
  }
}

bool AbelianTower::in_base(const CycloElem& e) const {
  return std::all_of(base_h_.begin(), base_h_.end(), [&](long t) { return galois_conjugate(e, t) == e; });
}

bool AbelianTower::in_top(const CycloElem& e) const {
  return std::all_of(top_h_.begin(), top_h_.end(), [&](long t) { return galois_conjugate(e, t) == e; });
}

CycloElem AbelianTower::trace_to_mid(const CycloElem& e) const {
  if (!in_top(e)) throw std::invalid_argument("element is not in L");
  return conjugate_sum(e, coset_reps_);
}

CycloElem AbelianTower::norm_to_mid(const CycloElem& e) const {
  if (!in_top(e)) throw std::invalid_argument("element is not in L");
  return conjugate_product(e, coset_reps_);
}

long AbelianTower::degree_over_base(const CycloElem& e) const {
  return static_cast<long>(base_h_.size() / stabilizer(e, base_h_).size());
}

CycloElem combine_trace(const AbelianTower& t, const CycloElem& a, const CycloElem& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("a and b must be nonzero");
  if (!t.in_base(a) || !t.in_base(b)) throw std::invalid_argument("a and b must lie in the base field K");
  const CycloElem inner = t.y() * Rational(t.ell()) - t.trace_to_mid(t.y());
  return a * t.x() + b * inner;
}

CycloElem combine_norm(const AbelianTower& t, long a, long b, long c, long d, long n, long m) {
  if (!nonzero_integer(a) || !nonzero_integer(b) || !nonzero_integer(c) || !nonzero_integer(d) ||
      !nonzero_integer(n) || !nonzero_integer(m))
    throw std::invalid_argument("a, b, c, d, n, m must be nonzero");
  if (!(std::abs(a) > 2 * std::abs(b)) || !(std::abs(c) > 2 * std::abs(d)))
    throw std::invalid_argument("need 2 < |a/b| and 2 < |c/d|");
  if (!t.x().is_integral() || !t.y().is_integral())
    throw std::invalid_argument("x and y must be algebraic integers");
  const CycloField& f = t.x().field();
  const CycloElem u = t.x() * Rational(a) + f.rational(b);
  const CycloElem v = t.y() * Rational(c) + f.rational(d);
  return u.pow(n) * v.pow(-m * t.ell()) * t.norm_to_mid(v.pow(m));
}

bool is_primitive(const CycloElem& e, const AbelianTower& t) {
  return e.order() == t.conductor() && t.in_top(e) && t.degree_over_base(e) == t.degree();
}

std::vector<long> generated_subgroup(std::span<const long> gens, long n) {
  std::set<long> h{1 % n};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<long> cur(h.begin(), h.end());
    for (long x : cur)
      for (long g : gens) {
        long y = ((x * g) % n + n) % n;
        if (h.insert(y).second) grew = true;
      }
  }
  return {h.begin(), h.end()};
}

std::vector<std::vector<long>> unit_subgroups(long n) {
  std::vector<long> units;
  for (long t = 1; t <= n; ++t)
    if (std::gcd(t, n) == 1) units.push_back(t % n);
  std::set<std::vector<long>> found;
  // Unit groups for the conductors used here need at most three generators.
  for (std::size_t i = 0; i < units.size(); ++i)
    for (std::size_t j = i; j < units.size(); ++j)
      for (std::size_t k = j; k < units.size(); ++k) {
        const long g[3] = {units[i], units[j], units[k]};
        found.insert(generated_subgroup(g, n));
      }
  std::vector<std::vector<long>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.size() < b.size(); });
  return out;
}

}  // namespace stheta
