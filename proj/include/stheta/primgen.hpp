// Primitive generators for abelian towers K subset K(x) subset L = K(x, y),
// all realized inside one cyclotomic field Q(zeta_n). Subfields are given by
// the subgroups of (Z/n)^x that fix them.
#pragma once

#include <span>
#include <vector>

#include "stheta/exact.hpp"

namespace stheta {

class AbelianTower {
 public:
  /// base_h fixes K, mid_h fixes K(x). Throws std::invalid_argument unless
  /// both are unit subgroups mod n with mid_h inside base_h, x and y lie in
  /// Q(zeta_n), and mid_h is exactly the stabilizer of x in base_h.
  AbelianTower(long conductor, std::vector<long> base_h, std::vector<long> mid_h, CycloElem x, CycloElem y);

  long conductor() const { return n_; }
  const std::vector<long>& base_h() const { return base_h_; }
  const std::vector<long>& mid_h() const { return mid_h_; }
  /// Subgroup of mid_h fixing y, i.e. the group fixing L.
  const std::vector<long>& top_h() const { return top_h_; }
  const CycloElem& x() const { return x_; }
  const CycloElem& y() const { return y_; }
  /// [L : K(x)].
  long ell() const { return static_cast<long>(mid_h_.size() / top_h_.size()); }
  /// [L : K].
  long degree() const { return static_cast<long>(base_h_.size() / top_h_.size()); }

  /// Tr_{L/K(x)} and N_{L/K(x)} for e in L, summed over coset
  /// representatives of mid_h / top_h. Throws std::invalid_argument when e
  /// is not in L.
  CycloElem trace_to_mid(const CycloElem& e) const;
  CycloElem norm_to_mid(const CycloElem& e) const;

  bool in_base(const CycloElem& e) const;
  bool in_top(const CycloElem& e) const;
  /// [K(e) : K].
  long degree_over_base(const CycloElem& e) const;

 private:
  long n_;
  std::vector<long> base_h_;
  std::vector<long> mid_h_;
  std::vector<long> top_h_;
  std::vector<long> coset_reps_;
  CycloElem x_;
  CycloElem y_;
};

/// a x + b (ell y - Tr_{L/K(x)}(y)) for nonzero a, b in K.
CycloElem combine_trace(const AbelianTower& t, const CycloElem& a, const CycloElem& b);

/// (a x + b)^n (c y + d)^(-m ell) N_{L/K(x)}((c y + d)^m) for nonzero
/// integers with 2 < |a/b|, 2 < |c/d|, x and y algebraic integers.
CycloElem combine_norm(const AbelianTower& t, long a, long b, long c, long d, long n, long m);

/// e in L with [K(e) : K] = [L : K].
bool is_primitive(const CycloElem& e, const AbelianTower& t);

/// Residues of the subgroup of (Z/n)^x generated by gens, sorted.
std::vector<long> generated_subgroup(std::span<const long> gens, long n);

/// All subgroups of (Z/n)^x, each sorted, in increasing size.
std::vector<std::vector<long>> unit_subgroups(long n);

}  // namespace stheta
