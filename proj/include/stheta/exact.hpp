// Exact arithmetic: rationals, abstract roots of unity e(q), residues and the
// cyclotomic fields Q(zeta_n) on their power basis.
#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace stheta {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical num/den with den > 0. Throws std::domain_error on den == 0.
Rational make_rational(const Integer& num, const Integer& den);

/// Parses "a", "-a" or "a/b" (b != 0). Throws std::invalid_argument.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Integer floor_of(const Rational& q);
/// q - floor(q), in [0, 1).
Rational frac_part(const Rational& q);

/// Nonnegative remainder of a modulo m (m > 0).
Integer mod(const Integer& a, const Integer& m);
std::optional<Integer> inverse_mod(const Integer& a, const Integer& m);

/// The value e(q) = exp(2 pi i q), kept as the exponent q reduced mod 1.
class RootOfUnity {
 public:
  RootOfUnity() = default;
  explicit RootOfUnity(const Rational& q);

  const Rational& exponent() const { return q_; }
  bool is_one() const { return q_ == 0; }
  std::complex<double> value() const;

  RootOfUnity operator*(const RootOfUnity& other) const;
  RootOfUnity inverse() const;
  RootOfUnity pow(long k) const;

  bool operator==(const RootOfUnity& other) const { return q_ == other.q_; }

 private:
  Rational q_{0};
};

class CycloElem;

/// The cyclotomic field Q(zeta_n). Cheap to copy; the reduction tables are
/// shared and immutable.
class CycloField {
 public:
  explicit CycloField(long order);

  long order() const;
  long degree() const;
  /// Integer coefficients of the n-th cyclotomic polynomial, lowest first.
  const std::vector<Integer>& cyclotomic_polynomial() const;
  /// Exponents t in [1, n) with gcd(t, n) = 1.
  const std::vector<long>& units() const;

  CycloElem zero() const;
  CycloElem one() const;
  CycloElem rational(const Rational& q) const;
  /// zeta_n^k for any integer k.
  CycloElem zeta(long k = 1) const;
  /// Sum of c_j zeta^j for j = 0..coeffs.size()-1 (any length; reduced).
  CycloElem from_powers(std::span<const Rational> coeffs) const;

  bool operator==(const CycloField& other) const { return order() == other.order(); }

  struct Tables;

 private:
  friend class CycloElem;
  std::shared_ptr<const Tables> tables_;
};

/// An element of Q(zeta_n) on the power basis 1, zeta, ..., zeta^(phi(n)-1).
class CycloElem {
 public:
  CycloElem(CycloField field, std::vector<Rational> coeffs);

  const CycloField& field() const { return field_; }
  long order() const { return field_.order(); }
  std::span<const Rational> coeffs() const { return coeffs_; }

  bool is_zero() const;
  /// Some(q) when the element is the rational q.
  std::optional<Rational> as_rational() const;
  /// Coefficients integral; Z[zeta_n] is the full ring of integers.
  bool is_integral() const;

  CycloElem operator-() const;
  CycloElem& operator+=(const CycloElem& other);
  CycloElem& operator-=(const CycloElem& other);
  CycloElem& operator*=(const CycloElem& other);
  CycloElem& operator*=(const Rational& c);

  friend CycloElem operator+(CycloElem a, const CycloElem& b) { return a += b; }
  friend CycloElem operator-(CycloElem a, const CycloElem& b) { return a -= b; }
  friend CycloElem operator*(CycloElem a, const CycloElem& b) { return a *= b; }
  friend CycloElem operator*(CycloElem a, const Rational& c) { return a *= c; }
  friend CycloElem operator*(const Rational& c, CycloElem a) { return a *= c; }

  /// Throws std::domain_error for zero.
  CycloElem inverse() const;
  CycloElem pow(long k) const;

  bool operator==(const CycloElem& other) const;

  std::string to_string() const;

 private:
  CycloField field_;
  std::vector<Rational> coeffs_;
};

enum class TraceNorm { trace, norm };

CycloElem cyclo_mul(const CycloElem& a, const CycloElem& b);

/// Image under zeta -> zeta^t. Requires gcd(t, n) = 1.
CycloElem galois_conjugate(const CycloElem& a, long t);

/// Complex value under the embedding zeta -> e(k/n), |error| < precision.
/// Throws std::invalid_argument when gcd(k, n) != 1 or when precision is below
/// what double arithmetic can certify for this element.
std::complex<double> cyclo_embed(const CycloElem& a, long k, double precision);

/// Sum or product of the conjugates of a over a subgroup of (Z/nZ)^x given by
/// its exponents. Throws std::invalid_argument if the set is not a subgroup.
CycloElem rel_trace_norm(const CycloElem& a, std::span<const long> subgroup, TraceNorm mode);

/// Sum/product over an arbitrary list of unit exponents (no closure check).
CycloElem conjugate_sum(const CycloElem& a, std::span<const long> exponents);
CycloElem conjugate_product(const CycloElem& a, std::span<const long> exponents);

/// Absolute norm N_{Q(zeta_n)/Q}.
Rational absolute_norm(const CycloElem& a);

/// Degree of the minimal polynomial of a over Q.
long degree_over_rationals(const CycloElem& a);

/// Elements t of group with galois_conjugate(a, t) == a, in group order.
std::vector<long> stabilizer(const CycloElem& a, std::span<const long> group);

/// True when exps is a nonempty subset of (Z/nZ)^x closed under multiplication.
bool is_unit_subgroup(std::span<const long> exps, long n);

/// Dense rational matrix, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator+(const RationalMatrix& other) const;
  RationalMatrix transpose() const;
  /// Throws std::domain_error when singular.
  RationalMatrix inverse() const;
  bool is_integral() const;
  bool operator==(const RationalMatrix& other) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace stheta
