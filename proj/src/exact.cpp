#include "stheta/exact.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stheta {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
    return make_rational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor_of(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

Rational frac_part(const Rational& q) { return q - Rational(floor_of(q)); }

Integer mod(const Integer& a, const Integer& m) {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

std::optional<Integer> inverse_mod(const Integer& a, const Integer& m) {
  if (m <= 0) throw std::invalid_argument("modulus must be positive");
  if (m == 1) return Integer(0);
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) return std::nullopt;
  return mod(inv, m);
}

// ---------------------------------------------------------------------------
// RootOfUnity

RootOfUnity::RootOfUnity(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  q_ = frac_part(c);
}

std::complex<double> RootOfUnity::value() const {
  // Reduce to [-1/2, 1/2) first so the angle is as small as possible.
  Rational q = q_ >= Rational(1, 2) ? q_ - 1 : q_;
  double angle = 2.0 * std::numbers::pi * q.get_d();
  return {std::cos(angle), std::sin(angle)};
}

RootOfUnity RootOfUnity::operator*(const RootOfUnity& other) const {
  return RootOfUnity(q_ + other.q_);
}

RootOfUnity RootOfUnity::inverse() const { return RootOfUnity(-q_); }

RootOfUnity RootOfUnity::pow(long k) const { return RootOfUnity(q_ * k); }

// ---------------------------------------------------------------------------
// Cyclotomic tables

namespace {

using Poly = std::vector<Integer>;  // lowest degree first

void trim(Poly& p) {
  while (p.size() > 1 && p.back() == 0) p.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly c(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  return c;
}

// Exact quotient by a monic divisor; the remainder must vanish.
Poly poly_div_exact(Poly num, const Poly& den) {
  trim(num);
  const std::size_t dd = den.size() - 1;
  if (num.size() - 1 < dd) throw std::logic_error("cyclotomic division degree");
  Poly q(num.size() - dd, Integer(0));
  for (std::size_t k = num.size(); k-- > dd;) {
    Integer c = num[k];
    q[k - dd] = c;
    if (c == 0) continue;
    for (std::size_t i = 0; i <= dd; ++i) num[k - dd + i] -= c * den[i];
  }
  for (std::size_t i = 0; i < dd; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic division not exact");
  return q;
}

Poly cyclotomic(long n) {
  Poly xn(static_cast<std::size_t>(n) + 1, Integer(0));
  xn[0] = -1;
  xn[n] = 1;
  Poly divisor{Integer(1)};
  for (long d = 1; d < n; ++d)
    if (n % d == 0) divisor = poly_mul(divisor, cyclotomic(d));
  return poly_div_exact(xn, divisor);
}

long euler_phi(long n) {
  long result = n;
  long m = n;
  for (long p = 2; p * p <= m; ++p) {
    if (m % p != 0) continue;
    while (m % p == 0) m /= p;
    result -= result / p;
  }
  if (m > 1) result -= result / m;
  return result;
}

long mod_long(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

}  // namespace

struct CycloField::Tables {
  long n = 0;
  long phi = 0;
  Poly poly;
  std::vector<long> units;
  // power[k] = zeta^k on the power basis, k in [0, n).
  std::vector<Poly> power;

  // Reduce a coefficient buffer indexed by exponent mod n.
  std::vector<Rational> reduce(const std::vector<Rational>& buf) const {
    std::vector<Rational> out(static_cast<std::size_t>(phi), Rational(0));
    for (long k = 0; k < n; ++k) {
      const Rational& c = buf[static_cast<std::size_t>(k)];
      if (c == 0) continue;
      if (k < phi) {
        out[static_cast<std::size_t>(k)] += c;
        continue;
      }
      const Poly& row = power[static_cast<std::size_t>(k)];
      for (long i = 0; i < phi; ++i)
        if (row[static_cast<std::size_t>(i)] != 0) out[static_cast<std::size_t>(i)] += c * row[static_cast<std::size_t>(i)];
    }
    return out;
  }
};

CycloField::CycloField(long order) {
  if (order < 1) throw std::invalid_argument("cyclotomic order must be positive");
  auto t = std::make_shared<Tables>();
  t->n = order;
  t->phi = euler_phi(order);
  t->poly = cyclotomic(order);
  for (long k = 1; k <= order; ++k)
    if (std::gcd(k, order) == 1) t->units.push_back(k % order == 0 ? 1 : k);
  if (order == 1) t->units = {1};
  const auto phi = static_cast<std::size_t>(t->phi);
  t->power.resize(static_cast<std::size_t>(order));
  Poly cur(phi, Integer(0));
  cur[0] = 1;
  for (long k = 0; k < order; ++k) {
    t->power[static_cast<std::size_t>(k)] = cur;
    // multiply by x and reduce with the monic cyclotomic polynomial
    Integer top = cur[phi - 1];
    for (std::size_t i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (std::size_t i = 0; i < phi; ++i) cur[i] -= top * t->poly[i];
  }
  tables_ = std::move(t);
}

long CycloField::order() const { return tables_->n; }
long CycloField::degree() const { return tables_->phi; }
const std::vector<Integer>& CycloField::cyclotomic_polynomial() const { return tables_->poly; }
const std::vector<long>& CycloField::units() const { return tables_->units; }

CycloElem CycloField::zero() const {
  return CycloElem(*this, std::vector<Rational>(static_cast<std::size_t>(degree()), Rational(0)));
}

CycloElem CycloField::one() const { return rational(1); }

CycloElem CycloField::rational(const Rational& q) const {
  std::vector<Rational> c(static_cast<std::size_t>(degree()), Rational(0));
  c[0] = q;
  return CycloElem(*this, std::move(c));
}

CycloElem CycloField::zeta(long k) const {
  const Poly& row = tables_->power[static_cast<std::size_t>(mod_long(k, order()))];
  std::vector<Rational> c(row.begin(), row.end());
  return CycloElem(*this, std::move(c));
}

CycloElem CycloField::from_powers(std::span<const Rational> coeffs) const {
  std::vector<Rational> buf(static_cast<std::size_t>(order()), Rational(0));
  for (std::size_t j = 0; j < coeffs.size(); ++j)
    buf[static_cast<std::size_t>(mod_long(static_cast<long>(j), order()))] += coeffs[j];
  return CycloElem(*this, tables_->reduce(buf));
}

// ---------------------------------------------------------------------------
// CycloElem

CycloElem::CycloElem(CycloField field, std::vector<Rational> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (static_cast<long>(coeffs_.size()) != field_.degree())
    throw std::invalid_argument("coefficient vector length must equal phi(n)");
  for (auto& c : coeffs_) c.canonicalize();
}

bool CycloElem::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
}

std::optional<Rational> CycloElem::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i)
    if (coeffs_[i] != 0) return std::nullopt;
  return coeffs_[0];
}

bool CycloElem::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c.get_den() == 1; });
}

namespace {
void require_same_field(const CycloElem& a, const CycloElem& b) {
  if (a.order() != b.order())
    throw std::invalid_argument("cyclotomic order mismatch: " + std::to_string(a.order()) + " vs " +
                                std::to_string(b.order()));
}
}  // namespace

CycloElem CycloElem::operator-() const {
  CycloElem r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

CycloElem& CycloElem::operator+=(const CycloElem& other) {
  require_same_field(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

CycloElem& CycloElem::operator-=(const CycloElem& other) {
  require_same_field(*this, other);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

CycloElem& CycloElem::operator*=(const CycloElem& other) {
  require_same_field(*this, other);
  const long n = order();
  std::vector<Rational> buf(static_cast<std::size_t>(n), Rational(0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < other.coeffs_.size(); ++j) {
      if (other.coeffs_[j] == 0) continue;
      buf[(i + j) % static_cast<std::size_t>(n)] += coeffs_[i] * other.coeffs_[j];
    }
  }
  coeffs_ = field_.tables_->reduce(buf);
  return *this;
}

CycloElem& CycloElem::operator*=(const Rational& c) {
  for (auto& x : coeffs_) x *= c;
  return *this;
}

CycloElem CycloElem::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero in cyclotomic field");
  // a^{-1} = (product of the other conjugates) / N(a)
  CycloElem others = field_.one();
  for (long t : field_.units())
    if (t != 1) others *= galois_conjugate(*this, t);
  auto norm = (others * *this).as_rational();
  if (!norm || *norm == 0) throw std::logic_error("norm is not a nonzero rational");
  return others * Rational(1 / *norm);
}

CycloElem CycloElem::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  CycloElem result = field_.one();
  CycloElem base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

bool CycloElem::operator==(const CycloElem& other) const {
  return order() == other.order() && coeffs_ == other.coeffs_;
}

std::string CycloElem::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!first) out << " + ";
    first = false;
    out << coeffs_[i].get_str();
    if (i > 0) out << "*z" << order() << "^" << i;
  }
  if (first) out << "0";
  return out.str();
}

// ---------------------------------------------------------------------------
// Operations

CycloElem cyclo_mul(const CycloElem& a, const CycloElem& b) { return a * b; }

CycloElem galois_conjugate(const CycloElem& a, long t) {
  const long n = a.order();
  if (std::gcd(mod_long(t, n), n) != 1)
    throw std::invalid_argument("galois exponent " + std::to_string(t) + " not coprime to " + std::to_string(n));
  std::vector<Rational> buf(static_cast<std::size_t>(n), Rational(0));
  auto c = a.coeffs();
  for (std::size_t j = 0; j < c.size(); ++j)
    if (c[j] != 0) buf[static_cast<std::size_t>(mod_long(static_cast<long>(j) * t, n))] += c[j];
  return a.field().from_powers(buf);
}

std::complex<double> cyclo_embed(const CycloElem& a, long k, double precision) {
  const long n = a.order();
  if (std::gcd(mod_long(k, n), n) != 1)
    throw std::invalid_argument("embedding exponent not coprime to the order");
  if (!(precision > 0)) throw std::invalid_argument("precision must be positive");
  auto c = a.coeffs();
  double re = 0, im = 0, scale = 0;
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (c[j] == 0) continue;
    double cj = c[j].get_d();
    double angle = 2.0 * std::numbers::pi * static_cast<double>(mod_long(static_cast<long>(j) * k, n)) /
                   static_cast<double>(n);
    re += cj * std::cos(angle);
    im += cj * std::sin(angle);
    scale += std::abs(cj);
  }
  // Each term carries a few ulps from conversion, cos/sin and accumulation.
  const double floor = 8.0 * static_cast<double>(c.size() + 1) * std::numeric_limits<double>::epsilon() * scale;
  if (floor >= precision)
    throw std::invalid_argument("requested precision is below the double-precision floor for this element");
  return {re, im};
}

CycloElem conjugate_sum(const CycloElem& a, std::span<const long> exponents) {
  CycloElem acc = a.field().zero();
  for (long t : exponents) acc += galois_conjugate(a, t);
  return acc;
}

CycloElem conjugate_product(const CycloElem& a, std::span<const long> exponents) {
  CycloElem acc = a.field().one();
  for (long t : exponents) acc *= galois_conjugate(a, t);
  return acc;
}

bool is_unit_subgroup(std::span<const long> exps, long n) {
  if (exps.empty()) return false;
  std::set<long> set;
  for (long t : exps) {
    long r = mod_long(t, n);
    if (std::gcd(r, n) != 1) return false;
    set.insert(n == 1 ? 0 : r);
  }
  for (long x : set)
    for (long y : set)
      if (!set.count(n == 1 ? 0 : (x * y) % n)) return false;
  return true;
}

CycloElem rel_trace_norm(const CycloElem& a, std::span<const long> subgroup, TraceNorm mode) {
  if (!is_unit_subgroup(subgroup, a.order()))
    throw std::invalid_argument("exponent set is not a subgroup of the units");
  // Deduplicate residues so that {1, 26} mod 25 counts once.
  std::set<long> uniq;
  for (long t : subgroup) uniq.insert(mod_long(t, a.order()));
  std::vector<long> exps(uniq.begin(), uniq.end());
  return mode == TraceNorm::trace ? conjugate_sum(a, exps) : conjugate_product(a, exps);
}

Rational absolute_norm(const CycloElem& a) {
  auto q = conjugate_product(a, a.field().units()).as_rational();
  if (!q) throw std::logic_error("absolute norm is not rational");
  return *q;
}

long degree_over_rationals(const CycloElem& a) {
  // Incremental echelon form of 1, a, a^2, ... ; the first dependent power
  // gives the degree.
  const auto dim = static_cast<std::size_t>(a.field().degree());
  std::vector<std::vector<Rational>> rows;
  std::vector<std::size_t> pivots;
  CycloElem power = a.field().one();
  for (std::size_t d = 0; d <= dim; ++d) {
    std::vector<Rational> v(power.coeffs().begin(), power.coeffs().end());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational f = v[pivots[r]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < dim; ++i) v[i] -= f * rows[r][i];
    }
    auto it = std::find_if(v.begin(), v.end(), [](const Rational& x) { return x != 0; });
    if (it == v.end()) return static_cast<long>(d);
    const auto piv = static_cast<std::size_t>(it - v.begin());
    const Rational inv = 1 / v[piv];
    for (auto& x : v) x *= inv;
    rows.push_back(std::move(v));
    pivots.push_back(piv);
    power *= a;
  }
  throw std::logic_error("degree exceeds field degree");
}

std::vector<long> stabilizer(const CycloElem& a, std::span<const long> group) {
  std::vector<long> out;
  for (long t : group)
    if (galois_conjugate(a, t) == a) out.push_back(t);
  return out;
}

// ---------------------------------------------------------------------------
// RationalMatrix

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Rational(0)) {}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rational& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  RationalMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

RationalMatrix RationalMatrix::inverse() const {
  if (rows_ != cols_) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = rows_;
  RationalMatrix a = *this;
  RationalMatrix inv = identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a(piv, col) == 0) ++piv;
    if (piv == n) throw std::domain_error("singular rational matrix");
    if (piv != col)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(inv(piv, j), inv(col, j));
      }
    const Rational f = 1 / a(col, col);
    for (std::size_t j = 0; j < n; ++j) {
      a(col, j) *= f;
      inv(col, j) *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || a(i, col) == 0) continue;
      const Rational g = a(i, col);
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= g * a(col, j);
        inv(i, j) -= g * inv(col, j);
      }
    }
  }
  return inv;
}

bool RationalMatrix::is_integral() const {
  return std::all_of(data_.begin(), data_.end(), [](const Rational& q) { return q.get_den() == 1; });
}

}  // namespace stheta
