#include "stheta/symplectic.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <sstream>
#include <stdexcept>

namespace stheta {

// ---------------------------------------------------------------------------
// IntMatrix

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Integer(0)) {}

IntMatrix::IntMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long v : row) data_.emplace_back(v);
  }
}

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
  if (cols_ != o.rows_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Integer& a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

IntMatrix IntMatrix::scaled(const Integer& c) const {
  IntMatrix r = *this;
  for (auto& x : r.data_) x *= c;
  return r;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix r(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

IntMatrix IntMatrix::mod(const Integer& m) const {
  IntMatrix r = *this;
  for (auto& x : r.data_) x = stheta::mod(x, m);
  return r;
}

IntMatrix IntMatrix::block(std::size_t i, std::size_t j, std::size_t r, std::size_t c) const {
  if (i + r > rows_ || j + c > cols_) throw std::out_of_range("block outside matrix");
  IntMatrix b(r, c);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t d = 0; d < c; ++d) b(a, d) = (*this)(i + a, j + d);
  return b;
}

RationalMatrix IntMatrix::to_rational() const {
  RationalMatrix r(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) r(i, j) = Rational((*this)(i, j));
  return r;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ",[" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? "," : "") << (*this)(i, j).get_str();
    out << "]";
  }
  out << "]";
  return out.str();
}

IntMatrix form_J(std::size_t g) {
  IntMatrix j(2 * g, 2 * g);
  for (std::size_t i = 0; i < g; ++i) {
    j(i, g + i) = -1;
    j(g + i, i) = 1;
  }
  return j;
}

// ---------------------------------------------------------------------------
// SympMatrix

SympMatrix::SympMatrix(IntMatrix entries, Integer modulus) : modulus_(std::move(modulus)) {
  if (entries.rows() != entries.cols() || entries.rows() == 0 || entries.rows() % 2 != 0)
    throw std::invalid_argument("symplectic matrix must be square of even positive size");
  if (modulus_ < 0) throw std::invalid_argument("modulus must be nonnegative");
  entries_ = modulus_ > 0 ? entries.mod(modulus_) : std::move(entries);
}

SympMatrix SympMatrix::operator*(const SympMatrix& other) const {
  if (g() != other.g()) throw std::invalid_argument("genus mismatch in product");
  Integer m;
  mpz_gcd(m.get_mpz_t(), modulus_.get_mpz_t(), other.modulus_.get_mpz_t());
  SympMatrix r(entries_ * other.entries_, m);
  if (nu_ && other.nu_) r.nu_ = m > 0 ? stheta::mod(*nu_ * *other.nu_, m) : *nu_ * *other.nu_;
  return r;
}

SympMatrix SympMatrix::reduced(const Integer& m) const {
  if (m <= 0) throw std::invalid_argument("reduction modulus must be positive");
  if (modulus_ != 0 && modulus_ % m != 0)
    throw std::invalid_argument("cannot reduce mod " + m.get_str() + " from mod " + modulus_.get_str());
  SympMatrix r(entries_, m);
  if (nu_) r.nu_ = stheta::mod(*nu_, m);
  return r;
}

SympMatrix SympMatrix::inverse() const {
  auto nu = sympl_multiplier(*this);
  if (!nu) throw std::domain_error("matrix is not in GSp");
  Integer nu_inv;
  if (modulus_ == 0) {
    nu_inv = *nu;  // nu = +-1 over Z
  } else {
    nu_inv = *inverse_mod(*nu, modulus_);
  }
  const IntMatrix j = form_J(g());
  // J^{-1} = -J
  IntMatrix inv = (j * entries_.transpose() * j).scaled(-nu_inv);
  SympMatrix r(std::move(inv), modulus_);
  r.nu_ = nu_inv;
  return r;
}

std::optional<Integer> sympl_multiplier(const SympMatrix& m) {
  if (m.nu_) return m.nu_;
  const std::size_t g = m.g();
  const IntMatrix j = form_J(g);
  IntMatrix t = m.entries_.transpose() * j * m.entries_;
  if (m.modulus_ > 0) t = t.mod(m.modulus_);
  Integer nu = t(g, 0);
  IntMatrix expect = j.scaled(nu);
  if (m.modulus_ > 0) expect = expect.mod(m.modulus_);
  if (!(t == expect)) return std::nullopt;
  if (m.modulus_ == 0) {
    if (nu != 1 && nu != -1) return std::nullopt;
  } else if (m.modulus_ > 1 && !inverse_mod(nu, m.modulus_)) {
    return std::nullopt;
  }
  m.nu_ = nu;
  return nu;
}

SympMatrix iota(const Integer& a, std::size_t g, const Integer& modulus) {
  if (g == 0) throw std::invalid_argument("genus must be positive");
  Integer a_inv;
  if (modulus == 0) {
    if (a != 1 && a != -1) throw std::invalid_argument("iota over Z needs a = +-1");
    a_inv = a;
  } else {
    auto inv = inverse_mod(a, modulus);
    if (!inv) throw std::invalid_argument(a.get_str() + " is not a unit mod " + modulus.get_str());
    a_inv = *inv;
  }
  IntMatrix m = IntMatrix::identity(2 * g);
  for (std::size_t i = g; i < 2 * g; ++i) m(i, i) = a_inv;
  return SympMatrix(std::move(m), modulus);
}

namespace {

bool even_diagonals(const SympMatrix& m, const Integer& level) {
  const IntMatrix ac = m.A().transpose() * m.C();
  const IntMatrix bd = m.B().transpose() * m.D();
  for (std::size_t i = 0; i < m.g(); ++i) {
    Integer x = level > 0 ? mod(ac(i, i), level) : ac(i, i);
    Integer y = level > 0 ? mod(bd(i, i), level) : bd(i, i);
    if (x % 2 != 0 || y % 2 != 0) return false;
  }
  return true;
}

}  // namespace

bool membership(const SympMatrix& m, Group which, const Integer& level) {
  switch (which) {
    case Group::Sp: {
      auto nu = sympl_multiplier(m);
      if (!nu) return false;
      return m.modulus() > 0 ? mod(*nu - 1, m.modulus()) == 0 : *nu == 1;
    }
    case Group::Gamma: {
      if (level <= 0) throw std::invalid_argument("level must be positive");
      if (m.modulus() != 0) return false;
      if (!membership(m, Group::Sp, 0)) return false;
      const IntMatrix diff = m.entries() - IntMatrix::identity(2 * m.g());
      return diff.mod(level) == IntMatrix(2 * m.g(), 2 * m.g());
    }
    case Group::G: {
      if (level <= 0) throw std::invalid_argument("level must be positive");
      if (m.modulus() != 0 && m.modulus() % level != 0) return false;
      SympMatrix r = m.reduced(level);
      if (!sympl_multiplier(r)) return false;
      // For odd levels every residue has representatives of both parities.
      if (level % 2 != 0) return true;
      return even_diagonals(r, level);
    }
  }
  return false;
}

SympMatrix special_gamma(GammaKind kind, std::size_t j, std::size_t k, const Integer& level, std::size_t g) {
  if (g == 0) throw std::invalid_argument("genus must be positive");
  if (j < 1 || j > g || k < 1 || k > g)
    throw std::out_of_range("special_gamma index out of range: (" + std::to_string(j) + "," + std::to_string(k) +
                            ") for g=" + std::to_string(g));
  if (level <= 0) throw std::invalid_argument("level must be positive");
  --j;
  --k;
  IntMatrix a0(g, g);
  a0(j, k) = 1;
  a0(k, j) = 1;
  const IntMatrix na = a0.scaled(level);
  const IntMatrix id = IntMatrix::identity(g);
  IntMatrix m = IntMatrix::identity(2 * g);
  auto put = [&](std::size_t bi, std::size_t bj, const IntMatrix& b) {
    for (std::size_t a = 0; a < g; ++a)
      for (std::size_t c = 0; c < g; ++c) m(bi * g + a, bj * g + c) = b(a, c);
  };
  switch (kind) {
    case GammaKind::upper:
      put(0, 1, na);
      break;
    case GammaKind::lower:
      put(1, 0, na);
      break;
    case GammaKind::mixed:
      put(0, 0, id - na);
      put(0, 1, na);
      put(1, 0, na.scaled(-1));
      put(1, 1, id + na);
      break;
    case GammaKind::block: {
      if (j == k) throw std::invalid_argument("block generator needs j != k");
      IntMatrix u = id;
      u(j, k) = level;
      IntMatrix v = id;
      v(k, j) = -level;
      put(0, 0, u);
      put(1, 1, v);
      break;
    }
  }
  return SympMatrix(std::move(m), 0);
}

std::string to_string(GammaKind kind) {
  switch (kind) {
    case GammaKind::upper: return "upper";
    case GammaKind::lower: return "lower";
    case GammaKind::mixed: return "mixed";
    case GammaKind::block: return "block";
  }
  return "?";
}

std::optional<GammaKind> parse_gamma_kind(std::string_view name) {
  if (name == "upper") return GammaKind::upper;
  if (name == "lower") return GammaKind::lower;
  if (name == "mixed") return GammaKind::mixed;
  if (name == "block") return GammaKind::block;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Siegel space

bool is_positive_definite(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows();
  if (n == 0 || m.cols() != n) return false;
  Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    double d = m(j, j);
    for (Eigen::Index k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > kPivotThreshold)) return false;
    l(j, j) = std::sqrt(d);
    for (Eigen::Index i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (Eigen::Index k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

SiegelPoint::SiegelPoint(Eigen::MatrixXcd z) : z_(std::move(z)) {
  if (z_.rows() == 0 || z_.rows() != z_.cols()) throw std::invalid_argument("Siegel point must be square");
  const double asym = (z_ - z_.transpose()).cwiseAbs().maxCoeff();
  if (!(asym < kSymmetryTolerance)) throw std::invalid_argument("Siegel point is not symmetric");
  if (!is_positive_definite(z_.imag())) throw std::invalid_argument("Im Z is not positive definite");
}

double SiegelPoint::min_imag_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(z_.imag(), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Eigen::MatrixXd to_double(const IntMatrix& m) {
  Eigen::MatrixXd r(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).get_d();
  return r;
}

SiegelPoint act_siegel(const SympMatrix& m, const SiegelPoint& z) {
  if (m.g() != z.g()) throw std::invalid_argument("genus mismatch in act_siegel");
  if (m.modulus() != 0 || !membership(m, Group::Sp, 0))
    throw std::invalid_argument("act_siegel needs a matrix in Sp_2g(Z)");
  const Eigen::MatrixXcd a = to_double(m.A()).cast<std::complex<double>>();
  const Eigen::MatrixXcd b = to_double(m.B()).cast<std::complex<double>>();
  const Eigen::MatrixXcd c = to_double(m.C()).cast<std::complex<double>>();
  const Eigen::MatrixXcd d = to_double(m.D()).cast<std::complex<double>>();
  const Eigen::MatrixXcd den = c * z.Z() + d;
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(den);
  if (!(lu.rcond() >= kRcondThreshold)) throw std::domain_error("CZ+D is numerically singular");
  // W = (AZ+B) den^{-1}, via den^T W^T = (AZ+B)^T
  Eigen::PartialPivLU<Eigen::MatrixXcd> lut(den.transpose());
  Eigen::MatrixXcd w = lut.solve((a * z.Z() + b).transpose()).transpose();
  w = (w + w.transpose()).eval() * 0.5;
  return SiegelPoint(std::move(w));
}

}  // namespace stheta
