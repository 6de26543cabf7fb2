// Integer 2g x 2g matrices, the form J = [[0,-I],[I,0]], the multiplier nu,
// the groups Sp, Gamma(N), G_N and the action on the Siegel upper half-space.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "stheta/exact.hpp"

namespace stheta {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols);
  IntMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& other) const;
  IntMatrix operator+(const IntMatrix& other) const;
  IntMatrix operator-(const IntMatrix& other) const;
  IntMatrix scaled(const Integer& c) const;
  IntMatrix transpose() const;
  /// Entries replaced by their nonnegative residues mod m (m > 0).
  IntMatrix mod(const Integer& m) const;
  /// Sub-block of size r x c starting at (i, j).
  IntMatrix block(std::size_t i, std::size_t j, std::size_t r, std::size_t c) const;
  RationalMatrix to_rational() const;

  bool operator==(const IntMatrix& other) const = default;
  std::string to_string() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// The matrix J = [[0, -I_g], [I_g, 0]].
IntMatrix form_J(std::size_t g);

/// A 2g x 2g integer matrix, either over Z (modulus 0) or over Z/modulus.
/// Entries are kept reduced to [0, modulus) when modulus > 0. The
/// multiplier nu is cached once verified.
class SympMatrix {
 public:
  /// Throws std::invalid_argument unless entries is square of even size and
  /// modulus >= 0.
  explicit SympMatrix(IntMatrix entries, Integer modulus = 0);

  std::size_t g() const { return entries_.rows() / 2; }
  const IntMatrix& entries() const { return entries_; }
  const Integer& modulus() const { return modulus_; }
  const std::optional<Integer>& nu() const { return nu_; }

  IntMatrix A() const { return entries_.block(0, 0, g(), g()); }
  IntMatrix B() const { return entries_.block(0, g(), g(), g()); }
  IntMatrix C() const { return entries_.block(g(), 0, g(), g()); }
  IntMatrix D() const { return entries_.block(g(), g(), g(), g()); }

  /// Product; the result lives over the gcd of the two moduli (0 = Z).
  SympMatrix operator*(const SympMatrix& other) const;
  /// Same matrix over Z/m. Requires modulus() == 0 or m | modulus().
  SympMatrix reduced(const Integer& m) const;
  /// Inverse in GSp: nu^{-1} J^{-1} tM J. Throws std::domain_error when M is
  /// not in GSp.
  SympMatrix inverse() const;

  bool operator==(const SympMatrix& other) const {
    return modulus_ == other.modulus_ && entries_ == other.entries_;
  }

 private:
  friend std::optional<Integer> sympl_multiplier(const SympMatrix& m);
  IntMatrix entries_;
  Integer modulus_;
  mutable std::optional<Integer> nu_;
};

/// The unit nu with tM J M = nu J (over Z or mod the modulus), or nullopt when
/// M is not in GSp. Caches nu on the matrix.
std::optional<Integer> sympl_multiplier(const SympMatrix& m);

/// iota(a) = diag(I_g, a^{-1} I_g) over Z/modulus. Over Z (modulus 0) only
/// a = +-1 is allowed. Throws std::invalid_argument when a is not a unit.
SympMatrix iota(const Integer& a, std::size_t g, const Integer& modulus);

enum class Group { Sp, Gamma, G };

/// Sp: tMJM = J (over Z, or mod modulus). Gamma: M in Sp_2g(Z) and M = I mod
/// N. G: M mod N in GSp_2g(Z/N) with tAC and tBD having even diagonals.
bool membership(const SympMatrix& m, Group which, const Integer& level);

/// upper:  [[I, N A0], [0, I]]
/// lower:  [[I, 0], [N A0, I]]
/// mixed:  [[I - N A0, N A0], [-N A0, I + N A0]]
/// block:  diag(I + N E_jk, I - N E_kj), j != k
/// A0 is E_jj when j == k and E_jk + E_kj otherwise. Indices are 1-based.
enum class GammaKind { upper, lower, mixed, block };
SympMatrix special_gamma(GammaKind kind, std::size_t j, std::size_t k, const Integer& level, std::size_t g);

std::string to_string(GammaKind kind);
std::optional<GammaKind> parse_gamma_kind(std::string_view name);

inline constexpr double kSymmetryTolerance = 1e-12;
inline constexpr double kPivotThreshold = 1e-12;
inline constexpr double kRcondThreshold = 1e-10;

/// True when the real symmetric matrix admits a Cholesky factorization with
/// every pivot above kPivotThreshold.
bool is_positive_definite(const Eigen::MatrixXd& m);

/// A point of the Siegel upper half-space.
class SiegelPoint {
 public:
  /// Throws std::invalid_argument when Z is not square, not symmetric within
  /// kSymmetryTolerance or Im Z is not positive definite.
  explicit SiegelPoint(Eigen::MatrixXcd z);

  std::size_t g() const { return static_cast<std::size_t>(z_.rows()); }
  const Eigen::MatrixXcd& Z() const { return z_; }
  double min_imag_eigenvalue() const;

 private:
  Eigen::MatrixXcd z_;
};

/// (AZ+B)(CZ+D)^{-1}, re-symmetrized. M must be in Sp_2g(Z). Throws
/// std::invalid_argument for a bad matrix and std::domain_error when the
/// reciprocal condition number of CZ+D is below kRcondThreshold.
SiegelPoint act_siegel(const SympMatrix& m, const SiegelPoint& z);

Eigen::MatrixXd to_double(const IntMatrix& m);

}  // namespace stheta
