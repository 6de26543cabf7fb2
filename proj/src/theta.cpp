#include "stheta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace stheta {

// ---------------------------------------------------------------------------
// Characteristic

Characteristic::Characteristic(Integer den, std::vector<Integer> r_num, std::vector<Integer> s_num)
    : den_(std::move(den)), r_num_(std::move(r_num)), s_num_(std::move(s_num)) {
  if (den_ <= 0) throw std::invalid_argument("characteristic denominator must be positive");
  if (r_num_.size() != s_num_.size() || r_num_.empty())
    throw std::invalid_argument("characteristic needs r and s of the same positive length");
  Integer g = den_;
  for (const auto& x : r_num_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (const auto& x : s_num_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1) {
    den_ /= g;
    for (auto& x : r_num_) x /= g;
    for (auto& x : s_num_) x /= g;
  }
}

Characteristic Characteristic::from_rationals(std::span<const Rational> r, std::span<const Rational> s) {
  if (r.size() != s.size()) throw std::invalid_argument("r and s must have equal length");
  Integer den = 1;
  for (const auto& q : r) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  for (const auto& q : s) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> rn, sn;
  for (const auto& q : r) rn.push_back(q.get_num() * (den / q.get_den()));
  for (const auto& q : s) sn.push_back(q.get_num() * (den / q.get_den()));
  return Characteristic(den, std::move(rn), std::move(sn));
}

Characteristic Characteristic::from_vector(std::span<const Rational> rs) {
  if (rs.size() % 2 != 0 || rs.empty()) throw std::invalid_argument("characteristic vector must have even length");
  const std::size_t g = rs.size() / 2;
  return from_rationals(rs.subspan(0, g), rs.subspan(g));
}

Characteristic Characteristic::zero(std::size_t g) {
  return Characteristic(1, std::vector<Integer>(g, Integer(0)), std::vector<Integer>(g, Integer(0)));
}

Characteristic Characteristic::parse(std::string_view text) {
  std::string s(text);
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<Rational> v;
  std::string tok;
  while (in >> tok) v.push_back(parse_rational(tok));
  if (v.empty() || v.size() % 2 != 0)
    throw std::invalid_argument("characteristic needs 2g entries, got " + std::to_string(v.size()));
  return from_vector(v);
}

std::vector<Rational> Characteristic::r_vec() const {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < g(); ++i) v.push_back(r(i));
  return v;
}

std::vector<Rational> Characteristic::s_vec() const {
  std::vector<Rational> v;
  for (std::size_t i = 0; i < g(); ++i) v.push_back(s(i));
  return v;
}

std::vector<Rational> Characteristic::as_vector() const {
  auto v = r_vec();
  auto w = s_vec();
  v.insert(v.end(), w.begin(), w.end());
  return v;
}

Characteristic Characteristic::negated() const {
  auto rn = r_num_;
  auto sn = s_num_;
  for (auto& x : rn) x = -x;
  for (auto& x : sn) x = -x;
  return Characteristic(den_, std::move(rn), std::move(sn));
}

Characteristic Characteristic::conjugate_s() const {
  auto sn = s_num_;
  for (auto& x : sn) x = -x;
  return Characteristic(den_, r_num_, std::move(sn));
}

Characteristic Characteristic::canonical() const {
  auto rn = r_num_;
  auto sn = s_num_;
  for (auto& x : rn) x = mod(x, den_);
  for (auto& x : sn) x = mod(x, den_);
  return Characteristic(den_, std::move(rn), std::move(sn));
}

bool Characteristic::is_zero() const {
  return std::all_of(r_num_.begin(), r_num_.end(), [](const Integer& x) { return x == 0; }) &&
         std::all_of(s_num_.begin(), s_num_.end(), [](const Integer& x) { return x == 0; });
}

std::string Characteristic::to_string() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < g(); ++i) out << (i ? " " : "") << stheta::to_string(r(i));
  for (std::size_t i = 0; i < g(); ++i) out << " " << stheta::to_string(s(i));
  return out.str();
}

bool Characteristic::operator<(const Characteristic& o) const {
  if (g() != o.g()) return g() < o.g();
  auto a = as_vector();
  auto b = o.as_vector();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

double shell_term(double lambda, double y, std::size_t g, int k) {
  const double kk = static_cast<double>(k);
  // exp(-pi lambda d^2 + 2 pi y d) is largest at d = y / lambda
  double d = kk;
  const double peak = y / lambda;
  if (d < peak) d = std::min(peak, kk + 1.0);
  const double count = std::pow(2.0 * kk + 3.0, static_cast<double>(g));
  return count * std::exp(-std::numbers::pi * lambda * d * d + 2.0 * std::numbers::pi * y * d);
}

}  // namespace

double theta_tail_bound(double lambda, double imag_u_norm, std::size_t g, int radius) {
  if (!(lambda > 0)) return std::numeric_limits<double>::infinity();
  double sum = 0;
  for (int k = std::max(radius, 0);; ++k) {
    const double t = shell_term(lambda, imag_u_norm, g, k);
    if (!std::isfinite(t)) return std::numeric_limits<double>::infinity();
    sum += t;
    const bool past_peak = static_cast<double>(k) > imag_u_norm / lambda + 1.0;
    // past the peak consecutive ratios shrink geometrically
    if (past_peak && t < 1e-20 * sum) break;
    if (past_peak && t == 0) break;
    if (k > radius + 100000) return std::numeric_limits<double>::infinity();
  }
  return sum;
}

int theta_radius(double lambda, double imag_u_norm, std::size_t g, const EvalSettings& settings) {
  for (int r = 1; r <= settings.max_radius; ++r)
    if (theta_tail_bound(lambda, imag_u_norm, g, r) < settings.tol) return r;
  return -1;
}

std::complex<double> theta_eval(const Eigen::VectorXcd& u, const SiegelPoint& z, const Characteristic& chi,
                                const EvalSettings& settings) {
  const std::size_t g = z.g();
  if (chi.g() != g || static_cast<std::size_t>(u.size()) != g)
    throw std::invalid_argument("genus mismatch in theta_eval");
  if (!(settings.tol > 0)) throw std::invalid_argument("tol must be positive");
  const double lambda = z.min_imag_eigenvalue();
  const double y = u.imag().norm();
  const int radius = theta_radius(lambda, y, g, settings);
  if (radius < 0)
    throw NumericError("theta series radius cap " + std::to_string(settings.max_radius) +
                       " reached before the tail bound met tol (least eigenvalue of Im Z = " +
                       std::to_string(lambda) + ")");
  return theta_sum(u, z, chi, radius);
}

std::complex<double> theta_sum(const Eigen::VectorXcd& u, const SiegelPoint& z, const Characteristic& chi,
                               int radius) {
  const std::size_t g = z.g();
  if (chi.g() != g || static_cast<std::size_t>(u.size()) != g)
    throw std::invalid_argument("genus mismatch in theta_sum");
  const double rad = static_cast<double>(radius);

  Eigen::VectorXd r(static_cast<Eigen::Index>(g));
  Eigen::VectorXcd us(static_cast<Eigen::Index>(g));
  for (std::size_t i = 0; i < g; ++i) {
    r(static_cast<Eigen::Index>(i)) = chi.r(i).get_d();
    us(static_cast<Eigen::Index>(i)) = u(static_cast<Eigen::Index>(i)) + chi.s(i).get_d();
  }
  const Eigen::MatrixXd x_re = z.Z().real();
  const Eigen::MatrixXd y_im = z.Z().imag();

  // Odometer over the box, filtered to the ball |x + r| < radius.
  std::vector<long> lo(g), hi(g), x(g);
  for (std::size_t i = 0; i < g; ++i) {
    lo[i] = static_cast<long>(std::ceil(-rad - r(static_cast<Eigen::Index>(i))));
    hi[i] = static_cast<long>(std::floor(rad - r(static_cast<Eigen::Index>(i))));
    x[i] = lo[i];
  }
  std::complex<double> sum = 0;
  Eigen::VectorXd v(static_cast<Eigen::Index>(g));
  const double two_pi = 2.0 * std::numbers::pi;
  while (true) {
    for (std::size_t i = 0; i < g; ++i)
      v(static_cast<Eigen::Index>(i)) = static_cast<double>(x[i]) + r(static_cast<Eigen::Index>(i));
    if (v.squaredNorm() < rad * rad) {
      const double quad_re = 0.5 * v.dot(x_re * v) + v.dot(us.real());
      const double quad_im = 0.5 * v.dot(y_im * v) + v.dot(us.imag());
      const double phase = two_pi * (quad_re - std::floor(quad_re));
      sum += std::exp(-two_pi * quad_im) * std::complex<double>(std::cos(phase), std::sin(phase));
    }
    std::size_t i = 0;
    while (i < g && x[i] == hi[i]) {
      x[i] = lo[i];
      ++i;
    }
    if (i == g) break;
    ++x[i];
  }
  return sum;
}

std::complex<double> phi_eval(const Characteristic& chi, const SiegelPoint& z, const EvalSettings& settings) {
  const Eigen::VectorXcd u = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(z.g()));
  const std::complex<double> den = theta_eval(u, z, Characteristic::zero(z.g()), settings);
  if (!(std::abs(den) > settings.denominator_threshold))
    throw NumericError("theta null denominator below threshold");
  return theta_eval(u, z, chi, settings) / den;
}

bool in_sigma_minus(const Characteristic& chi) {
  // half-integral means 2 r_num / den is integral, i.e. den | 2
  if (chi.den() != 1 && chi.den() != 2) return false;
  Rational two_rs = 0;
  for (std::size_t i = 0; i < chi.g(); ++i) two_rs += 2 * chi.r(i) * chi.s(i);
  return frac_part(two_rs) == Rational(1, 2);
}

Characteristic reduce_char(const Characteristic& chi, const Integer& power, const Integer& m) {
  if (power <= 0 || m <= 0) throw std::invalid_argument("reduce_char needs positive power and M");
  for (std::size_t i = 0; i < chi.g(); ++i)
    if (Rational(chi.r(i) * m).get_den() != 1)
      throw std::invalid_argument("r is not in (1/M)Z^g for M = " + m.get_str());
  Integer gcd;
  mpz_gcd(gcd.get_mpz_t(), m.get_mpz_t(), power.get_mpz_t());
  const Integer smod = m / gcd;
  std::vector<Rational> r, s;
  for (std::size_t i = 0; i < chi.g(); ++i) {
    r.push_back(frac_part(chi.r(i)));
    s.push_back(frac_part(chi.s(i) / smod) * smod);
  }
  return Characteristic::from_rationals(r, s);
}

std::pair<RootOfUnity, Characteristic> canonicalize_with_phase(const Characteristic& chi) {
  Rational phase = 0;
  std::vector<Rational> r, s;
  for (std::size_t i = 0; i < chi.g(); ++i) {
    const Rational rh = frac_part(chi.r(i));
    const Rational sh = frac_part(chi.s(i));
    const Rational b = chi.s(i) - sh;
    phase += rh * b;
    r.push_back(rh);
    s.push_back(sh);
  }
  return {RootOfUnity(phase), Characteristic::from_rationals(r, s)};
}

}  // namespace stheta
