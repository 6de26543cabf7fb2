#include "stheta/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "stheta/action.hpp"
#include "stheta/cmfield.hpp"
#include "stheta/modularity.hpp"
#include "stheta/primgen.hpp"
#include "stheta/sampling.hpp"

namespace stheta {

namespace {

using cplx = std::complex<double>;

// Result of one check body. ok decides the status; measured and tolerance go
// into the report as they are.
struct Outcome {
  bool ok = true;
  double measured = 0;
  double tolerance = 0;
  std::string detail;
  bool skipped = false;
};

Outcome below(double measured, double tol, std::string detail = {}) {
  return {std::isfinite(measured) && measured < tol, measured, tol, std::move(detail)};
}

Outcome exact(std::size_t mismatches, std::string detail = {}) {
  return {mismatches == 0, static_cast<double>(mismatches), 0, std::move(detail)};
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

double rel_diff(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

cplx ipow(cplx z, long e) {
  if (e < 0) return 1.0 / ipow(z, -e);
  cplx r = 1;
  while (e) {
    if (e & 1) r *= z;
    z *= z;
    e >>= 1;
  }
  return r;
}

Characteristic make_char(long den, std::initializer_list<long> r, std::initializer_list<long> s) {
  std::vector<Integer> rn, sn;
  for (long v : r) rn.emplace_back(v);
  for (long v : s) sn.emplace_back(v);
  return Characteristic(den, std::move(rn), std::move(sn));
}

// The Lemma 4.3 style generators of Gamma(N) for g = 2.
std::vector<SympMatrix> gamma_generators(long level) {
  std::vector<SympMatrix> out;
  for (GammaKind kind : {GammaKind::upper, GammaKind::lower, GammaKind::mixed})
    for (auto [j, k] : {std::pair{1, 1}, std::pair{2, 2}, std::pair{1, 2}})
      out.push_back(special_gamma(kind, j, k, level, 2));
  out.push_back(special_gamma(GammaKind::block, 1, 2, level, 2));
  out.push_back(special_gamma(GammaKind::block, 2, 1, level, 2));
  return out;
}

// A random unit mod m.
long random_unit(Rng& rng, long m) {
  for (;;) {
    const long a = rng.integer(1, m - 1 > 0 ? m - 1 : 1);
    if (std::gcd(a, m) == 1) return a;
  }
}

// Theta-group word times iota(a), reduced mod level: an element of G_level.
SympMatrix random_g_element(Rng& rng, long level, std::size_t g) {
  const Integer lv(level);
  SympMatrix w = random_theta_group_word(rng, g, static_cast<int>(rng.integer(1, 4))).reduced(lv);
  return w * iota(Integer(random_unit(rng, level)), g, lv);
}

// Closed-form Lemma 7.2(i) phases as numerators over p.
Integer lemma72_k1(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  return -a * a + 2 * a * d - b * b - c * c - 2 * c * d - 2 * d * d;
}
Integer lemma72_k2_printed(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  return -a * a + 4 * a * b - 4 * a * c - b * b + 4 * b * c - c * c + 2 * c * d + 2 * d * d;
}
Integer lemma72_k2(const Integer& a, const Integer& b, const Integer& c, const Integer& d) {
  return lemma72_k2_printed(a, b, c, d) - 6 * a * d;
}

class Runner {
 public:
  Runner(const SuiteConfig& cfg, Report& report)
      : cfg_(cfg), report_(report), settings_{cfg.theta_tol, 200, 1e-8} {}

  void run(const std::string& suite) {
    if (suite == "theta") theta_suite();
    else if (suite == "modularity") modularity_suite();
    else if (suite == "action") action_suite();
    else if (suite == "cm") cm_suite();
    else if (suite == "primgen") primgen_suite();
  }

 private:
  const SuiteConfig& cfg_;
  Report& report_;
  EvalSettings settings_;
  std::optional<CMContext> ctx_;

  double tol(double spec) const { return spec * cfg_.tol_numeric / 1e-8; }

  const CMContext& ctx() {
    if (!ctx_) ctx_ = CMContext::build(settings_);
    return *ctx_;
  }

  void check(const std::string& name, const std::function<Outcome(Rng&)>& body) {
    CheckRecord rec;
    rec.name = name;
    Rng rng(cfg_.seed ^ fnv1a(name));
    const auto start = std::chrono::steady_clock::now();
    try {
      Outcome o = body(rng);
      rec.status = o.skipped ? Status::skip : (o.ok ? Status::pass : Status::fail);
      rec.measured = o.measured;
      rec.tolerance = o.tolerance;
      rec.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      rec.status = Status::fail;
      rec.measured = std::nan("");
      rec.detail = std::string("error: ") + e.what();
    }
    rec.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report_.checks.push_back(std::move(rec));
  }

  cplx theta0(const SiegelPoint& z, const Characteristic& chi) {
    return theta_eval(Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(z.g())), z, chi, settings_);
  }

  // ---------------------------------------------------------------- theta

  void theta_suite() {
    check("theta.jacobi_oracle", [&](Rng&) {
      // theta_3(e^{-pi})^2 = sqrt(pi) / Gamma(3/4)^2, and the g = 2 value at
      // iI is its square.
      const double t1 = std::sqrt(std::numbers::pi) / std::pow(std::tgamma(0.75), 2);
      Eigen::MatrixXcd z1(1, 1);
      z1(0, 0) = cplx(0, 1);
      const cplx v1 = theta0(SiegelPoint(z1), Characteristic::zero(1));
      const Eigen::MatrixXcd z2 = Eigen::MatrixXcd::Identity(2, 2) * cplx(0, 1);
      const cplx v2 = theta0(SiegelPoint(z2), Characteristic::zero(2));
      const double err = std::max(std::abs(v1 * v1 - t1), std::abs(v2 - t1));
      return below(err, tol(1e-12));
    });

    check("theta.sign_symmetry", [&](Rng& rng) {
      double worst = 0;
      for (int i = 0; i < 20; ++i) {
        const std::size_t g = static_cast<std::size_t>(rng.integer(1, 2));
        const SiegelPoint z = random_siegel_point(rng, g);
        const Characteristic chi = random_characteristic(rng, g, rng.integer(2, 6));
        worst = std::max(worst, rel_diff(theta0(z, chi.negated()), theta0(z, chi)));
      }
      return below(worst, tol(1e-10));
    });

    check("theta.translation", [&](Rng& rng) {
      double worst = 0;
      for (int i = 0; i < 100; ++i) {
        const std::size_t g = static_cast<std::size_t>(rng.integer(1, 2));
        const auto n = static_cast<Eigen::Index>(g);
        const SiegelPoint z = random_siegel_point(rng, g);
        Eigen::VectorXcd u(n);
        for (Eigen::Index k = 0; k < n; ++k) u(k) = cplx(rng.uniform(-1, 1), rng.uniform(-0.5, 0.5));
        const long den = rng.integer(1, 6);
        const Characteristic chi = random_characteristic(rng, g, den);
        std::vector<Integer> rn = chi.r_num(), sn = chi.s_num();
        Rational phase = 0;
        for (std::size_t k = 0; k < g; ++k) {
          const long a = rng.integer(-2, 2), b = rng.integer(-2, 2);
          rn[k] += a * chi.den();
          sn[k] += b * chi.den();
          phase += chi.r(k) * b;
        }
        const Characteristic shifted(chi.den(), rn, sn);
        const cplx lhs = theta_eval(u, z, shifted, settings_);
        const cplx rhs = RootOfUnity(phase).value() * theta_eval(u, z, chi, settings_);
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(std::abs(rhs), 1e-300));
      }
      return below(worst, tol(1e-9));
    });

    check("theta.tail_soundness", [&](Rng& rng) {
      double worst = 0;
      for (int i = 0; i < 50; ++i) {
        const std::size_t g = static_cast<std::size_t>(rng.integer(1, 2));
        const SiegelPoint z = random_siegel_point(rng, g, rng.uniform(0.3, 1.5));
        const Characteristic chi = random_characteristic(rng, g, rng.integer(1, 6));
        const Eigen::VectorXcd u = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(g));
        const int radius = theta_radius(z.min_imag_eigenvalue(), 0, g, settings_);
        if (radius < 0) throw NumericError("radius cap reached");
        worst = std::max(worst, std::abs(theta_sum(u, z, chi, radius) - theta_sum(u, z, chi, 2 * radius)));
      }
      return below(worst, cfg_.theta_tol);
    });

    check("theta.sigma_minus_vanishing", [&](Rng& rng) {
      std::vector<Characteristic> odd;
      for (long m = 0; m < 16; ++m) {
        Characteristic chi = make_char(2, {m & 1, (m >> 1) & 1}, {(m >> 2) & 1, (m >> 3) & 1});
        if (in_sigma_minus(chi)) odd.push_back(chi);
      }
      if (odd.size() != 6) return Outcome{false, static_cast<double>(odd.size()), 6, "expected six odd characteristics"};
      double worst = 0;
      for (int i = 0; i < 5; ++i) {
        const SiegelPoint z = random_siegel_point(rng, 2);
        for (const auto& chi : odd) worst = std::max(worst, std::abs(theta0(z, chi)));
      }
      return below(worst, tol(1e-10));
    });

    check("theta.power_reduction", [&](Rng& rng) {
      double worst = 0;
      for (int i = 0; i < 30; ++i) {
        const std::size_t g = static_cast<std::size_t>(rng.integer(1, 2));
        const SiegelPoint z = random_siegel_point(rng, g);
        const long m = rng.integer(2, 6);
        std::vector<Integer> rn, sn;
        for (std::size_t k = 0; k < g; ++k) rn.emplace_back(rng.integer(-3 * m, 3 * m));
        for (std::size_t k = 0; k < g; ++k) sn.emplace_back(rng.integer(-3 * m, 3 * m));
        const Characteristic chi(m, rn, sn);
        const long ell = rng.integer(1, 2 * m);
        const Characteristic red = reduce_char(chi, ell, m);
        const cplx a = ipow(phi_eval(red, z, settings_), ell);
        const cplx b = ipow(phi_eval(chi, z, settings_), ell);
        worst = std::max(worst, rel_diff(a, b));
      }
      return below(worst, tol(1e-9));
    });

    check("theta.conjugation", [&](Rng& rng) {
      double worst = 0;
      for (int i = 0; i < 20; ++i) {
        const SiegelPoint z = random_siegel_point(rng, 2);
        const Characteristic chi = random_characteristic(rng, 2, rng.integer(3, 4));
        const SiegelPoint zbar(-z.Z().conjugate());
        worst = std::max(worst, std::abs(std::conj(phi_eval(chi, z, settings_)) -
                                         phi_eval(chi.conjugate_s(), zbar, settings_)));
      }
      return below(worst, tol(1e-8));
    });
  }

  // ----------------------------------------------------------- modularity

  // A random Gamma(N) word of length <= max_len and gamma Z. Words that push
  // the least eigenvalue of Im below kMinImag are redrawn: the series there
  // needs radii past the cap.
  static constexpr double kMinImag = 0.05;
  std::pair<SympMatrix, SiegelPoint> gamma_image(Rng& rng, long level, const SiegelPoint& z, int max_len) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
      SympMatrix gamma = random_gamma_word(rng, level, z.g(), static_cast<int>(rng.integer(1, max_len)));
      SiegelPoint image = act_siegel(gamma, z);
      if (image.min_imag_eigenvalue() >= kMinImag) return {std::move(gamma), std::move(image)};
    }
    throw NumericError("no Gamma(N) word keeps Im(gamma Z) away from the boundary");
  }

  // max |Phi(gamma Z) - Phi(Z)| over `words` random Gamma(N) words at
  // `points` random Z.
  double invariance_error(Rng& rng, const ThetaProduct& prod, int words, int points) {
    const long level = prod.level().get_si();
    double worst = 0;
    for (int p = 0; p < points; ++p) {
      const SiegelPoint z = random_siegel_point(rng, prod.g());
      const cplx base = prod.evaluate(z, settings_);
      for (int w = 0; w < words; ++w) {
        const SiegelPoint image = gamma_image(rng, level, z, 3).second;
        worst = std::max(worst, std::abs(prod.evaluate(image, settings_) - base));
      }
    }
    return worst;
  }

  void modularity_suite() {
    check("modularity.single_constant_2N", [&](Rng&) {
      std::size_t bad = 0, total = 0;
      for (long level : {2L, 4L}) {
        const long n4 = level * level * level * level;
        for (long code = 1; code < n4; ++code) {
          long c = code;
          std::vector<Integer> v;
          for (int k = 0; k < 4; ++k, c /= level) v.emplace_back(c % level);
          const Characteristic chi(level, {v[0], v[1]}, {v[2], v[3]});
          if (in_sigma_minus(chi)) continue;
          ++total;
          if (!check_family(ThetaProduct(2, level, {{chi, Integer(2 * level)}}), level).ok) ++bad;
        }
      }
      return exact(bad, std::to_string(total) + " characteristics");
    });

    check("modularity.frozen_n2_family", [&](Rng& rng) {
      const ThetaProduct prod(2, 2,
                              {{make_char(2, {1, 1}, {0, 0}), 2},
                               {make_char(2, {1, 0}, {0, 0}), 2},
                               {make_char(2, {0, 1}, {0, 0}), 2}});
      if (!check_family(prod, 2).ok) return Outcome{false, 1, 0, "criterion rejects the family"};
      return below(invariance_error(rng, prod, 20, 3), tol(1e-8));
    });

    check("modularity.passing_invariance", [&](Rng& rng) {
      double worst = 0;
      for (long level : {2L, 4L})
        for (int f = 0; f < 20; ++f) {
          const ThetaProduct prod = random_passing_family(rng, level, 2, 3);
          worst = std::max(worst, invariance_error(rng, prod, 20, 3));
        }
      return below(worst, tol(1e-8));
    });

    check("modularity.failing_witness", [&](Rng& rng) {
      // smallest best deviation over all failing families; must exceed 1e-3
      double weakest = std::numeric_limits<double>::infinity();
      std::size_t missing = 0;
      for (long level : {2L, 4L}) {
        const auto gens = gamma_generators(level);
        for (int f = 0; f < 20; ++f) {
          const ThetaProduct prod = random_failing_family(rng, level, 2, 3);
          const SiegelPoint z = random_siegel_point(rng, 2);
          const cplx base = prod.evaluate(z, settings_);
          double best = 0;
          for (const auto& gamma : gens)
            best = std::max(best, std::abs(prod.evaluate(act_siegel(gamma, z), settings_) / base - 1.0));
          if (!(best > 1e-3)) ++missing;
          weakest = std::min(weakest, best);
        }
      }
      return Outcome{missing == 0, weakest, 1e-3, std::to_string(missing) + " families without a witness"};
    });

    check("modularity.multiplier_numeric", [&](Rng& rng) {
      double worst = 0;
      for (int i = 0; i < 100; ++i) {
        const long level = rng.integer(0, 1) ? 2 : 4;
        Characteristic chi = random_characteristic(rng, 2, level);
        while (in_sigma_minus(chi)) chi = random_characteristic(rng, 2, level);
        const SiegelPoint z = random_siegel_point(rng, 2);
        const auto [gamma, image] = gamma_image(rng, level, z, 2);
        const cplx lhs = phi_eval(chi, image, settings_);
        const cplx rhs = gamma_multiplier(gamma, chi, level).value() * phi_eval(chi, z, settings_);
        worst = std::max(worst, std::abs(lhs - rhs));
      }
      return below(worst, tol(1e-8));
    });

    check("modularity.multiplier_cocycle", [&](Rng& rng) {
      std::size_t bad = 0;
      for (int i = 0; i < 100; ++i) {
        const long level = 2 * rng.integer(1, 3);
        const Characteristic chi = random_characteristic(rng, 2, level);
        const SympMatrix g1 = random_gamma_word(rng, level, 2, static_cast<int>(rng.integer(1, 3)));
        const SympMatrix g2 = random_gamma_word(rng, level, 2, static_cast<int>(rng.integer(1, 3)));
        if (!(gamma_multiplier(g1 * g2, chi, level) ==
              gamma_multiplier(g1, chi, level) * gamma_multiplier(g2, chi, level)))
          ++bad;
      }
      return exact(bad);
    });

    check("modularity.integral_exponent_sum", [&](Rng& rng) {
      std::size_t bad = 0;
      for (long level : {2L, 4L})
        for (int f = 0; f < 20; ++f) {
          const ThetaProduct prod = random_passing_family(rng, level, 2, 3);
          for (int w = 0; w < 10; ++w) {
            const SympMatrix gamma = random_gamma_word(rng, level, 2, static_cast<int>(rng.integer(1, 4)));
            Rational sum = 0;
            for (const auto& t : prod.terms()) sum += gamma_multiplier(gamma, t.chi, level).exponent() * t.exponent;
            if (sum.get_den() != 1) ++bad;
          }
        }
      return exact(bad);
    });
  }

  // --------------------------------------------------------------- action

  void action_suite() {
    check("action.iota_inverse", [&](Rng& rng) {
      std::size_t bad = 0;
      for (int i = 0; i < 50; ++i) {
        const long m = rng.integer(2, 7);
        const Characteristic chi = random_characteristic(rng, 2, m);
        const long a = random_unit(rng, 2 * m * m);
        const Characteristic via_power =
            act_power_family(iota(*inverse_mod(a, m), 2, m), chi, m);
        if (!(act_iota_inv(a, chi).canonical() == via_power)) ++bad;
        std::vector<Integer> as = chi.s_num();
        for (auto& x : as) x *= a;
        if (!(act_iota_inv(a, chi).canonical() == Characteristic(chi.den(), chi.r_num(), as).canonical())) ++bad;
        if (!(act_iota_inv(1, chi).canonical() == chi.canonical())) ++bad;
      }
      return exact(bad);
    });

    check("action.power_family_antihomomorphism", [&](Rng& rng) {
      std::size_t bad = 0;
      for (int i = 0; i < 50; ++i) {
        const long level = rng.integer(2, 6);
        const SympMatrix a = random_g_element(rng, level, 2);
        const SympMatrix b = random_g_element(rng, level, 2);
        const Characteristic chi = random_characteristic(rng, 2, level);
        if (!(act_power_family(a * b, chi, level) ==
              act_power_family(b, act_power_family(a, chi, level), level)))
          ++bad;
      }
      return exact(bad);
    });

    check("action.power_family_numeric", [&](Rng& rng) {
      double worst = 0;
      for (int i = 0; i < 50; ++i) {
        const long level = rng.integer(2, 4);
        const SympMatrix alpha = random_theta_group_word(rng, 2, static_cast<int>(rng.integer(1, 3)));
        const Characteristic chi = random_characteristic(rng, 2, level);
        const Characteristic out = act_power_family(alpha.reduced(level), chi, level);
        const SiegelPoint z = random_siegel_point(rng, 2);
        const long e = 2 * level * level;
        const cplx lhs = ipow(phi_eval(chi, act_siegel(alpha, z), settings_), e);
        const cplx rhs = ipow(phi_eval(out, z, settings_), e);
        worst = std::max(worst, rel_diff(lhs, rhs));
      }
      return below(worst, tol(1e-7));
    });

    check("action.act_phi_identity", [&](Rng& rng) {
      std::size_t bad = 0;
      for (long m : {1L, 3L, 5L, 7L}) {
        const Characteristic chi = random_characteristic(rng, 2, m);
        const ActionResult r = act_phi(SympMatrix(IntMatrix::identity(4), 2 * m * m), chi, m);
        if (!r.multiplier.is_one() || !(r.chi_out == chi)) ++bad;
      }
      return exact(bad);
    });

    check("action.gamma_overlap", [&](Rng& rng) {
      std::size_t bad = 0;
      for (int i = 0; i < 50; ++i) {
        const long m = rng.integer(0, 1) ? 3 : 5;
        const long level = 2 * m * m;
        const Characteristic chi = random_characteristic(rng, 2, m);
        const SympMatrix gamma = random_gamma_word(rng, level, 2, static_cast<int>(rng.integer(1, 3)));
        const ActionResult r = act_phi_reduced(gamma, chi, m);
        if (!(r.chi_out == chi.canonical()) || !(r.multiplier == gamma_multiplier(gamma, chi, level))) ++bad;
      }
      return exact(bad);
    });

    check("action.act_phi_composition", [&](Rng& rng) {
      double worst = 0;
      std::size_t bad = 0;
      for (int i = 0; i < 30; ++i) {
        const long m = rng.integer(0, 1) ? 3 : 5;
        const long level = 2 * m * m;
        const SympMatrix a = random_g_element(rng, level, 2);
        const SympMatrix b = random_g_element(rng, level, 2);
        const Characteristic chi = random_characteristic(rng, 2, m);
        const ActionResult ab = act_phi_reduced(a * b, chi, m);
        const ActionResult first = act_phi_reduced(a, chi, m);
        const ActionResult second = act_phi_reduced(b, first.chi_out, m);
        const long nu_b = sympl_multiplier(b)->get_si();
        const RootOfUnity mu = first.multiplier.pow(nu_b) * second.multiplier;
        if (!(ab.chi_out == second.chi_out) || !(ab.multiplier == mu)) ++bad;
        const SiegelPoint z = random_siegel_point(rng, 2);
        worst = std::max(worst, std::abs(ab.multiplier.value() * phi_eval(ab.chi_out, z, settings_) -
                                         mu.value() * phi_eval(second.chi_out, z, settings_)));
      }
      Outcome o = below(worst, tol(1e-8), std::to_string(bad) + " exact mismatches");
      o.ok = o.ok && bad == 0;
      return o;
    });
  }

  // ------------------------------------------------------------------- cm

  void cm_suite() {
    check("cm.riemann_form", [&](Rng&) {
      const CMContext& c = ctx();
      std::size_t bad = 0;
      const RationalMatrix j = form_J(2).to_rational();
      for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t b = 0; b < 4; ++b)
          if (riemann_form(c.basis[a], c.basis[b], c) != j(a, b)) ++bad;
      return exact(bad);
    });

    check("cm.z0_beta", [&](Rng&) {
      const CMContext& c = ctx();
      const SympMatrix beta(beta_matrix());
      if (!membership(beta, Group::Sp, 0)) return Outcome{false, 1, 0, "beta is not in Sp_4(Z)"};
      const Eigen::MatrixXcd& z = c.z0.Z();
      const double sym = (z - z.transpose()).cwiseAbs().maxCoeff();
      if (sym > kSymmetryTolerance || !is_positive_definite(z.imag()))
        return Outcome{false, sym, kSymmetryTolerance, "Z0 is not in H_2"};
      const Eigen::MatrixXcd d = act_siegel(beta, c.z0).Z() + z.conjugate();
      return below(d.cwiseAbs().maxCoeff(), tol(1e-10));
    });

    check("cm.theta_null", [&](Rng&) {
      const double v = std::abs(ctx().theta_null);
      return Outcome{v > 0.1, v, 0.1, "lower bound"};
    });

    check("cm.h_congruences", [&](Rng&) {
      const CMContext& c = ctx();
      std::size_t bad = 0;
      for (long p : cfg_.primes) {
        const Integer level = 2 * Integer(p) * Integer(p);
        const long q = p;
        const IntMatrix h2{{1 - 2 * q, -2 * q, -2 * q, 0},
                           {0, 1 - 2 * q, 0, -2 * q},
                           {2 * q, 2 * q, 1, 0},
                           {2 * q, 4 * q, 2 * q, 1}};
        const IntMatrix h3{{1 + 2 * q, 6 * q, -2 * q, 4 * q},
                           {-4 * q, 1 - 2 * q, 4 * q, -2 * q},
                           {2 * q, -2 * q, 1 - 4 * q, 4 * q},
                           {-2 * q, -4 * q, -6 * q, 1}};
        const GaloisActor a1 = GaloisActor::make(paper_x1(c, p), p);
        const GaloisActor a2 = GaloisActor::make(paper_x2(c, p), p);
        if (!(a1.h_mod.entries().mod(level) == h2.mod(level))) ++bad;
        if (!(a2.h_mod.entries().mod(level) == h3.mod(level))) ++bad;
        for (const auto* a : {&a1, &a2}) {
          const auto nu = sympl_multiplier(a->h_mod);
          if (!nu || mod(*nu, level) != mod(Integer(1 - 2 * p), level)) ++bad;
        }
      }
      return exact(bad);
    });

    check("cm.action_example", [&](Rng&) {
      std::size_t bad = 0;
      for (long p : cfg_.primes) {
        const Characteristic chi = make_char(p, {1, 0}, {0, 0});
        const ActionResult r = artin_action(paper_x1(ctx(), p), p, chi, ctx());
        if (!(r.chi_out == chi) || !(r.multiplier == RootOfUnity(Rational(-1, p)))) ++bad;
      }
      return exact(bad);
    });

    for (long p : cfg_.primes) {
      check("cm.lemma72.p" + std::to_string(p), [&, p](Rng& rng) {
        const CMContext& c = ctx();
        const GaloisActor a1 = GaloisActor::make(paper_x1(c, p), p);
        const GaloisActor a2 = GaloisActor::make(paper_x2(c, p), p);
        std::vector<std::array<long, 4>> grid;
        if (p == 3) {
          for (long code = 1; code < 81; ++code) grid.push_back({code % 3, code / 3 % 3, code / 9 % 3, code / 27});
        } else {
          while (grid.size() < 30) {
            std::array<long, 4> v;
            for (auto& x : v) x = rng.integer(0, p - 1);
            if (v != std::array<long, 4>{0, 0, 0, 0}) grid.push_back(v);
          }
        }
        double worst = 0;
        std::size_t used = 0, printed_off = 0;
        for (const auto& [a, b, cc, d] : grid) {
          const Characteristic chi = make_char(p, {a, b}, {cc, d});
          const cplx phi = c.phi(chi);
          if (std::abs(phi) <= 1e-6) continue;
          ++used;
          const Integer A(a), B(b), C(cc), D(d);
          const std::pair<const GaloisActor*, Integer> cases[] = {{&a1, lemma72_k1(A, B, C, D)},
                                                                  {&a2, lemma72_k2(A, B, C, D)}};
          for (const auto& [actor, num] : cases) {
            const ActionResult r = artin_action(*actor, chi);
            const cplx lhs = r.multiplier.value() * c.phi(r.chi_out);
            const cplx rhs = RootOfUnity(Rational(num, p)).value() * phi;
            worst = std::max(worst, std::abs(lhs - rhs));
          }
          if (mod(lemma72_k2_printed(A, B, C, D) - lemma72_k2(A, B, C, D), p) != 0) ++printed_off;
        }
        return below(worst, tol(1e-8),
                     std::to_string(used) + " characteristics; printed k=2 form differs on " +
                         std::to_string(printed_off));
      });
    }

    for (long p : cfg_.primes) {
      check("cm.reality.p" + std::to_string(p), [&, p](Rng&) {
        const CMContext& c = ctx();
        double worst = 0;
        for (long r1 = 0; r1 < p; ++r1)
          for (long r2 = 0; r2 < p; ++r2)
            for (long sign : {1L, -1L}) {
              const Characteristic chi = make_char(p, {r1, r2}, {sign * (r1 - r2), -sign * r1});
              Rational rs = 0;
              for (std::size_t i = 0; i < 2; ++i) rs += chi.r(i) * chi.s(i);
              const cplx v = RootOfUnity(-rs / 2).value() * c.phi(chi);
              worst = std::max(worst, std::abs(v.imag()));
            }
        return below(worst, tol(1e-8));
      });
    }

    check("cm.lemma72_iii", [&](Rng&) {
      const CMContext& c = ctx();
      const long p = 3, e = 2 * p * p;
      const cplx ref = ipow(c.phi(make_char(p, {1, 0}, {0, 0})), e);
      std::size_t agree = 0, bad = 0;
      for (long code = 1; code < 81; ++code) {
        const long a = code % 3, b = code / 3 % 3, cc = code / 9 % 3, d = code / 27;
        const cplx v = c.phi(make_char(p, {a, b}, {cc, d}));
        if (std::abs(v) <= 1e-6 || rel_diff(ipow(v, e), ref) >= tol(1e-8)) continue;
        ++agree;
        const long crit = -2 * a * b + 2 * a * cc + a * d - 2 * b * cc - 2 * cc * d - 2 * d * d;
        if (((crit % p) + p) % p != 0) ++bad;
      }
      return exact(bad, std::to_string(agree) + " characteristics agree with (1/3,0,0,0)");
    });

    check("cm.conjugation_z0", [&](Rng& rng) {
      const CMContext& c = ctx();
      const SiegelPoint zbar(-c.z0.Z().conjugate());
      double worst = 0;
      for (int i = 0; i < 20; ++i) {
        const Characteristic chi = random_characteristic(rng, 2, rng.integer(3, 4));
        worst = std::max(worst, std::abs(std::conj(c.phi(chi)) - phi_eval(chi.conjugate_s(), zbar, settings_)));
      }
      return below(worst, tol(1e-8));
    });

    check("cm.belong_example", [&](Rng&) {
      // x = 1 + 2(zeta + zeta^2) has norm 5, so p = 5 is outside the domain
      const std::array<Integer, 5> coords{1, 2, 2, 0, 0};
      const Integer norm = absolute_norm(from_coordinates(CycloField(5), coords)).get_num();
      std::size_t bad = 0;
      std::string detail;
      for (long p : cfg_.primes) {
        detail += "p=" + std::to_string(p) + ": ";
        if (norm % p == 0) {
          try {
            belong_criterion(coords, p);
            ++bad;
            detail += "accepted outside the domain; ";
          } catch (const std::invalid_argument&) {
            detail += "rejected (norm divisible by p); ";
          }
          continue;
        }
        const BelongResult r = belong_criterion(coords, p);
        if (r.a != -1 || r.b != 0 || r.c != 0 || r.d != -2 || r.raw_value != -6 ||
            r.value != mod(Integer(-6), p))
          ++bad;
        if (p > 3 && r.value == 0) ++bad;
        detail += "value " + r.value.get_str() + "; ";
      }
      return exact(bad, detail);
    });

    check("cm.h_homomorphism", [&](Rng& rng) {
      const CycloField f(5);
      auto draw = [&] {
        std::array<Integer, 5> a;
        for (auto& x : a) x = rng.integer(-5, 5);
        return from_coordinates(f, a);
      };
      std::size_t bad = 0;
      for (int i = 0; i < 50; ++i) {
        const CycloElem x = draw(), y = draw();
        if (!(h_map(x * y) == h_map(x) * h_map(y))) ++bad;
        if (!(h_map(x + y) == h_map(x) + h_map(y))) ++bad;
      }
      return exact(bad);
    });

    check("cm.nu_is_norm", [&](Rng& rng) {
      const CycloField f(5);
      const RationalMatrix j = form_J(2).to_rational();
      std::size_t bad = 0;
      for (int i = 0; i < 50; ++i) {
        std::array<Integer, 5> a;
        for (auto& x : a) x = rng.integer(-5, 5);
        const CycloElem x = from_coordinates(f, a);
        if (x.is_zero()) continue;
        const RationalMatrix h = h_map(reflex_norm(x));
        const Rational n = absolute_norm(x);
        RationalMatrix nj = j;
        for (std::size_t r = 0; r < 4; ++r)
          for (std::size_t s = 0; s < 4; ++s) nj(r, s) *= n;
        if (!(h.transpose() * j * h == nj)) ++bad;
      }
      return exact(bad);
    });
  }

  // -------------------------------------------------------------- primgen

  void primgen_suite() {
    check("primgen.paper_trace", [&](Rng&) {
      const CycloField f(25);
      const std::vector<long> h{1, 6, 11, 16, 21};
      return exact(rel_trace_norm(f.zeta(1), h, TraceNorm::trace).is_zero() ? 0 : 1);
    });

    check("primgen.paper_norm", [&](Rng&) {
      const CycloField f(25);
      const std::vector<long> h{1, 6, 11, 16, 21};
      const CycloElem n = rel_trace_norm(f.zeta(1) * Rational(3) + f.one(), h, TraceNorm::norm);
      return exact(n == f.zeta(5) * Rational(243) + f.one() ? 0 : 1, n.to_string());
    });

    check("primgen.surrogate", [&](Rng&) {
      const CycloField f(8);
      const CycloElem x = f.zeta(1) + f.zeta(7), y = f.zeta(2);
      const AbelianTower t(8, {1, 3, 5, 7}, {1, 7}, x, y);
      std::size_t bad = 0;
      if (t.ell() != 2 || t.degree() != 4 || !t.trace_to_mid(y).is_zero()) ++bad;
      const CycloElem e1 = combine_trace(t, f.one(), f.one());
      if (!(e1 == x + y * Rational(2)) || !is_primitive(e1, t)) ++bad;
      const CycloElem e2 = combine_norm(t, 3, 1, 3, 1, 1, 1);
      const CycloElem u = y * Rational(3) + f.one();
      if (!(e2 == (x * Rational(3) + f.one()) * Rational(10) * u.pow(-2)) || !is_primitive(e2, t)) ++bad;
      if (is_primitive(x, t)) ++bad;
      return exact(bad);
    });

    // Towers are shared by the trace, identity and norm checks.
    auto towers = [&](Rng& rng) {
      static const long conductors[] = {8, 12, 15, 16, 20, 24};
      std::vector<AbelianTower> out;
      for (int i = 0; i < 20; ++i) out.push_back(random_tower(rng, conductors[rng.integer(0, 5)]));
      return out;
    };
    auto coefficient = [](Rng& rng, const CycloField& f) {
      static const Rational choices[] = {Rational(1), Rational(-1), Rational(2), Rational(-2), Rational(1, 5)};
      return f.rational(choices[rng.integer(0, 4)]);
    };

    check("primgen.random_trace", [&](Rng& rng) {
      std::size_t bad = 0;
      for (const auto& t : towers(rng)) {
        const CycloField& f = t.x().field();
        for (int k = 0; k < 3; ++k)
          if (!is_primitive(combine_trace(t, coefficient(rng, f), coefficient(rng, f)), t)) ++bad;
      }
      return exact(bad);
    });

    check("primgen.trace_identity", [&](Rng& rng) {
      std::size_t bad = 0;
      for (const auto& t : towers(rng)) {
        const CycloField& f = t.x().field();
        const CycloElem a = coefficient(rng, f), b = coefficient(rng, f);
        const CycloElem e = combine_trace(t, a, b);
        if (!(t.trace_to_mid(e) == a * t.x() * Rational(t.ell()))) ++bad;
      }
      return exact(bad);
    });

    check("primgen.random_norm", [&](Rng& rng) {
      static const std::pair<long, long> ratios[] = {{3, 1}, {5, 2}, {-7, 3}};
      std::size_t bad = 0, total = 0;
      for (const auto& t : towers(rng))
        for (auto [a, b] : ratios)
          for (auto [c, d] : ratios)
            for (long n : {1L, 2L})
              for (long m : {1L, 2L}) {
                ++total;
                if (!is_primitive(combine_norm(t, a, b, c, d, n, m), t)) ++bad;
              }
      return exact(bad, std::to_string(total) + " outputs");
    });

    check("primgen.lemma83", [&](Rng&) {
      static const std::pair<long, long> ratios[] = {{3, 1}, {5, 2}, {-7, 3}};
      std::size_t bad = 0;
      for (long n : {5L, 7L, 8L, 9L, 12L, 15L}) {
        const CycloField f(n);
        for (auto [a, b] : ratios)
          for (long k : {1L, 2L, 3L})
            if (degree_over_rationals((f.zeta(1) * Rational(a) + f.rational(b)).pow(k)) != f.degree()) ++bad;
      }
      return exact(bad);
    });
  }
};

double round15(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names{"theta", "modularity", "action", "cm", "primgen"};
  return names;
}

void SuiteConfig::validate() const {
  for (long p : primes)
    if (!is_odd_prime(p)) throw std::invalid_argument("not an odd prime: " + std::to_string(p));
  auto positive = [](double v, const char* what) {
    if (!(v > 0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive");
  };
  positive(tol_numeric, "tol_numeric");
  positive(theta_tol, "theta_tol");
  const auto& known = known_suites();
  for (const auto& s : suites)
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw std::invalid_argument("unknown suite: " + s);
}

SuiteConfig parse_suite_config(std::string_view json_text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");
  SuiteConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "primes") cfg.primes = value.get<std::vector<long>>();
      else if (key == "tol_numeric") cfg.tol_numeric = value.get<double>();
      else if (key == "theta_tol") cfg.theta_tol = value.get<double>();
      else if (key == "seed") cfg.seed = value.get<std::uint64_t>();
      else if (key == "suites") cfg.suites = value.get<std::vector<std::string>>();
      else throw std::invalid_argument("unknown config key: " + key);
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skip: return "skip";
  }
  return "?";
}

std::size_t Report::count(Status s) const {
  return static_cast<std::size_t>(
      std::count_if(checks.begin(), checks.end(), [s](const CheckRecord& c) { return c.status == s; }));
}

int Report::exit_status() const { return count(Status::fail) == 0 ? 0 : 1; }

Report run_suite(const SuiteConfig& config) {
  config.validate();
  Report report;
  report.seed = config.seed;
  Runner runner(config, report);
  // fixed order regardless of how the selection was written
  for (const auto& name : known_suites())
    if (std::find(config.suites.begin(), config.suites.end(), name) != config.suites.end()) runner.run(name);
  return report;
}

std::string to_json(const Report& report, bool include_runtime) {
  using nlohmann::ordered_json;
  ordered_json out;
  out["seed"] = report.seed;
  out["summary"] = {{"pass", report.count(Status::pass)},
                    {"fail", report.count(Status::fail)},
                    {"skip", report.count(Status::skip)}};
  out["exit_status"] = report.exit_status();
  out["checks"] = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json rec;
    rec["name"] = c.name;
    rec["status"] = to_string(c.status);
    rec["measured"] = round15(c.measured);
    rec["tolerance"] = round15(c.tolerance);
    if (include_runtime) rec["runtime_ms"] = round15(c.runtime_ms);
    rec["detail"] = c.detail;
    out["checks"].push_back(std::move(rec));
  }
  return out.dump(2) + "\n";
}

}  // namespace stheta
