#include "doctest.h"
#include "stheta/cmfield.hpp"
#include "stheta/sampling.hpp"

using namespace stheta;
using cplx = std::complex<double>;

namespace {

const CMContext& context() {
  static const CMContext ctx = CMContext::build();
  return ctx;
}

IntMatrix h2(long p) {
  return IntMatrix{{1 - 2 * p, -2 * p, -2 * p, 0}, {0, 1 - 2 * p, 0, -2 * p}, {2 * p, 2 * p, 1, 0}, {2 * p, 4 * p, 2 * p, 1}};
}

IntMatrix h3(long p) {
  return IntMatrix{{1 + 2 * p, 6 * p, -2 * p, 4 * p},
                   {-4 * p, 1 - 2 * p, 4 * p, -2 * p},
                   {2 * p, -2 * p, 1 - 4 * p, 4 * p},
                   {-2 * p, -4 * p, -6 * p, 1}};
}

bool congruent(const CycloElem& a, const CycloElem& b, long m) {
  const CycloElem d = a - b;
  for (const auto& c : d.coeffs())
    if (c.get_den() != 1 || mod(c.get_num(), Integer(m)) != 0) return false;
  return true;
}

}  // namespace

TEST_SUITE("cm") {
  TEST_CASE("context") {
    const CMContext& c = context();
    CHECK(c.riemann_matrix == form_J(2).to_rational());
    CHECK(std::abs(c.theta_null) > 0.1);
    const Eigen::MatrixXcd d = act_siegel(SympMatrix(beta_matrix()), c.z0).Z() + c.z0.Z().conjugate();
    CHECK(d.cwiseAbs().maxCoeff() < 1e-10);
  }

  TEST_CASE("Riemann form entries") {
    const CMContext& c = context();
    CHECK(riemann_form(c.basis[0], c.basis[2], c) == -1);
    CHECK(riemann_form(c.basis[0], c.basis[1], c) == 0);
    CHECK(riemann_form(c.basis[3], c.basis[3], c) == 0);
  }

  TEST_CASE("representation map") {
    const CycloField f(5);
    CHECK(h_map(f.one()) == RationalMatrix::identity(4));
    CHECK(h_map(f.zeta(1)) == IntMatrix{{0, 0, -1, 1}, {-1, -1, 0, -1}, {1, 0, 0, 0}, {1, 1, 0, 0}}.to_rational());
    Rng rng(3);
    for (int i = 0; i < 10; ++i) {
      std::array<Integer, 5> a, b;
      for (auto& x : a) x = rng.integer(-4, 4);
      for (auto& x : b) x = rng.integer(-4, 4);
      const CycloElem x = from_coordinates(f, a), y = from_coordinates(f, b);
      CHECK(h_map(x * y) == h_map(x) * h_map(y));
      CHECK(h_map(x + y) == h_map(x) + h_map(y));
    }
  }

  TEST_CASE("reflex norm") {
    const CMContext& c = context();
    CHECK(reflex_norm(c.field.one()) == c.field.one());
    for (long p : {3L, 5L, 7L}) {
      const CycloElem z = c.zeta;
      CHECK(congruent(reflex_norm(paper_x1(c, p)), c.field.one() + (z + z.pow(3)) * Rational(2 * p), 2 * p * p));
      CHECK(congruent(reflex_norm(paper_x2(c, p)),
                      c.field.one() + (z + z.pow(2) * Rational(2) - z.pow(3)) * Rational(2 * p), 2 * p * p));
    }
  }

  TEST_CASE("matrix congruences") {
    const CMContext& c = context();
    for (long p : {3L, 5L, 7L}) {
      const Integer m = 2 * p * p;
      const GaloisActor a1 = GaloisActor::make(paper_x1(c, p), p);
      const GaloisActor a2 = GaloisActor::make(paper_x2(c, p), p);
      CHECK(a1.h_mod.entries().mod(m) == h2(p).mod(m));
      CHECK(a2.h_mod.entries().mod(m) == h3(p).mod(m));
      CHECK(mod(*sympl_multiplier(a1.h_mod), m) == mod(Integer(1 - 2 * p), m));
      CHECK(mod(*sympl_multiplier(a2.h_mod), m) == mod(Integer(1 - 2 * p), m));
      CHECK(membership(a1.h_mod, Group::G, m));
    }
  }

  TEST_CASE("Artin action examples") {
    const CMContext& c = context();
    for (long p : {3L, 5L, 7L}) {
      const Characteristic chi(p, {1, 0}, {0, 0});
      const ActionResult r = artin_action(paper_x1(c, p), p, chi, c);
      CHECK(r.chi_out == chi);
      CHECK(r.multiplier == RootOfUnity(Rational(-1, p)));
      // x = 1 mod 2p^2 acts trivially
      const ActionResult t = artin_action(c.field.one() + c.zeta * Rational(2 * p * p), p, chi, c);
      CHECK(t.multiplier.is_one());
      CHECK(t.chi_out == chi);
    }
    // N(1 + 2(zeta + zeta^2)) = 5
    const CycloElem x5 = c.field.one() + (c.zeta + c.zeta.pow(2)) * Rational(2);
    CHECK_THROWS_AS(artin_action(x5, 5, Characteristic(5, {1, 0}, {0, 0}), c), std::invalid_argument);
    CHECK_THROWS_AS(artin_action(paper_x1(c, 3), 3, Characteristic(5, {1, 0}, {0, 0}), c), std::invalid_argument);
  }

  TEST_CASE("Lemma 7.2 phases for p = 5") {
    const CMContext& c = context();
    const long p = 5;
    const GaloisActor a1 = GaloisActor::make(paper_x1(c, p), p);
    const GaloisActor a2 = GaloisActor::make(paper_x2(c, p), p);
    for (long code = 1; code < 625; code += 37) {
      const long a = code % 5, b = code / 5 % 5, cc = code / 25 % 5, d = code / 125;
      const Characteristic chi(p, {a, b}, {cc, d});
      const ActionResult r1 = artin_action(a1, chi);
      const ActionResult r2 = artin_action(a2, chi);
      CHECK(r1.chi_out == chi);
      CHECK(r2.chi_out == chi);
      const long k1 = -a * a + 2 * a * d - b * b - cc * cc - 2 * cc * d - 2 * d * d;
      const long k2 = -a * a + 4 * a * b - 4 * a * cc - 6 * a * d - b * b + 4 * b * cc - cc * cc + 2 * cc * d + 2 * d * d;
      CHECK(r1.multiplier == RootOfUnity(Rational(k1, p)));
      CHECK(r2.multiplier == RootOfUnity(Rational(k2, p)));
    }
  }

  TEST_CASE("criterion") {
    const BelongResult e = belong_criterion({1, 2, 2, 0, 0}, 7);
    CHECK(e.a == -1);
    CHECK(e.b == 0);
    CHECK(e.c == 0);
    CHECK(e.d == -2);
    CHECK(e.raw_value == -6);
    CHECK(e.value == 1);
    const BelongResult one = belong_criterion({1, 0, 0, 0, 0}, 3);
    CHECK(one.a == 1);
    CHECK(one.value == 0);
    const BelongResult x1 = belong_criterion({1, 2, 0, 0, 0}, 7);
    CHECK(x1.a == -1);
    CHECK(x1.b == -2);
    CHECK(x1.c == 2);
    CHECK(x1.d == 0);
    CHECK(x1.value == 0);
    // norm 5 is not prime to 2p for p = 5
    CHECK_THROWS_AS(belong_criterion({1, 2, 2, 0, 0}, 5), std::invalid_argument);
    CHECK_THROWS_AS(belong_criterion({1, 0, 0, 0, 0}, 9), std::invalid_argument);
  }
}
