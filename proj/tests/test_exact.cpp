#include <cmath>
#include <numbers>

#include "doctest.h"
#include "stheta/exact.hpp"
#include "stheta/sampling.hpp"

using namespace stheta;

TEST_SUITE("exact") {
  TEST_CASE("rational helpers") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("-4") == Rational(-4));
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
    CHECK(floor_of(Rational(-1, 3)) == -1);
    CHECK(frac_part(Rational(-1, 3)) == Rational(2, 3));
    CHECK(mod(Integer(-7), Integer(5)) == 3);
    CHECK(*inverse_mod(Integer(3), Integer(7)) == 5);
    CHECK_FALSE(inverse_mod(Integer(2), Integer(4)).has_value());
  }

  TEST_CASE("root of unity arithmetic") {
    RootOfUnity a(Rational(1, 3)), b(Rational(5, 6));
    CHECK((a * b).exponent() == Rational(1, 6));
    CHECK((a * a.inverse()).is_one());
    CHECK(a.pow(3).is_one());
    CHECK(std::abs(RootOfUnity(Rational(1, 4)).value() - std::complex<double>(0, 1)) < 1e-15);
  }

  TEST_CASE("cyclotomic multiplication") {
    CycloField f(5);
    CHECK(f.degree() == 4);
    CHECK(f.zeta(1) * f.one() == f.zeta(1));
    CHECK(f.zeta(1) * f.zeta(4) == f.one());
    CHECK((f.zeta(1) + f.zeta(4)) * (f.zeta(2) + f.zeta(3)) == -f.one());
    CHECK(f.zeta(5) == f.one());
    CHECK(f.zeta(-1) == f.zeta(4));
  }

  TEST_CASE("ring axioms on random elements") {
    Rng rng(11);
    for (long n : {5L, 8L, 12L, 25L}) {
      CycloField f(n);
      auto draw = [&] {
        std::vector<Rational> c;
        for (long i = 0; i < f.degree(); ++i) c.emplace_back(rng.integer(-4, 4), rng.integer(1, 3));
        return CycloElem(f, c);
      };
      for (int i = 0; i < 10; ++i) {
        CycloElem a = draw(), b = draw(), c = draw();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        if (!a.is_zero()) CHECK(a * a.inverse() == f.one());
      }
    }
  }

  TEST_CASE("galois conjugation") {
    CycloField f(5);
    CHECK(galois_conjugate(f.zeta(1), 2) == f.zeta(2));
    CHECK(galois_conjugate(galois_conjugate(f.zeta(1), 3), 2) == f.zeta(1));
    const CycloElem x1 = f.one() + f.zeta(1) * Rational(6);
    CHECK(galois_conjugate(x1, 3) == f.one() + f.zeta(3) * Rational(6));
    CHECK_THROWS_AS(galois_conjugate(f.zeta(1), 5), std::invalid_argument);

    Rng rng(3);
    CycloField f12(12);
    for (int i = 0; i < 10; ++i) {
      std::vector<Rational> c1, c2;
      for (long k = 0; k < f12.degree(); ++k) {
        c1.emplace_back(rng.integer(-3, 3));
        c2.emplace_back(rng.integer(-3, 3));
      }
      CycloElem a(f12, c1), b(f12, c2);
      for (long t : f12.units()) {
        CHECK(galois_conjugate(a * b, t) == galois_conjugate(a, t) * galois_conjugate(b, t));
        for (long u : f12.units())
          CHECK(galois_conjugate(galois_conjugate(a, t), u) == galois_conjugate(a, t * u % 12));
      }
    }
  }

  TEST_CASE("embeddings") {
    CycloField f(5);
    const auto z = cyclo_embed(f.zeta(1), 1, 1e-12);
    CHECK(std::abs(z - std::complex<double>(std::cos(2 * std::numbers::pi / 5), std::sin(2 * std::numbers::pi / 5))) < 1e-12);
    CHECK(std::abs(cyclo_embed(f.one(), 3, 1e-12) - 1.0) < 1e-12);
    CHECK(std::abs(cyclo_embed(f.zeta(1) + f.zeta(4), 1, 1e-12) - 0.6180339887498949) < 1e-12);
    CHECK_THROWS_AS(cyclo_embed(f.zeta(1), 1, 1e-30), std::invalid_argument);
    CHECK_THROWS_AS(cyclo_embed(f.zeta(1), 5, 1e-12), std::invalid_argument);
    const CycloElem a = f.zeta(1) * Rational(3) + f.one(), b = f.zeta(2) - f.zeta(3) * Rational(2);
    CHECK(std::abs(cyclo_embed(a * b, 2, 1e-12) - cyclo_embed(a, 2, 1e-12) * cyclo_embed(b, 2, 1e-12)) < 1e-11);
  }

  TEST_CASE("relative trace and norm") {
    CycloField f(25);
    const std::vector<long> h{1, 6, 11, 16, 21};
    CHECK(rel_trace_norm(f.zeta(1), h, TraceNorm::trace).is_zero());
    CHECK(rel_trace_norm(f.zeta(1) * Rational(3) + f.one(), h, TraceNorm::norm) ==
          f.zeta(5) * Rational(243) + f.one());
    CHECK(rel_trace_norm(f.one(), h, TraceNorm::trace) == f.rational(5));
    const std::vector<long> not_group{1, 6};
    CHECK_THROWS_AS(rel_trace_norm(f.one(), not_group, TraceNorm::trace), std::invalid_argument);
    const CycloElem n = rel_trace_norm(f.zeta(2) + f.zeta(7) * Rational(2), h, TraceNorm::norm);
    for (long t : h) CHECK(galois_conjugate(n, t) == n);
  }

  TEST_CASE("degrees") {
    CHECK(degree_over_rationals(CycloField(5).zeta(1)) == 4);
    CHECK(degree_over_rationals(CycloField(25).zeta(1)) == 20);
    CycloField f8(8);
    CHECK(degree_over_rationals(f8.zeta(1) + f8.zeta(7)) == 2);
    CHECK(degree_over_rationals(f8.rational(3)) == 1);
    CHECK(absolute_norm(CycloField(5).one() + CycloField(5).zeta(1) * Rational(2) +
                        CycloField(5).zeta(2) * Rational(2)) == 5);
  }

  TEST_CASE("rational matrices") {
    RationalMatrix m(2, 2);
    m(0, 0) = 2;
    m(0, 1) = 1;
    m(1, 0) = 1;
    m(1, 1) = 1;
    CHECK(m * m.inverse() == RationalMatrix::identity(2));
    CHECK(m.transpose() == m);
    RationalMatrix s(2, 2);
    CHECK_THROWS(s.inverse());
  }
}
