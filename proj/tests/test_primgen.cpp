#include "doctest.h"
#include "stheta/primgen.hpp"
#include "stheta/sampling.hpp"

using namespace stheta;

TEST_SUITE("primgen") {
  TEST_CASE("surrogate tower over Q") {
    const CycloField f(8);
    const CycloElem x = f.zeta(1) + f.zeta(7), y = f.zeta(2);
    const AbelianTower t(8, {1, 3, 5, 7}, {1, 7}, x, y);
    CHECK(t.ell() == 2);
    CHECK(t.degree() == 4);
    CHECK(t.top_h() == std::vector<long>{1});
    CHECK(t.trace_to_mid(y).is_zero());
    CHECK(t.norm_to_mid(y * Rational(3) + f.one()) == f.rational(10));

    const CycloElem e = combine_trace(t, f.one(), f.one());
    CHECK(e == x + y * Rational(2));
    CHECK(is_primitive(e, t));
    CHECK(t.trace_to_mid(e) == x * Rational(2));

    const CycloElem n = combine_norm(t, 3, 1, 3, 1, 1, 1);
    CHECK(n == (x * Rational(3) + f.one()) * Rational(10) * (y * Rational(3) + f.one()).pow(-2));
    CHECK(is_primitive(n, t));

    CHECK_FALSE(is_primitive(x, t));
    CHECK_FALSE(is_primitive(f.rational(2), t));
    CHECK_THROWS_AS(combine_trace(t, f.zero(), f.one()), std::invalid_argument);
    CHECK_THROWS_AS(combine_trace(t, y, f.one()), std::invalid_argument);
    CHECK_THROWS_AS(combine_norm(t, 2, 1, 3, 1, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(combine_norm(t, 3, 1, 3, 0, 1, 1), std::invalid_argument);
  }

  TEST_CASE("degenerate tower with y in K(x)") {
    const CycloField f(8);
    const CycloElem x = f.zeta(1) + f.zeta(7);
    const AbelianTower t(8, {1, 3, 5, 7}, {1, 7}, x, x * Rational(3));
    CHECK(t.ell() == 1);
    CHECK(combine_trace(t, f.rational(2), f.one()) == x * Rational(2));
    CHECK(combine_norm(t, 3, 1, 5, 2, 2, 1) == (x * Rational(3) + f.one()).pow(2));
  }

  TEST_CASE("paper example in Q(zeta_25)") {
    // K(x) with x fixed by {1+5k}: take x = zeta_5, and y = zeta_25
    const CycloField f(25);
    std::vector<long> units = f.units();
    const CycloElem x = f.zeta(5);
    const AbelianTower t(25, units, {1, 6, 11, 16, 21}, x, f.zeta(1));
    CHECK(t.ell() == 5);
    CHECK(t.trace_to_mid(f.zeta(1)).is_zero());
    const CycloElem e = combine_trace(t, f.one(), f.rational(Rational(1, 5)));
    CHECK(e == x + f.zeta(1));
    CHECK(is_primitive(e, t));
    CHECK(t.norm_to_mid(f.zeta(1) * Rational(3) + f.one()) == f.zeta(5) * Rational(243) + f.one());
  }

  TEST_CASE("tower validation") {
    const CycloField f(8);
    CHECK_THROWS_AS(AbelianTower(8, {1, 3}, {1, 7}, f.zeta(1), f.zeta(1)), std::invalid_argument);
    CHECK_THROWS_AS(AbelianTower(8, {1, 3, 5, 7}, {1, 3}, f.zeta(1) + f.zeta(7), f.zeta(2)), std::invalid_argument);
    CHECK_THROWS_AS(AbelianTower(8, {1, 3, 5, 7}, {1, 7}, CycloField(5).zeta(1), f.zeta(2)), std::invalid_argument);
  }

  TEST_CASE("subgroups") {
    const auto subs = unit_subgroups(8);
    CHECK(subs.size() == 5);
    CHECK(subs.front() == std::vector<long>{1});
    CHECK(subs.back() == std::vector<long>{1, 3, 5, 7});
    const long gens[] = {6};
    CHECK(generated_subgroup(gens, 25) == std::vector<long>{1, 6, 11, 16, 21});
  }

  TEST_CASE("random towers") {
    Rng rng(77);
    for (long n : {8L, 12L, 15L, 16L, 20L, 24L}) {
      const AbelianTower t = random_tower(rng, n);
      const CycloField& f = t.x().field();
      const CycloElem e = combine_trace(t, f.rational(2), f.rational(Rational(1, 5)));
      CHECK(is_primitive(e, t));
      CHECK(t.trace_to_mid(e) == t.x() * Rational(2 * t.ell()));
      CHECK(is_primitive(combine_norm(t, 5, 2, -7, 3, 2, 1), t));
    }
  }

  TEST_CASE("Lemma 8.3 small cases") {
    for (long n : {5L, 9L, 12L})
      for (long k : {1L, 2L, 3L}) {
        const CycloField f(n);
        CHECK(degree_over_rationals((f.zeta(1) * Rational(3) + f.one()).pow(k)) == f.degree());
      }
  }
}
