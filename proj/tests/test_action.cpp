#include "doctest.h"
#include "stheta/action.hpp"
#include "stheta/modularity.hpp"
#include "stheta/sampling.hpp"

using namespace stheta;

TEST_SUITE("action") {
  TEST_CASE("iota inverse") {
    const Characteristic chi = Characteristic::parse("1/3 2/3 1/3 0");
    CHECK(act_iota_inv(1, chi).canonical() == chi.canonical());
    CHECK(act_iota_inv(5, chi).canonical() == Characteristic::parse("1/3 2/3 2/3 0"));
    CHECK(act_iota_inv(-1, chi).canonical() == chi.conjugate_s().canonical());
    CHECK_THROWS_AS(act_iota_inv(3, chi), std::invalid_argument);
  }

  TEST_CASE("power family") {
    const Characteristic chi = Characteristic::parse("1/4 1/2 3/4 0");
    CHECK(act_power_family(SympMatrix(IntMatrix::identity(4), 4), chi, 4) == chi.canonical());
    // iota(a^{-1}) = diag(I, a I) sends s to a s
    CHECK(act_power_family(iota(3, 2, 4), chi, 4) == Characteristic::parse("1/4 1/2 1/4 0"));
    CHECK(act_power_family(iota(3, 2, 4) * iota(3, 2, 4), chi, 4) == chi.canonical());
    const SympMatrix odd(IntMatrix{{1, 0, 1, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}, 4);
    CHECK_THROWS_AS(act_power_family(odd, chi, 4), std::invalid_argument);
    CHECK_THROWS_AS(act_power_family(iota(3, 2, 4), Characteristic::parse("1/3 0 0 0"), 4), std::invalid_argument);

    Rng rng(1);
    for (int i = 0; i < 20; ++i) {
      const SympMatrix a = random_theta_group_word(rng, 2, 3).reduced(6) * iota(5, 2, 6);
      const SympMatrix b = random_theta_group_word(rng, 2, 2).reduced(6);
      const Characteristic c = random_characteristic(rng, 2, 6);
      CHECK(act_power_family(a * b, c, 6) == act_power_family(b, act_power_family(a, c, 6), 6));
    }
  }

  TEST_CASE("act_phi") {
    const Characteristic chi = Characteristic::parse("1/3 0 2/3 1/3");
    const ActionResult id = act_phi(SympMatrix(IntMatrix::identity(4), 18), chi);
    CHECK(id.multiplier.is_one());
    CHECK(id.chi_out == chi);
    CHECK_THROWS_AS(act_phi(SympMatrix(IntMatrix::identity(4), 8), Characteristic::parse("1/2 0 0 0")),
                    std::invalid_argument);
    // tJ (r, s) = (s, -r), kept modulo 2M^2/M
    const ActionResult j = act_phi(SympMatrix(form_J(2), 18), chi);
    CHECK(j.chi_out == Characteristic::parse("2/3 1/3 17/3 0"));
    CHECK(j.chi_out.canonical() == Characteristic::parse("2/3 1/3 2/3 0"));
  }

  TEST_CASE("act_phi agrees with gamma_multiplier on Gamma(2M^2)") {
    Rng rng(44);
    for (int i = 0; i < 20; ++i) {
      const SympMatrix g = random_gamma_word(rng, 18, 2, 2);
      const Characteristic chi = random_characteristic(rng, 2, 3);
      const ActionResult r = act_phi_reduced(g, chi, 3);
      CHECK(r.chi_out == chi.canonical());
      CHECK(r.multiplier == gamma_multiplier(g, chi, 18));
    }
  }

  TEST_CASE("act_phi composes with the Galois twist of constants") {
    Rng rng(45);
    for (int i = 0; i < 20; ++i) {
      const SympMatrix a = random_theta_group_word(rng, 2, 2).reduced(50) * iota(3, 2, 50);
      const SympMatrix b = iota(7, 2, 50) * random_theta_group_word(rng, 2, 2).reduced(50);
      const Characteristic chi = random_characteristic(rng, 2, 5);
      const ActionResult ab = act_phi_reduced(a * b, chi, 5);
      const ActionResult ra = act_phi_reduced(a, chi, 5);
      const ActionResult rb = act_phi_reduced(b, ra.chi_out, 5);
      CHECK(ab.chi_out == rb.chi_out);
      CHECK(ab.multiplier == ra.multiplier.pow(sympl_multiplier(b)->get_si()) * rb.multiplier);
    }
  }
}
