#include "doctest.h"
#include "json.hpp"
#include "stheta/harness.hpp"

using namespace stheta;
using nlohmann::json;

TEST_SUITE("harness") {
  TEST_CASE("config parsing") {
    const SuiteConfig d = parse_suite_config("{}");
    CHECK(d.primes == std::vector<long>{3, 5, 7});
    CHECK(d.tol_numeric == 1e-8);
    CHECK(d.theta_tol == 1e-12);
    CHECK(d.suites == known_suites());

    const SuiteConfig c = parse_suite_config(R"({"primes":[11],"seed":5,"suites":["primgen"],"tol_numeric":1e-6})");
    CHECK(c.primes == std::vector<long>{11});
    CHECK(c.seed == 5);
    CHECK(c.suites == std::vector<std::string>{"primgen"});
    CHECK(c.tol_numeric == 1e-6);

    CHECK_THROWS_AS(parse_suite_config("[1]"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config("{"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config(R"({"primes":[4]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config(R"({"primes":[2]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config(R"({"tol_numeric":-1})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config(R"({"suites":["nope"]})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config(R"({"colour":1})"), std::invalid_argument);
    CHECK_THROWS_AS(parse_suite_config(R"({"seed":"x"})"), std::invalid_argument);
  }

  TEST_CASE("empty selection") {
    SuiteConfig c;
    c.suites.clear();
    const Report r = run_suite(c);
    CHECK(r.checks.empty());
    CHECK(r.exit_status() == 0);
    const json j = json::parse(to_json(r));
    CHECK(j["summary"]["pass"] == 0);
    CHECK(j["exit_status"] == 0);
  }

  TEST_CASE("primgen suite report") {
    SuiteConfig c;
    c.suites = {"primgen"};
    const Report r = run_suite(c);
    CHECK(r.count(Status::fail) == 0);
    CHECK(r.count(Status::pass) == r.checks.size());
    CHECK(r.exit_status() == 0);
    const std::string a = to_json(r, false);
    const std::string b = to_json(run_suite(c), false);
    CHECK(a == b);
    const json j = json::parse(a);
    CHECK(j["seed"] == c.seed);
    for (const auto& check : j["checks"]) {
      CHECK(check.contains("name"));
      CHECK(check["status"] == "pass");
      CHECK_FALSE(check.contains("runtime_ms"));
    }
    CHECK(json::parse(to_json(r, true))["checks"][0].contains("runtime_ms"));
  }

  TEST_CASE("impossible tolerance fails") {
    SuiteConfig c;
    c.suites = {"theta"};
    c.tol_numeric = 1e-30;
    const Report r = run_suite(c);
    CHECK(r.count(Status::fail) > 0);
    CHECK(r.exit_status() == 1);
  }

  TEST_CASE("invalid config throws from run_suite") {
    SuiteConfig c;
    c.primes = {9};
    CHECK_THROWS_AS(run_suite(c), std::invalid_argument);
  }
}
