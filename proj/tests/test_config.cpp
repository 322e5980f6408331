#include <doctest.h>

#include <sstream>

#include "slotjet/config.hpp"
#include "slotjet/error.hpp"

using namespace slotjet;

TEST_CASE("config parses keys, comments, and lists") {
  std::istringstream in(
      "# geometry\n"
      "a = 1\n"
      "b=0\n"
      "theta = 1.5707963267948966\n"
      "L = 2  # lid\n"
      "mu = 2\n"
      "Q = 1.2807764064\n"
      "dx = 0.03125\n"
      "Q_list = 0.5, 1, 2, 4\n"
      "out = results\n");
  const RunConfig cfg = parse_config(in);
  CHECK(cfg.a == 1.0);
  CHECK(cfg.q_list.size() == 4);
  CHECK(cfg.q_list[3] == 4.0);
  CHECK(cfg.out == "results");
  const DomainSpec s = cfg.to_spec(true);
  CHECK(s.Q == doctest::Approx(1.2807764064));
  CHECK(cfg.require_dx() == doctest::Approx(0.03125));
}

TEST_CASE("config rejects unknown, duplicate, and malformed keys") {
  {
    std::istringstream in("a=1\nwhat=2\n");
    CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("UNKNOWN_KEY:what"),
                         Error);
  }
  {
    std::istringstream in("a=1\na=2\n");
    CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("DUPLICATE_KEY:a"),
                         Error);
  }
  {
    std::istringstream in("a=fast\n");
    CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("BAD_VALUE:a"),
                         Error);
  }
  {
    std::istringstream in("a 1\n");
    CHECK_THROWS_WITH_AS(parse_config(in), doctest::Contains("BAD_LINE"), Error);
  }
}

TEST_CASE("missing keys are reported by name") {
  std::istringstream in("a=1\nb=0\ntheta=1.5707963267948966\nL=2\nmu=2\n");
  const RunConfig cfg = parse_config(in);
  CHECK_THROWS_WITH_AS(cfg.to_spec(true), doctest::Contains("MISSING_KEY:Q"),
                       Error);
  CHECK_THROWS_WITH_AS(cfg.require_dx(), doctest::Contains("MISSING_KEY:dx"),
                       Error);
  CHECK_NOTHROW(cfg.to_spec(false));
}
