#include <doctest.h>

#include <cmath>

#include "slotjet/closed_form.hpp"
#include "slotjet/error.hpp"

using namespace slotjet;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("truncated zero-jump flux: quadratic reduction") {
  // theta=pi/2, L=2, b=0, a=1: 1/Q = 2 - 4/(2+Q) gives 2Q^2 - Q - 2 = 0.
  const HarmonicSolve s = harmonic_flux_truncated(1, 0, kPi / 2, 2);
  const double exact = (1 + std::sqrt(17.0)) / 4;
  CHECK(s.Q == doctest::Approx(exact).epsilon(1e-10));
  CHECK(std::abs(s.residual) <= 1e-12);
}

TEST_CASE("truncated flux approaches the unbounded one as L grows") {
  const double a = 1, b = 0.2, th = kPi / 3;
  const double q_inf = harmonic_flux(a, b, th).Q;
  const double q_mid = harmonic_flux_truncated(a, b, th, 10 * (b + a)).Q;
  const double q_big = harmonic_flux_truncated(a, b, th, 100 * (b + a)).Q;
  CHECK(std::abs(q_big - q_inf) / q_inf <= 0.01);
  // Monotone approach from the truncated side.
  CHECK(std::abs(q_big - q_inf) < std::abs(q_mid - q_inf));
}

TEST_CASE("unbounded zero-jump flux: closed cases") {
  CHECK(harmonic_flux(3, 0, kPi / 2).Q == doctest::Approx(3.0).epsilon(1e-10));
  // 16 = Q^2 + 6Q has the positive root 2.
  CHECK(harmonic_flux(4, 3, kPi / 2).Q == doctest::Approx(2.0).epsilon(1e-10));
  const HarmonicSolve s = harmonic_flux(1, 0.2, kPi / 3);
  CHECK(std::abs(s.residual) <= 1e-12);
}

TEST_CASE("flux roots are stable to bracket perturbation") {
  // Bisection from different seeds must land on the same root.
  const double q1 = harmonic_flux_truncated(1, 0, kPi / 2, 2).Q;
  const double q2 = harmonic_flux_truncated(1.0 + 1e-15, 0, kPi / 2, 2).Q;
  CHECK(std::abs(q1 - q2) <= 1e-10);
}

TEST_CASE("asymptotic profiles") {
  DomainSpec s;
  s.a = 1;
  s.b = 0.2;
  s.theta = kPi / 3;
  s.Q = 0.7;
  s.L = 4;
  s.mu = 2;
  validate(s);
  const Coefficients c = make_coefficients(s, -0.4);

  CHECK(asymptotic_profile(s, c, Region::downstream, 50, c.h) ==
        doctest::Approx(0.0));
  CHECK(asymptotic_profile(s, c, Region::downstream, 50, s.b + 1e-13) ==
        doctest::Approx(-s.Q).epsilon(1e-9));
  CHECK(asymptotic_profile(s, c, Region::upstream, -50, 1.3) ==
        doctest::Approx(1.3));
  // Slot profile vanishes on the lower slot wall x = y*cot(theta).
  const double y = -1.1;
  CHECK(asymptotic_profile(s, c, Region::slot, s.s1_x(y), y) ==
        doctest::Approx(0.0).epsilon(1e-12));
  CHECK(asymptotic_profile(s, c, Region::slot, s.s2_x(y), y) ==
        doctest::Approx(-s.Q).epsilon(1e-12));
  CHECK_THROWS_WITH_AS(asymptotic_profile(s, c, Region::downstream, 0, s.L + 1),
                       doctest::Contains("REGION_MISMATCH"), Error);
}
