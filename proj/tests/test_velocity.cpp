#include <doctest.h>

#include <cmath>

#include "slotjet/velocity.hpp"

using namespace slotjet;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

TEST_CASE("uniform stream recovers (1, 0)") {
  DomainSpec s;
  s.a = 1;
  s.b = 0;
  s.theta = kPi / 2;
  s.Q = 1;
  s.L = 2;
  s.mu = 2;
  GridField f = build(s, 1.0 / 16, 2.0);
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i)
      f.psi[f.grid.idx(i, j)] = f.grid.y(j);
  const VelocityField vel = recover(f, s);
  const std::size_t n = f.grid.idx(f.grid.nx / 2, f.grid.ny - 4);
  CHECK(vel.phase[n] == 1);
  CHECK(vel.u[n] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(vel.v[n] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("slot jet recovers the inclined velocity") {
  DomainSpec s;
  s.a = 1;
  s.b = 0.2;
  s.theta = kPi / 3;
  s.Q = 0.9;
  s.L = 2;
  s.mu = 2;
  GridField f = build(s, s.d2() / 24, 2.0);
  const double st = std::sin(s.theta), ct = std::cos(s.theta);
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) {
      const double x = f.grid.x(i), y = f.grid.y(j);
      f.psi[f.grid.idx(i, j)] = s.Q * (y * ct - x * st) / s.d2() - 1e-9;
    }
  const VelocityField vel = recover(f, s);
  // Probe mid-slot.
  const double ys = -1.0;
  const double xs = 0.5 * (s.s1_x(ys) + s.s2_x(ys));
  const int i = static_cast<int>(std::lround(xs / f.grid.dx)) - f.grid.ix0;
  const int j = static_cast<int>(std::lround(ys / f.grid.dx)) - f.grid.iy0;
  const std::size_t n = f.grid.idx(i, j);
  REQUIRE(vel.phase[n] == -1);
  const double speed = s.Q / s.d2();
  CHECK(vel.u[n] == doctest::Approx(speed * ct).epsilon(1e-9));
  CHECK(vel.v[n] == doctest::Approx(speed * st).epsilon(1e-9));
}
