#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "slotjet/error.hpp"
#include "slotjet/grid.hpp"

using namespace slotjet;

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;

DomainSpec friedman_case() {
  DomainSpec s;
  s.a = 1;
  s.b = 0;
  s.theta = kPi / 2;
  s.Q = 1;
  s.L = 2;
  s.mu = 2;
  return s;
}

// Overwrites interior values with an arbitrary function (no box clipping).
template <class F>
void fill(GridField& f, F fn) {
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i)
      f.psi[f.grid.idx(i, j)] = fn(f.grid.x(i), f.grid.y(j));
}
}  // namespace

TEST_CASE("build resolves the slot or refuses") {
  const DomainSpec s = friedman_case();
  CHECK_THROWS_WITH_AS(build(s, s.a / 4), doctest::Contains("GRID_TOO_COARSE"),
                       Error);
  const GridField f = build(s, s.a / 16);
  // Count interior nodes across the slot mouth row just below y=0.
  int j_row = -1;
  for (int j = 0; j < f.grid.ny; ++j)
    if (std::abs(f.grid.y(j) + f.grid.dx) < 1e-12) j_row = j;
  REQUIRE(j_row >= 0);
  int interior = 0;
  for (int i = 0; i < f.grid.nx; ++i)
    if (f.is_interior(i, j_row)) ++interior;
  CHECK(interior == 15);  // 16 cells across the unit slot
}

TEST_CASE("build puts exact data on aligned walls") {
  const DomainSpec s = friedman_case();
  const GridField f = build(s, 1.0 / 16);
  const Grid& g = f.grid;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t n = g.idx(i, j);
      if (f.role[n] == Role::NL) CHECK(f.psi[n] == s.L);
      if (f.role[n] == Role::N2) CHECK(f.psi[n] == -s.Q);
      if (f.role[n] == Role::Interior) {
        CHECK(f.psi[n] >= f.lo[n]);
        CHECK(f.psi[n] <= f.hi[n]);
        if (g.x(i) < 0 && g.y(j) > 0) {
          CHECK(f.lo[n] == 0.0);
          CHECK(f.hi[n] == s.L);
        }
      }
    }
}

TEST_CASE("gradient reproduces linear fields exactly") {
  const DomainSpec s = friedman_case();
  GridField f = build(s, 1.0 / 16);
  fill(f, [](double, double y) { return y; });
  const GradientSample g1 = gradient(f, 0.4, 0.9, Phase::plus);
  CHECK(g1.gx == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(g1.gy == doctest::Approx(1.0).epsilon(1e-12));

  fill(f, [](double, double y) { return y < 0 ? std::sqrt(2.0) * y : y; });
  const GradientSample g2 = gradient(f, 0.5, -1e-9, Phase::minus);
  CHECK(g2.gx == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(g2.gy == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
  const GradientSample g3 = gradient(f, 0.5, 1e-9, Phase::plus);
  CHECK(g3.gy == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gradient hits second order on a cubic") {
  // Independent oracle: differentiate the cubic by hand and compare at node
  // points for two spacings.
  const DomainSpec s = friedman_case();
  auto fn = [](double x, double y) {
    return 0.3 * x * x * x - 0.2 * x * x * y + 0.7 * x * y * y - y * y * y +
           0.4 * x * y + 1.1 * y + 2.0;
  };
  auto dfdx = [](double x, double y) {
    return 0.9 * x * x - 0.4 * x * y + 0.7 * y * y + 0.4 * y;
  };
  auto dfdy = [](double x, double y) {
    return -0.2 * x * x + 1.4 * x * y - 3 * y * y + 0.4 * x + 1.1;
  };
  double err[2];
  const double dxs[2] = {1.0 / 16, 1.0 / 32};
  for (int k = 0; k < 2; ++k) {
    GridField f = build(s, dxs[k]);
    fill(f, fn);
    const double px = 0.5, py = 1.0;  // node point in both lattices
    const GradientSample gg = gradient(f, px, py, Phase::plus);
    err[k] = std::max(std::abs(gg.gx - dfdx(px, py)),
                      std::abs(gg.gy - dfdy(px, py)));
    CHECK(gg.order == 2);
  }
  CHECK(err[1] <= err[0] / 3.0);  // ~4x per halving for a second-order stencil
}

TEST_CASE("gradient refuses a one-node phase") {
  const DomainSpec s = friedman_case();
  GridField f = build(s, 1.0 / 16);
  fill(f, [](double, double y) { return y; });  // nothing negative above y=0
  CHECK_THROWS_WITH_AS(gradient(f, 0.5, 1.0, Phase::minus),
                       doctest::Contains("NO_STENCIL"), Error);
}

TEST_CASE("interpolate is bilinear") {
  const DomainSpec s = friedman_case();
  GridField f = build(s, 1.0 / 16);
  fill(f, [](double x, double y) { return x * y; });
  const Grid& g = f.grid;
  CHECK(interpolate(f, g.x(3), g.y(5)) ==
        doctest::Approx(g.x(3) * g.y(5)).epsilon(1e-14));
  // Edge midpoint of values 0 and 1.
  fill(f, [&](double x, double) { return x == g.x(4) ? 1.0 : 0.0; });
  const double mid = 0.5 * (g.x(3) + g.x(4));
  CHECK(interpolate(f, mid, g.y(2)) == doctest::Approx(0.5));
  // Bilinear reproduces bilinear anywhere.
  fill(f, [](double x, double y) { return x * y; });
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> ux(g.x(0), g.x(g.nx - 1));
  std::uniform_real_distribution<double> uy(g.y(0), g.y(g.ny - 1));
  for (int t = 0; t < 50; ++t) {
    const double x = ux(rng), y = uy(rng);
    CHECK(interpolate(f, x, y) == doctest::Approx(x * y).epsilon(1e-12));
  }
  CHECK_THROWS_WITH_AS(interpolate(f, g.x(g.nx - 1) + 1.0, 0.0),
                       doctest::Contains("OUT_OF_HULL"), Error);
}

TEST_CASE("field dump carries the schema") {
  const DomainSpec s = friedman_case();
  const GridField f = build(s, 1.0 / 8);
  std::ostringstream os;
  dump_field_csv(f, os);
  const std::string text = os.str();
  CHECK(text.rfind("x,y,psi,role\n", 0) == 0);
  CHECK(text.find("Interior") != std::string::npos);
  CHECK(text.find("NL") != std::string::npos);
}
