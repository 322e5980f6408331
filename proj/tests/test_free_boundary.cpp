#include <doctest.h>

#include <cmath>
#include <random>

#include "slotjet/error.hpp"
#include "slotjet/free_boundary.hpp"

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

template <class F>
GridField synthetic(const DomainSpec& s, double dx, F fn) {
  GridField f = build(s, dx, 2.0);
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i)
      f.psi[f.grid.idx(i, j)] = fn(f.grid.x(i), f.grid.y(j));
  return f;
}
}  // namespace

TEST_CASE("extract recovers plane level lines") {
  const DomainSpec s = friedman_case();
  GridField f = synthetic(s, 1.0 / 16, [](double, double y) { return y - 0.5; });
  const FreeBoundaryCurve c = extract(f);
  REQUIRE(c.size() > 10);
  for (std::size_t t = 0; t < c.size(); ++t)
    CHECK(c.ks[t] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(c.downstream_height == doctest::Approx(0.5));
  CHECK(c.max_backstep <= 1e-12);

  const double slope = std::tan(kPi / 5);
  GridField g = synthetic(s, 1.0 / 16, [&](double x, double y) {
    return y - x * slope;
  });
  const FreeBoundaryCurve c2 = extract(g);
  for (std::size_t t = 0; t < c2.size(); ++t) {
    if (c2.ks[t] > s.L - 0.2) break;  // near the lid the column may clip
    CHECK(c2.ks[t] == doctest::Approx(c2.xs[t] * slope).epsilon(1e-9));
  }
}

TEST_CASE("extract rejects double crossings and missing crossings") {
  const DomainSpec s = friedman_case();
  GridField wiggle = synthetic(s, 1.0 / 16, [](double, double y) {
    return std::sin(3.0 * y + 0.2);
  });
  CHECK_THROWS_WITH_AS(extract(wiggle), doctest::Contains("MULTI_CROSSING"),
                       Error);
  GridField positive = synthetic(s, 1.0 / 16, [](double, double y) {
    return y + 3.0;
  });
  CHECK_THROWS_WITH_AS(extract(positive), doctest::Contains("NO_CROSSING"),
                       Error);
}

TEST_CASE("jump residual on composite planes") {
  const DomainSpec s = friedman_case();
  // psi = y above, sqrt(2)*y below: |grad-|^2 - |grad+|^2 = 2 - 1 = 1.
  GridField f = synthetic(s, 1.0 / 16, [](double, double y) {
    return y < 0 ? std::sqrt(2.0) * y : y;
  });
  const FreeBoundaryCurve c = extract(f);
  const JumpStats ok = jump_residual(f, c, 1.0);
  CHECK(ok.used > 10);
  CHECK(ok.median == doctest::Approx(0.0).epsilon(1e-9));
  const JumpStats off = jump_residual(f, c, 0.0);
  CHECK(off.median == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("jump residual equals beta^2 - alpha^2 - lambda on planes") {
  const DomainSpec s = friedman_case();
  std::mt19937 rng(29);
  std::uniform_real_distribution<double> u(0.5, 2.5);
  for (int t = 0; t < 5; ++t) {
    const double alpha = u(rng), beta = u(rng), lambda = u(rng) - 1.5;
    GridField f = synthetic(s, 1.0 / 16, [&](double, double y) {
      return y < 0 ? beta * y : alpha * y;
    });
    const FreeBoundaryCurve c = extract(f);
    const JumpStats js = jump_residual(f, c, lambda);
    CHECK(js.median ==
          doctest::Approx(std::abs(beta * beta - alpha * alpha - lambda))
              .epsilon(1e-8));
  }
}

TEST_CASE("fit residual reads the first column") {
  const DomainSpec s = friedman_case();
  GridField tilt = synthetic(s, 1.0 / 32, [](double x, double y) {
    return y - 0.6 * x;
  });
  const FreeBoundaryCurve c1 = extract(tilt);
  CHECK(std::abs(fit_residual(c1)) <= 0.6 / 32 + 1e-12);

  GridField high = synthetic(s, 1.0 / 32, [](double x, double y) {
    return y - 0.3 - x;
  });
  const FreeBoundaryCurve c2 = extract(high);
  CHECK(fit_residual(c2) == doctest::Approx(0.3).epsilon(0.05));
}

TEST_CASE("detachment slope from least squares") {
  const DomainSpec s = friedman_case();
  const double slope = std::tan(kPi / 5);
  GridField f = synthetic(s, 1.0 / 32, [&](double x, double y) {
    return y - slope * x;
  });
  const FreeBoundaryCurve c = extract(f);
  CHECK(detachment_slope(c, 8) == doctest::Approx(slope).epsilon(1e-9));

  GridField q = synthetic(s, 1.0 / 32, [](double x, double y) {
    return y - x * x;
  });
  const FreeBoundaryCurve cq = extract(q);
  CHECK(std::abs(detachment_slope(cq, 6)) <= 0.25);
  CHECK_THROWS_WITH_AS(detachment_slope(cq, 2), doctest::Contains("SLOPE_WINDOW"),
                       Error);
}

TEST_CASE("sandwich bound holds on the exact profiles") {
  const DomainSpec s = friedman_case();
  const Coefficients c = make_coefficients(s, -0.5);
  GridField prof = synthetic(s, 1.0 / 16, [&](double, double y) {
    return y <= c.h ? c.lambda1 * (y - c.h) : c.lambda2 * (y - c.h);
  });
  CHECK(sandwich_check(prof, c).violations == 0);
  GridField lin = synthetic(s, 1.0 / 16, [](double, double y) { return y; });
  const SandwichReport rep = sandwich_check(lin, c);
  CHECK(rep.max_upper_violation == 0.0);
}

TEST_CASE("asymptotics report is exact on composites") {
  const DomainSpec s = friedman_case();
  const Coefficients c = make_coefficients(s, -0.5);
  auto composite = [&](double x, double y) {
    if (y <= 0 && x > 0)
      return s.Q * (y * std::cos(s.theta) - x * std::sin(s.theta)) / s.d2();
    if (x < 0) return y;
    return y <= c.h ? c.lambda1 * (y - c.h) : c.lambda2 * (y - c.h);
  };
  GridField f = synthetic(s, 1.0 / 16, composite);
  const AsymptoticsReport r0 = asymptotics_check(f, c, s);
  CHECK(r0.downstream == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r0.upstream == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(r0.slot == doctest::Approx(0.0).epsilon(1e-12));

  GridField g = synthetic(s, 1.0 / 16, [&](double x, double y) {
    return composite(x, y) + 0.01;
  });
  const AsymptoticsReport r1 = asymptotics_check(g, c, s);
  CHECK(r1.downstream == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(r1.upstream == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(r1.slot == doctest::Approx(0.01).epsilon(1e-9));
}
