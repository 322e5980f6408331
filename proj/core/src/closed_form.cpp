#include "slotjet/closed_form.hpp"

#include <cmath>
#include <limits>

#include "slotjet/error.hpp"

namespace slotjet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Bisection for a strictly decreasing f with automatic bracket expansion.
// Newton is avoided: the exponent pi/theta can be large and Q^(1-pi/theta)
// blows up toward Q -> 0.
template <class F>
HarmonicSolve bisect_decreasing(F f, double q_lo, double q_hi) {
  HarmonicSolve out;
  int it = 0;
  while (f(q_lo) < 0 && it++ < 200) q_lo *= 0.5;
  while (f(q_hi) > 0 && it++ < 200) q_hi *= 2.0;
  for (int k = 0; k < 200; ++k) {
    ++it;
    const double mid = 0.5 * (q_lo + q_hi);
    if (!(mid > q_lo && mid < q_hi)) break;
    if (f(mid) > 0) q_lo = mid; else q_hi = mid;
  }
  out.Q = 0.5 * (q_lo + q_hi);
  out.residual = f(out.Q);
  out.iterations = it;
  return out;
}

}  // namespace

HarmonicSolve harmonic_flux_truncated(double a, double b, double theta,
                                      double L) {
  DomainSpec probe;
  probe.a = a;
  probe.b = b;
  probe.theta = theta;
  probe.L = L;
  probe.Q = 1;
  probe.mu = 2;
  validate(probe);
  const double p = kPi / theta;
  const double d2 = probe.d2();
  auto f = [&](double Q) {
    return std::pow(d2, p) * std::pow(Q, 1 - p) - L +
           std::pow(L - b, p) * std::pow(L + Q, 1 - p);
  };
  return bisect_decreasing(f, std::max(1e-8, d2 * 1e-3), std::max(1.0, 8 * (L + a)));
}

HarmonicSolve harmonic_flux(double a, double b, double theta) {
  DomainSpec probe;
  probe.a = a;
  probe.b = b;
  probe.theta = theta;
  probe.L = std::max(2.0, 2 * b + 1);
  probe.Q = 1;
  probe.mu = 2;
  validate(probe);
  const double p = kPi / theta;
  const double rhs = std::pow(probe.d2(), p);
  // The left side is strictly increasing in Q > 0; negate for the shared
  // decreasing-bisection helper.
  auto f = [&](double Q) {
    return rhs - ((p - 1) * std::pow(Q, p) + b * p * std::pow(Q, p - 1));
  };
  return bisect_decreasing(f, std::max(1e-8, probe.d2() * 1e-3),
                           std::max(1.0, 8 * (a + b + 1)));
}

double asymptotic_profile(const DomainSpec& spec, const Coefficients& c,
                          Region region, double x, double y) {
  switch (region) {
    case Region::downstream:
      if (!(y > spec.b && y < spec.L))
        fail("REGION_MISMATCH", "downstream profile needs b < y < L");
      return y <= c.h ? c.lambda1 * (y - c.h) : c.lambda2 * (y - c.h);
    case Region::upstream:
      if (!(y > 0 && y < spec.L))
        fail("REGION_MISMATCH", "upstream profile needs 0 < y < L");
      return y;
    case Region::slot: {
      const double w = x * std::sin(spec.theta) - y * std::cos(spec.theta);
      if (!(y <= 0 && w >= -1e-12 && w <= spec.d2() + 1e-12))
        fail("REGION_MISMATCH", "slot profile needs a point in the slot strip");
      return spec.Q * (y * std::cos(spec.theta) - x * std::sin(spec.theta)) /
             spec.d2();
    }
  }
  fail("REGION_MISMATCH", "unknown region");
}

}  // namespace slotjet
