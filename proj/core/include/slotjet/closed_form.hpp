#pragma once

#include "slotjet/functional.hpp"
#include "slotjet/geometry.hpp"

namespace slotjet {

struct HarmonicSolve {
  double Q = 0;         // flux making the jump constant vanish
  double residual = 0;  // defining-equation residual at the returned Q
  int iterations = 0;
};

// Flux with zero jump constant in the height-L truncated domain: the unique
// root of f(Q) = d2^(pi/theta) Q^(1-pi/theta) - L + (L-b)^(pi/theta)
// (L+Q)^(1-pi/theta), which is strictly decreasing in Q.
HarmonicSolve harmonic_flux_truncated(double a, double b, double theta,
                                      double L);

// Flux with zero jump constant in the unbounded domain: the unique positive
// root of (pi/theta - 1) Q^(pi/theta) + (b pi/theta) Q^(pi/theta - 1)
// = d2^(pi/theta).
HarmonicSolve harmonic_flux(double a, double b, double theta);

enum class Region { downstream, upstream, slot };

// Exact far-field profiles: downstream two-slope profile across the
// interface, the upstream uniform-stream profile, and the straight jet in
// the slot. Throws REGION_MISMATCH when the point is outside the named band.
double asymptotic_profile(const DomainSpec& spec, const Coefficients& c,
                          Region region, double x, double y);

}  // namespace slotjet
