#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "slotjet/closed_form.hpp"
#include "slotjet/functional.hpp"
#include "slotjet/grid.hpp"

namespace slotjet {

// Sampled graph y = k(x) of the interface, one sample per grid column with
// x > 0, obtained by linear interpolation of the sign change along the
// column.
struct FreeBoundaryCurve {
  std::vector<double> xs;
  std::vector<double> ks;
  double fit_point = 0;          // k at the first positive column
  double downstream_height = 0;  // mean k over the last 10% of columns
  double detachment_slope = 0;   // least-squares slope over the default window
  double max_backstep = 0;       // worst decrease of k between columns

  std::size_t size() const { return xs.size(); }
};

// Throws MULTI_CROSSING when a column changes sign more than once and
// NO_CROSSING when the interface left the truncation window.
FreeBoundaryCurve extract(const GridField& f);

struct JumpStats {
  double median = 0;
  double p90 = 0;
  std::size_t used = 0;
  std::size_t skipped = 0;
};

// Statistics of |(|grad psi^-|^2 - |grad psi^+|^2) - lambda| along the curve.
// Samples closer than 3*dx to a wall or to the trailing-edge ball are
// excluded; NO_STENCIL samples are skipped and counted.
JumpStats jump_residual(const GridField& f, const FreeBoundaryCurve& c,
                        double lambda);

// Signed height of the interface start above the leading edge.
double fit_residual(const FreeBoundaryCurve& c);

// Least-squares slope of the first m samples (affine fit). Requires m >= 3.
double detachment_slope(const FreeBoundaryCurve& c, int m);

struct SandwichReport {
  double max_lower_violation = 0;
  double max_upper_violation = 0;
  long violations = 0;
  double tol = 0;
};

// Violations of lambda2*(y-h) - tol <= psi^+ <= y + tol at tol = 3*dx*lambda2
// over nodes with y > 0. The band influenced by the left-lid truncation data
// (x < max(-mu+1, -L)) is excluded: the bound belongs to the full-height
// domain and the lid data pollutes it at any fixed truncation.
SandwichReport sandwich_check(const GridField& f, const Coefficients& c);

struct AsymptoticsReport {
  double downstream = 0;
  double upstream = 0;
  double slot = 0;
};

// Sup deviations from the exact profiles over three interior bands:
// downstream (last 10% of columns), upstream (mid-band of the left arm), and
// mid-depth of the slot. Bands keep 3*dx clear of walls.
AsymptoticsReport asymptotics_check(const GridField& f, const Coefficients& c,
                                    const DomainSpec& spec);

// CSV dumps: curve `x,k` and diagnostics `name,value`.
void dump_curve_csv(const FreeBoundaryCurve& c, std::ostream& os);
void dump_diagnostics_csv(const std::vector<std::pair<std::string, double>>& rows,
                          std::ostream& os);

}  // namespace slotjet
