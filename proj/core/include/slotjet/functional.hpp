#pragma once

#include <iosfwd>
#include <vector>

#include "slotjet/grid.hpp"

namespace slotjet {

// Constants entering the energy for a given jump constant lambda. Built via
// make_coefficients so that lambda == lambda1^2 - lambda2^2 holds exactly.
struct Coefficients {
  double lambda = 0;
  double h = 0;  // asymptotic interface height, in (b, L)
  double lambda1 = 0, lambda2 = 0, lambda0 = 0;
};

// Unique h in (b, L) with lambda = Q^2/(h-b)^2 - L^2/(L-h)^2, by bisection on
// the strictly decreasing left-hand side; residual <= 1e-12 * max(1,|lambda|).
double solve_height(double lambda, double Q, double b, double L);

Coefficients make_coefficients(const DomainSpec& spec, double lambda);

// Sets interior nodes to the downstream two-slope profile for x >= 0 and to
// the upstream profile y for x < 0, clipped to the admissible box.
void initialize_profile(GridField& f, const Coefficients& c);

// Midpoint-rule energy over active cells; the phase indicator uses the
// cell-average sign. Deterministic compensated summation.
double energy(const GridField& f, const Coefficients& c);

// One lexicographic Gauss-Seidel pass. With omega == 1 every interior node is
// set to the exact minimizer of the energy restricted to that node (projected
// to its box); omega > 1 over-relaxes but falls back to the exact minimizer
// whenever the trial value would not decrease the energy. Returns the max
// node change. The energy never increases in either mode.
double relax_sweep(GridField& f, const Coefficients& c, double omega = 1.0);

// Initialization helper: one pass with the phase indicator lagged to the
// pre-update cell signs. Node moves can cross the sign barrier freely, which
// lets the interface migrate instead of pinning; there is no descent
// guarantee, so callers run this only to seed minimize.
double relax_lagged(GridField& f, const Coefficients& c, double omega = 1.0);

// Initialization helper: alternates fully converged solves of the quadratic
// problem with the indicator pattern frozen per cell, and pattern updates
// from the solved field. Stops when the pattern is stationary (or after
// max_outer rounds). Returns the number of pattern updates performed. The
// result is a canonical path-independent seed for minimize.
long relax_picard(GridField& f, const Coefficients& c, double omega,
                  double inner_tol, long max_inner, int max_outer = 60);

struct MinimizeOptions {
  double tol = -1;          // max node change per sweep; <0: 1e-8 * max(Q, L)
  long max_sweeps = 200000;
  double omega = 0;         // 0: auto from grid dimensions
  long trace_every = 1;
};

struct TracePoint {
  long sweep;
  double energy;
  double max_change;
};

struct MinimizeReport {
  long sweeps = 0;
  double max_change = 0;
  double final_energy = 0;  // exact recomputation on the final field
  bool converged = false;
  std::vector<TracePoint> trace;
};

// Sweeps until the max node change drops below tol or max_sweeps is hit. The
// recorded energy trace is nonincreasing by construction.
MinimizeReport minimize(GridField& f, const Coefficients& c,
                        const MinimizeOptions& opts = {});

// Worst violation of psi(x, y+dx) >= psi(x, y) over vertically adjacent
// in-domain node pairs (0 when perfectly monotone).
double monotone_y_violation(const GridField& f);

// Worst violation of psi(x+dx, y) <= psi(x, y); meaningful only in the
// strongly negative-lambda regime.
double monotone_x_violation(const GridField& f);

// CSV dump `sweep,energy,max_change`.
void dump_trace_csv(const MinimizeReport& r, std::ostream& os);

}  // namespace slotjet
