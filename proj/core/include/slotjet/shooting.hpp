#pragma once

#include <cmath>
#include <iosfwd>
#include <vector>

#include "slotjet/free_boundary.hpp"
#include "slotjet/functional.hpp"
#include "slotjet/grid.hpp"

namespace slotjet {

struct SolveReport {
  double lambda_star = 0;
  double h = 0;
  double fit_residual = 0;
  double jump_median = 0;
  double jump_p90 = 0;
  double detachment_slope = 0;
  double energy = 0;
  long sweeps = 0;
  double dx = 0;
  bool converged = false;
};

struct ScanPoint {
  double lambda;
  double residual;
};

struct FitOptions {
  // NaN selects the default bracket: lambda_hi from h -> b+ capped at
  // 1e3*Q^2, lambda_lo from h -> L- capped at -(10 L/(L-b))^2.
  double lambda_lo = std::nan("");
  double lambda_hi = std::nan("");
  double lambda_tol = 1e-3;  // relative bracket width stop
  double fit_tol = -1;       // |k(0+)| stop; <0 selects dx
  double pad = -1;           // downstream extent past x=a; <0 selects 2L
  bool widen = false;        // widen explicit endpoints too (defaults always do)
  MinimizeOptions minimize;
  int max_bisections = 64;
};

struct FitResult {
  SolveReport report;
  GridField field;
  FreeBoundaryCurve curve;
  MinimizeReport last_minimize;
  std::vector<ScanPoint> scan;  // all (lambda, residual) evaluations
  bool scan_monotone = true;    // residual nonincreasing across the scan
};

// Bisection on the jump constant for the continuous-fit condition k(0+) = 0.
// Every iterate warm-starts the relaxation from the previous field. Throws
// BRACKET_INVALID when no sign change can be found even after widening.
FitResult fit_lambda(const DomainSpec& spec, double dx,
                     const FitOptions& opts = {});

struct CurveSample {
  double Q;
  double lambda;
  double h;
  double fit_residual;
  double jump_median;
};

struct LambdaQCurve {
  std::vector<CurveSample> samples;
  double b = 0, L = 0;
  double kappa_estimate = std::nan("");
  double lambda_under_estimate = std::nan("");
};

struct TraceResult {
  LambdaQCurve curve;
  std::vector<SolveReport> reports;
  bool monotone = false;  // strict increase of lambda along Q
};

// Fits lambda for each Q in increasing order, warm-starting the bracket and
// the field from the previous sample.
TraceResult trace(const DomainSpec& base, const std::vector<double>& q_list,
                  double dx, const FitOptions& opts = {});

struct KappaEstimate {
  double kappa = 0;        // lambda/Q^2 at the largest Q
  double kappa_model = 0;  // 1/(h-b)^2 - L^2/((L-h)^2 Q^2), same quantity
  double lambda_under = 0; // lambda at the smallest Q
  double q_max = 0;
};

// Requires >= 3 samples spanning a factor >= 4 in Q (INSUFFICIENT_SPAN).
KappaEstimate estimate_kappa(const LambdaQCurve& curve);

// CSV dump `Q,lambda,h,fit_residual,jump_median`.
void dump_lambda_q_csv(const LambdaQCurve& curve, std::ostream& os);

}  // namespace slotjet
