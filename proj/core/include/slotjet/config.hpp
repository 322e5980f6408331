#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slotjet/geometry.hpp"

namespace slotjet {

// Flat key=value run configuration (one pair per line, '#' comments).
// Unknown keys are rejected with UNKNOWN_KEY:<key>.
struct RunConfig {
  std::optional<double> a, b, theta, Q, L, mu, rho_plus, rho_minus;
  std::optional<double> dx, pad, tol, fit_tol, lambda_tol, lambda_lo,
      lambda_hi, omega, lambda;
  std::optional<long> max_sweeps, trace_every, slope_window;
  std::vector<double> q_list;
  std::string out;

  // Throws MISSING_KEY:<name> when a geometry field is absent. require_q
  // additionally demands Q.
  DomainSpec to_spec(bool require_q) const;
  double require_dx() const;
};

RunConfig parse_config(std::istream& is);
RunConfig parse_config_file(const std::string& path);

}  // namespace slotjet
