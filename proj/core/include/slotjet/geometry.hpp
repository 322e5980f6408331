#pragma once

#include <cmath>

namespace slotjet {

// Geometry and physics of the slot-injection domain.
//
// The flow field is bounded below/left by the ground plate N1 = {(x,0), x<=0}
// and the slot wall S1 = {x = y*cot(theta), y<=0}, and above/right by the
// upper blade N2 = {(x,b), x>=a} and slot wall S2 = {x = (y-b)*cot(theta)+a,
// y<=b}. The leading edge is A=(0,0), the trailing edge B=(a,b). Truncation:
// top lid NL at y=L, left lid sigma at x=-mu, slot floor Smu at y=-mu. Q is
// the injected flux already scaled by 1/sqrt(rho_minus); the upstream speed
// is normalized to 1/sqrt(rho_plus).
struct DomainSpec {
  double a = 1.0;
  double b = 0.0;
  double theta = 1.5707963267948966;  // inclination, (0, pi/2]
  double Q = 1.0;
  double L = 2.0;
  double mu = 2.0;
  double rho_plus = 1.0;
  double rho_minus = 1.0;

  double d2() const { return a * std::sin(theta) - b * std::cos(theta); }
  double cot() const { return std::cos(theta) / std::sin(theta); }
  // Wall abscissae as functions of height.
  double s1_x(double y) const { return y * cot(); }
  double s2_x(double y) const { return (y - b) * cot() + a; }
};

// Node/point classification. Boundary tags take precedence over Interior in
// the listed order; corner ties go to the earlier tag.
enum class Role : unsigned char {
  N1,
  S1,
  N2,
  S2,
  Smu,
  SigmaLmu,
  NL,
  Interior,
  Outside
};

const char* to_string(Role r);
inline bool is_wall(Role r) { return r != Role::Interior && r != Role::Outside; }

// Returns spec unchanged if all invariants hold, otherwise throws Error with
// the first violated invariant's name (e.g. SLOT_DEGENERATE).
const DomainSpec& validate(const DomainSpec& spec);

// Strict interior of the truncated domain (unbounded downstream).
bool inside_open(const DomainSpec& spec, double x, double y);

// Classifies a point. `tol` is the distance within which a point counts as
// lying on a wall; tol <= 0 selects a tiny scale-relative default.
Role classify(const DomainSpec& spec, double x, double y, double tol = 0.0);

// Distance to the nearest wall segment and its tag.
double wall_distance(const DomainSpec& spec, double x, double y);
Role nearest_wall(const DomainSpec& spec, double x, double y);

// Exact Dirichlet data of the admissible set on the given wall. Throws
// ROLE_NOT_BOUNDARY for Interior/Outside.
double dirichlet_value(const DomainSpec& spec, Role role, double x, double y);

}  // namespace slotjet
