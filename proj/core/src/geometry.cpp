#include "slotjet/geometry.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "slotjet/error.hpp"

namespace slotjet {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double scale_of(const DomainSpec& s) {
  return std::max({1.0, s.a, s.b, s.L, s.mu, s.Q});
}

// Distance from p to the segment [u, v].
double seg_dist(double px, double py, double ux, double uy, double vx,
                double vy) {
  const double dx = vx - ux, dy = vy - uy;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((px - ux) * dx + (py - uy) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const double cx = ux + t * dx, cy = uy + t * dy;
  return std::hypot(px - cx, py - cy);
}

}  // namespace

const char* to_string(Role r) {
  switch (r) {
    case Role::N1: return "N1";
    case Role::S1: return "S1";
    case Role::N2: return "N2";
    case Role::S2: return "S2";
    case Role::Smu: return "Smu";
    case Role::SigmaLmu: return "SigmaLmu";
    case Role::NL: return "NL";
    case Role::Interior: return "Interior";
    case Role::Outside: return "Outside";
  }
  return "?";
}

const DomainSpec& validate(const DomainSpec& spec) {
  if (!(spec.a > 0)) fail("A_NONPOSITIVE", "require a > 0");
  if (!(spec.b >= 0)) fail("B_NEGATIVE", "require b >= 0");
  if (!(spec.theta > 0 && spec.theta <= kPi / 2 + 1e-15))
    fail("THETA_RANGE", "require 0 < theta <= pi/2");
  if (!(spec.Q > 0)) fail("Q_NONPOSITIVE", "require Q > 0");
  if (!(spec.L > spec.b)) fail("L_RANGE", "require L > b");
  if (!(spec.mu > 1)) fail("MU_RANGE", "require mu > 1");
  if (!(spec.rho_plus > 0 && spec.rho_minus > 0))
    fail("RHO_NONPOSITIVE", "require rho_plus, rho_minus > 0");
  if (!(spec.d2() > 0)) fail("SLOT_DEGENERATE", "require a*sin(theta) > b*cos(theta)");
  // The slot strip must stay inside the truncation window {x > -mu}: its
  // left wall reaches x = -mu*cot(theta) at the floor.
  if (spec.cot() > 1 + 1e-12)
    fail("SLOT_EXITS_TRUNCATION", "require theta >= pi/4 so the slot stays right of x=-mu");
  return spec;
}

bool inside_open(const DomainSpec& spec, double x, double y) {
  if (x <= -spec.mu || y <= -spec.mu || y >= spec.L) return false;
  const double w = x * std::sin(spec.theta) - y * std::cos(spec.theta);
  if (y > 0) return y > spec.b || w < spec.d2();
  return w > 0 && w < spec.d2();
}

namespace {

struct WallHit {
  Role role;
  double dist;
};

// Distances to the seven wall pieces of the truncated domain, in precedence
// order. Downstream rays are capped at a large abscissa.
std::array<WallHit, 7> wall_hits(const DomainSpec& s, double x, double y) {
  const double inf = std::numeric_limits<double>::infinity();
  const double far = std::max({std::abs(x) * 2 + 10, s.a + 10, s.mu + 10});
  std::array<WallHit, 7> h{};
  h[0] = {Role::N1, seg_dist(x, y, -s.mu, 0, 0, 0)};
  h[1] = {Role::S1, seg_dist(x, y, s.s1_x(-s.mu), -s.mu, 0, 0)};
  h[2] = {Role::N2, seg_dist(x, y, s.a, s.b, far, s.b)};
  h[3] = {Role::S2, seg_dist(x, y, s.s2_x(-s.mu), -s.mu, s.a, s.b)};
  h[4] = {Role::Smu, seg_dist(x, y, s.s1_x(-s.mu), -s.mu, s.s2_x(-s.mu), -s.mu)};
  h[5] = {Role::SigmaLmu, seg_dist(x, y, -s.mu, 0, -s.mu, s.L)};
  h[6] = {Role::NL, seg_dist(x, y, -s.mu, s.L, far, s.L)};
  (void)inf;
  return h;
}

}  // namespace

Role classify(const DomainSpec& spec, double x, double y, double tol) {
  if (tol <= 0) tol = 32 * std::numeric_limits<double>::epsilon() * scale_of(spec);
  const auto hits = wall_hits(spec, x, y);
  for (const auto& h : hits)
    if (h.dist <= tol) return h.role;
  return inside_open(spec, x, y) ? Role::Interior : Role::Outside;
}

double wall_distance(const DomainSpec& spec, double x, double y) {
  const auto hits = wall_hits(spec, x, y);
  double d = hits[0].dist;
  for (const auto& h : hits) d = std::min(d, h.dist);
  return d;
}

Role nearest_wall(const DomainSpec& spec, double x, double y) {
  const auto hits = wall_hits(spec, x, y);
  Role best = hits[0].role;
  double d = hits[0].dist;
  for (const auto& h : hits)
    if (h.dist < d) {
      d = h.dist;
      best = h.role;
    }
  return best;
}

double dirichlet_value(const DomainSpec& spec, Role role, double x, double y) {
  const double Q = spec.Q, L = spec.L, mu = spec.mu;
  switch (role) {
    case Role::N1:
      // Ramp from L at the left lid down to 0 one unit in, then 0 up to A.
      return std::clamp(std::max(L - (x + mu) * L, 0.0), 0.0, L);
    case Role::S1:
      // Ramp from -Q at the slot floor up to 0 one unit in.
      return std::clamp(std::min(-Q + (y + mu) * Q, 0.0), -Q, 0.0);
    case Role::N2:
    case Role::S2:
    case Role::Smu:
      return -Q;
    case Role::NL:
    case Role::SigmaLmu:
      return L;
    case Role::Interior:
    case Role::Outside:
      break;
  }
  fail("ROLE_NOT_BOUNDARY", std::string("no Dirichlet data for role ") + to_string(role));
}

}  // namespace slotjet
