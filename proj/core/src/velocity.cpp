#include "slotjet/velocity.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace slotjet {

namespace {

// One-dimensional derivative at node k along a grid line, using only nodes of
// the same strict sign. Returns false when fewer than two usable nodes align.
bool line_derivative(const GridField& f, int i, int j, bool along_x,
                     double* out) {
  const Grid& g = f.grid;
  const std::size_t n0 = g.idx(i, j);
  const double v0 = f.psi[n0];
  const bool neg = v0 < 0;
  auto at = [&](int s) -> const double* {
    const int ii = along_x ? i + s : i;
    const int jj = along_x ? j : j + s;
    if (ii < 0 || ii >= g.nx || jj < 0 || jj >= g.ny) return nullptr;
    const std::size_t n = g.idx(ii, jj);
    if (f.role[n] == Role::Outside) return nullptr;
    return &f.psi[n];
  };
  auto same = [&](const double* p) {
    return p && ((*p < 0) == neg) && (*p != 0);
  };
  const double* m2 = at(-2);
  const double* m1 = at(-1);
  const double* p1 = at(+1);
  const double* p2 = at(+2);
  const double dx = g.dx;
  if (same(m1) && same(p1) && same(m2) && same(p2)) {
    *out = (*p1 - *m1) / (2 * dx);  // clear of the interface by two cells
    return true;
  }
  if (same(p1) && same(p2)) {
    *out = (-3 * v0 + 4 * *p1 - *p2) / (2 * dx);
    return true;
  }
  if (same(m1) && same(m2)) {
    *out = (3 * v0 - 4 * *m1 + *m2) / (2 * dx);
    return true;
  }
  if (same(p1)) {
    *out = (*p1 - v0) / dx;
    return true;
  }
  if (same(m1)) {
    *out = (v0 - *m1) / dx;
    return true;
  }
  return false;
}

}  // namespace

VelocityField recover(const GridField& f, const DomainSpec& spec) {
  VelocityField vel;
  vel.grid = f.grid;
  vel.u.assign(f.grid.size(), 0.0);
  vel.v.assign(f.grid.size(), 0.0);
  vel.phase.assign(f.grid.size(), 0);
  const double inv_sqrt_p = 1.0 / std::sqrt(spec.rho_plus);
  const double inv_sqrt_m = 1.0 / std::sqrt(spec.rho_minus);

  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) {
      const std::size_t n = f.grid.idx(i, j);
      if (f.role[n] != Role::Interior) continue;
      const double v0 = f.psi[n];
      if (v0 == 0) continue;
      double px = 0, py = 0;
      if (!line_derivative(f, i, j, true, &px)) continue;
      if (!line_derivative(f, i, j, false, &py)) continue;
      const double scale = v0 > 0 ? inv_sqrt_p : inv_sqrt_m;
      vel.u[n] = py * scale;
      vel.v[n] = -px * scale;
      vel.phase[n] = v0 > 0 ? 1 : -1;
    }
  return vel;
}

PositivityReport positivity_report(const VelocityField& vel,
                                   const GridField& f) {
  PositivityReport rep;
  const Grid& g = f.grid;
  const double dx = g.dx;
  const double eps_b = 3 * dx;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t n = g.idx(i, j);
      if (vel.phase[n] == 0) continue;
      const double x = g.x(i), y = g.y(j);
      if (wall_distance(f.spec, x, y) < 3 * dx) continue;
      if (std::hypot(x - f.spec.a, y - f.spec.b) < eps_b) continue;
      ++rep.checked_u;
      if (vel.u[n] <= 0) ++rep.u_nonpositive;
      if (std::abs(x) <= 2 * f.spec.a) {
        ++rep.checked_v;
        if (vel.v[n] <= 0) ++rep.v_nonpositive_near_slot;
      }
    }
  return rep;
}

void dump_velocity_csv(const VelocityField& vel, std::ostream& os) {
  os << "x,y,u,v,phase\n";
  char buf[128];
  for (int j = 0; j < vel.grid.ny; ++j)
    for (int i = 0; i < vel.grid.nx; ++i) {
      const std::size_t n = vel.grid.idx(i, j);
      if (vel.phase[n] == 0) continue;
      std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%.9g,%d\n", vel.grid.x(i),
                    vel.grid.y(j), vel.u[n], vel.v[n], int(vel.phase[n]));
      os << buf;
    }
}

}  // namespace slotjet
