#include "slotjet/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "slotjet/error.hpp"

namespace slotjet {

namespace {

// Smallest node box covering the truncated domain plus one ghost ring on the
// walled sides. x=0 / y=0 are exact node coordinates by construction.
Grid make_lattice(const DomainSpec& spec, double dx, double x_max) {
  Grid g;
  g.dx = dx;
  const long n_mu = static_cast<long>(std::ceil(spec.mu / dx - 1e-12));
  g.ix0 = -(n_mu + 1);
  g.iy0 = -(n_mu + 1);
  const long i_hi = static_cast<long>(std::ceil(x_max / dx - 1e-12));
  const long j_hi = static_cast<long>(std::ceil(spec.L / dx - 1e-12)) + 1;
  g.nx = static_cast<int>(i_hi - g.ix0 + 1);
  g.ny = static_cast<int>(j_hi - g.iy0 + 1);
  return g;
}

}  // namespace

GridField build(const DomainSpec& spec_in, double dx, double pad) {
  validate(spec_in);
  if (!(dx > 0)) fail("GRID_TOO_COARSE", "dx must be positive");
  if (dx > spec_in.d2() / 8 * (1 + 1e-12))
    fail("GRID_TOO_COARSE", "slot must be resolved by >= 8 cells across");
  if (pad < 0) pad = 2 * spec_in.L;

  GridField f;
  f.spec = spec_in;
  // Snap the truncation extent up to a whole number of cells so the lids sit
  // on node lines; ramps and bands use the snapped value.
  const long n_mu = static_cast<long>(std::ceil(spec_in.mu / dx - 1e-12));
  f.mu_eff = n_mu * dx;
  f.spec.mu = f.mu_eff;
  f.x_max = spec_in.a + pad;
  f.grid = make_lattice(f.spec, dx, f.x_max);

  const Grid& g = f.grid;
  f.psi.assign(g.size(), 0.0);
  f.role.assign(g.size(), Role::Outside);
  f.lo.assign(g.size(), 0.0);
  f.hi.assign(g.size(), 0.0);

  const double on_tol = 1e-7 * dx;
  // First pass: exact classification (catches wall-aligned node lines).
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i), y = g.y(j);
      Role r = classify(f.spec, x, y, on_tol);
      if (r == Role::Interior && !inside_open(f.spec, x, y)) r = Role::Outside;
      f.role[g.idx(i, j)] = r;
    }
  // Second pass: staircase walls. An interior node whose axis neighbor sits
  // beyond a wall takes the nearest wall's tag (the outflow edge at x_max is
  // left free).
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (f.role[g.idx(i, j)] != Role::Interior) continue;
      const double x = g.x(i), y = g.y(j);
      const double nbr[4][2] = {
          {x + dx, y}, {x - dx, y}, {x, y + dx}, {x, y - dx}};
      for (const auto& p : nbr) {
        if (!inside_open(f.spec, p[0], p[1]) &&
            classify(f.spec, p[0], p[1], on_tol) == Role::Outside) {
          f.role[g.idx(i, j)] = nearest_wall(f.spec, x, y);
          break;
        }
      }
    }

  // Dirichlet data, admissible boxes, and the initial iterate.
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t n = g.idx(i, j);
      const double x = g.x(i), y = g.y(j);
      switch (f.role[n]) {
        case Role::Outside:
          f.psi[n] = 0;
          f.lo[n] = f.hi[n] = 0;
          break;
        case Role::Interior: {
          double lo = -f.spec.Q, hi = f.spec.L;
          if (x < 0 && y > 0) lo = 0;
          if (x < 0 && y < 0) hi = 0;
          f.lo[n] = lo;
          f.hi[n] = hi;
          f.psi[n] = std::clamp(y, lo, hi);
          break;
        }
        default: {
          const double v = dirichlet_value(f.spec, f.role[n], x, y);
          f.psi[n] = v;
          f.lo[n] = f.hi[n] = v;
        }
      }
    }

  // Cells entering the energy: all four corners inside the closed domain.
  f.cell_active.assign(static_cast<std::size_t>(g.nx - 1) * (g.ny - 1), 0);
  for (int cj = 0; cj + 1 < g.ny; ++cj)
    for (int ci = 0; ci + 1 < g.nx; ++ci) {
      const bool ok = f.role[g.idx(ci, cj)] != Role::Outside &&
                      f.role[g.idx(ci + 1, cj)] != Role::Outside &&
                      f.role[g.idx(ci, cj + 1)] != Role::Outside &&
                      f.role[g.idx(ci + 1, cj + 1)] != Role::Outside;
      f.cell_active[f.cell_idx(ci, cj)] = ok ? 1 : 0;
    }
  return f;
}

void project_to_box(GridField& f) {
  for (std::size_t n = 0; n < f.psi.size(); ++n)
    f.psi[n] = std::clamp(f.psi[n], f.lo[n], f.hi[n]);
}

namespace {

struct AxisFit {
  double deriv;
  int order;
};

// Derivative at t of the interpolating polynomial through up to 3 samples.
AxisFit poly_deriv(const double* ts, const double* ws, int n, double t) {
  if (n >= 3) {
    const double t0 = ts[0], t1 = ts[1], t2 = ts[2];
    const double d = ws[0] * (2 * t - t1 - t2) / ((t0 - t1) * (t0 - t2)) +
                     ws[1] * (2 * t - t0 - t2) / ((t1 - t0) * (t1 - t2)) +
                     ws[2] * (2 * t - t0 - t1) / ((t2 - t0) * (t2 - t1));
    return {d, 2};
  }
  return {(ws[1] - ws[0]) / (ts[1] - ts[0]), 1};
}

bool sign_ok(double v, Phase phase) {
  return phase == Phase::plus ? v > 0 : v < 0;
}

// One-sided derivative along one axis at coordinate `t`, scanning the line of
// nodes selected by `fixed`. Returns false if no usable stencil exists.
bool axis_derivative(const GridField& f, Phase phase, bool along_x, int line,
                     double t, AxisFit* out) {
  const Grid& g = f.grid;
  const int count = along_x ? g.nx : g.ny;
  const double origin = along_x ? g.x(0) : g.y(0);
  const int c = static_cast<int>(std::lround((t - origin) / g.dx));
  const int lo = std::max(0, c - 3), hi = std::min(count - 1, c + 3);
  if (lo >= hi) return false;

  auto usable = [&](int k) {
    const std::size_t n = along_x ? g.idx(k, line) : g.idx(line, k);
    return f.role[n] != Role::Outside && sign_ok(f.psi[n], phase);
  };
  auto coord = [&](int k) { return origin + k * g.dx; };

  // Pick the maximal consecutive usable run closest to t.
  int best_a = -1, best_b = -1;
  double best_d = std::numeric_limits<double>::infinity();
  int k = lo;
  while (k <= hi) {
    if (!usable(k)) {
      ++k;
      continue;
    }
    int a = k;
    while (k + 1 <= hi && usable(k + 1)) ++k;
    int bnd = k;
    ++k;
    if (bnd == a) continue;  // need at least two nodes
    double d = 0;
    if (t < coord(a)) d = coord(a) - t;
    else if (t > coord(bnd)) d = t - coord(bnd);
    if (d < best_d) {
      best_d = d;
      best_a = a;
      best_b = bnd;
    }
  }
  if (best_a < 0 || best_d > 1.6 * g.dx) return false;

  // Up to three run nodes nearest to t.
  int s = std::clamp(c - 1, best_a, std::max(best_a, best_b - 2));
  if (c <= best_a) s = best_a;
  else if (c >= best_b) s = std::max(best_a, best_b - 2);
  const int m = std::min(3, best_b - s + 1);
  double ts[3], ws[3];
  for (int q = 0; q < m; ++q) {
    ts[q] = coord(s + q);
    const std::size_t n = along_x ? g.idx(s + q, line) : g.idx(line, s + q);
    ws[q] = f.psi[n];
  }
  *out = poly_deriv(ts, ws, m, t);
  return true;
}

}  // namespace

GradientSample gradient(const GridField& f, double x, double y, Phase phase) {
  const Grid& g = f.grid;
  // Candidate lines bracketing the query point, nearest first.
  auto lines_near = [&](double t, double origin, int count) {
    std::array<int, 4> out{};
    const int base = static_cast<int>(std::floor((t - origin) / g.dx));
    const double frac = (t - origin) / g.dx - base;
    const int first = frac <= 0.5 ? base : base + 1;
    const int second = frac <= 0.5 ? base + 1 : base;
    out = {first, second, first - 1, second + 1};
    if (frac > 0.5) out = {first, second, first + 1, second - 1};
    for (auto& v : out) v = std::clamp(v, 0, count - 1);
    return out;
  };

  GradientSample result;
  AxisFit fx{}, fy{};
  bool got_x = false, got_y = false;
  for (int j : lines_near(y, g.y(0), g.ny)) {
    if (axis_derivative(f, phase, /*along_x=*/true, j, x, &fx)) {
      got_x = true;
      break;
    }
  }
  for (int i : lines_near(x, g.x(0), g.nx)) {
    if (axis_derivative(f, phase, /*along_x=*/false, i, y, &fy)) {
      got_y = true;
      break;
    }
  }
  if (!got_x || !got_y)
    fail("NO_STENCIL", "fewer than 2 same-sign nodes along an axis");
  result.gx = fx.deriv;
  result.gy = fy.deriv;
  result.order = std::min(fx.order, fy.order);
  return result;
}

double interpolate(const GridField& f, double x, double y) {
  const Grid& g = f.grid;
  const double eps = 1e-12 * g.dx;
  if (x < g.x(0) - eps || x > g.x(g.nx - 1) + eps || y < g.y(0) - eps ||
      y > g.y(g.ny - 1) + eps)
    fail("OUT_OF_HULL", "interpolation point outside the node lattice");
  int i = static_cast<int>(std::floor((x - g.x(0)) / g.dx));
  int j = static_cast<int>(std::floor((y - g.y(0)) / g.dx));
  i = std::clamp(i, 0, g.nx - 2);
  j = std::clamp(j, 0, g.ny - 2);
  const double tx = (x - g.x(i)) / g.dx, ty = (y - g.y(j)) / g.dx;
  const double v00 = f.psi[g.idx(i, j)], v10 = f.psi[g.idx(i + 1, j)];
  const double v01 = f.psi[g.idx(i, j + 1)], v11 = f.psi[g.idx(i + 1, j + 1)];
  return (1 - tx) * (1 - ty) * v00 + tx * (1 - ty) * v10 +
         (1 - tx) * ty * v01 + tx * ty * v11;
}

void dump_field_csv(const GridField& f, std::ostream& os) {
  os << "x,y,psi,role\n";
  char buf[128];
  for (int j = 0; j < f.grid.ny; ++j)
    for (int i = 0; i < f.grid.nx; ++i) {
      const std::size_t n = f.grid.idx(i, j);
      std::snprintf(buf, sizeof buf, "%.9g,%.9g,%.9g,%s\n", f.grid.x(i),
                    f.grid.y(j), f.psi[n], to_string(f.role[n]));
      os << buf;
    }
}

}  // namespace slotjet
