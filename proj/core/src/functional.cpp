#include "slotjet/functional.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "slotjet/error.hpp"

namespace slotjet {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double solve_height(double lambda, double Q, double b, double L) {
  if (!(Q > 0) || !(L > b)) fail("BAD_HEIGHT_PROBLEM", "require Q > 0 and L > b");
  auto fvalue = [&](double h) {
    const double p = Q / (h - b), m = L / (L - h);
    return p * p - m * m;
  };
  double lo = b, hi = L;
  double best = 0.5 * (b + L);
  double best_err = std::numeric_limits<double>::infinity();
  const double want = 1e-12 * std::max(1.0, std::abs(lambda));
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (!(mid > lo && mid < hi)) break;
    const double err = fvalue(mid) - lambda;
    if (std::abs(err) < best_err) {
      best_err = std::abs(err);
      best = mid;
    }
    if (best_err <= want) break;
    // f is strictly decreasing on (b, L).
    if (err > 0) lo = mid; else hi = mid;
  }
  return best;
}

Coefficients make_coefficients(const DomainSpec& spec, double lambda) {
  Coefficients c;
  c.h = solve_height(lambda, spec.Q, spec.b, spec.L);
  c.lambda1 = spec.Q / (c.h - spec.b);
  c.lambda2 = spec.L / (spec.L - c.h);
  c.lambda0 = std::min(c.lambda1, c.lambda2);
  c.lambda = c.lambda1 * c.lambda1 - c.lambda2 * c.lambda2;
  return c;
}

void initialize_profile(GridField& f, const Coefficients& c) {
  const Grid& g = f.grid;
  const DomainSpec& s = f.spec;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t n = g.idx(i, j);
      if (f.role[n] != Role::Interior) continue;
      const double x = g.x(i), y = g.y(j);
      double v;
      if (x >= 0) {
        v = y <= c.h ? c.lambda1 * (y - c.h) : c.lambda2 * (y - c.h);
      } else {
        // Upstream profile y, floored by the truncation ramps so the start
        // lies in the monotone-in-y cone together with the wall data.
        v = y;
        if (y > 0) v = std::max(v, s.L * (1.0 - (x + s.mu)));
        else v = std::max(v, s.Q * (y + s.mu - 1.0));
      }
      f.psi[n] = std::clamp(v, f.lo[n], f.hi[n]);
    }
  // Bottom-up monotonize per column: the start must lie in the monotone cone
  // together with the wall data (the slopes above miss that only along the
  // slot-wall columns).
  for (int i = 0; i < g.nx; ++i)
    for (int j = 1; j < g.ny; ++j) {
      const std::size_t n = g.idx(i, j), below = g.idx(i, j - 1);
      if (f.role[n] != Role::Interior || f.role[below] == Role::Outside)
        continue;
      if (f.psi[n] < f.psi[below])
        f.psi[n] = std::min(f.psi[below], f.hi[n]);
    }
}

double energy(const GridField& f, const Coefficients& c) {
  const Grid& g = f.grid;
  const double dx = g.dx;
  const double area = dx * dx;
  double sum = 0, comp = 0;  // Kahan
  for (int cj = 0; cj + 1 < g.ny; ++cj) {
    for (int ci = 0; ci + 1 < g.nx; ++ci) {
      if (!f.cell_active[f.cell_idx(ci, cj)]) continue;
      const double v00 = f.psi[g.idx(ci, cj)];
      const double v10 = f.psi[g.idx(ci + 1, cj)];
      const double v01 = f.psi[g.idx(ci, cj + 1)];
      const double v11 = f.psi[g.idx(ci + 1, cj + 1)];
      const double gx = (v10 - v00 + v11 - v01) / (2 * dx);
      double gy = (v01 - v00 + v11 - v10) / (2 * dx);
      if (g.ix0 + ci >= 0) {  // cell center right of x = 0
        const double s = v00 + v10 + v01 + v11;
        gy -= s < 0 ? c.lambda1 : (s > 0 ? c.lambda2 : c.lambda0);
      }
      const double term = area * (gx * gx + gy * gy) - comp;
      const double next = sum + term;
      comp = (next - sum) - term;
      sum = next;
    }
  }
  return sum;
}

namespace {

// Per-cell view of the local energy as a function of one node value v. With
// the other three corners frozen, 2*dx*grad = (sx*v + ax, sy*v + ay) and the
// cell-average sign flips at v = -ssum.
struct NodeCell {
  double ax, ay, ssum;
  double sx, sy;
  bool ind;
};

struct NodeCtx {
  NodeCell cell[4];
  int n = 0;
  double l1 = 0, l2 = 0, l0 = 0, two_dx = 0;

  double local4(double v) const {
    double acc = 0;
    for (int k = 0; k < n; ++k) {
      const NodeCell& cl = cell[k];
      const double gx2 = cl.sx * v + cl.ax;
      double gy2 = cl.sy * v + cl.ay;
      if (cl.ind) {
        const double s = v + cl.ssum;
        gy2 -= two_dx * (s < 0 ? l1 : (s > 0 ? l2 : l0));
      }
      acc += gx2 * gx2 + gy2 * gy2;
    }
    return acc;
  }

  // Quadratic coefficients (in local4 units) valid while no cell crosses its
  // breakpoint; signs evaluated at v_ref.
  void quad_at(double v_ref, double* a4, double* b4) const {
    double a = 0, bb = 0;
    for (int k = 0; k < n; ++k) {
      const NodeCell& cl = cell[k];
      double ay = cl.ay;
      if (cl.ind) {
        const double s = v_ref + cl.ssum;
        ay -= two_dx * (s < 0 ? l1 : (s > 0 ? l2 : l0));
      }
      a += 2;
      bb += 2 * (cl.sx * cl.ax + cl.sy * ay);
    }
    *a4 = a;
    *b4 = bb;
  }
};

}  // namespace

namespace detail {

// True when the field lies in the monotone-in-y cone (up to rounding). Sweeps
// started inside the cone stay inside it; see sweep_impl.
bool in_monotone_cone(const GridField& f) {
  return monotone_y_violation(f) <=
         1e-12 * std::max(1.0, std::max(f.spec.Q, f.spec.L));
}

// Shared sweep used by relax_sweep and minimize; accumulates the exact energy
// change of the accepted updates.
//
// With `monotone` set, each node is additionally confined between its vertical
// neighbors. The unconstrained discrete energy rewards relabeling near-zero
// nodes across the sign indicator (an O(dx) "mushy band" along the interface
// that the continuum functional cannot see), and coordinate descent finds it;
// the true minimizer is monotone in y, so the descent is kept inside that
// cone whenever it starts there.
double sweep_impl(GridField& f, const Coefficients& c, double omega,
                  bool monotone, double* delta_energy) {
  const Grid& g = f.grid;
  const double dx = g.dx;
  const int nx = g.nx, ny = g.ny;
  double max_change = 0;
  long double dJ = 0;

  for (int j = 1; j + 1 < ny; ++j) {
    for (int i = 1; i + 1 < nx; ++i) {
      const std::size_t n = g.idx(i, j);
      if (f.role[n] != Role::Interior) continue;
      const double v0 = f.psi[n];
      double lo = f.lo[n], hi = f.hi[n];
      if (monotone) {
        const std::size_t below = g.idx(i, j - 1), above = g.idx(i, j + 1);
        if (f.role[below] != Role::Outside) lo = std::max(lo, f.psi[below]);
        if (f.role[above] != Role::Outside) hi = std::min(hi, f.psi[above]);
        if (lo > hi) continue;
      }

      NodeCtx ctx;
      ctx.l1 = c.lambda1;
      ctx.l2 = c.lambda2;
      ctx.l0 = c.lambda0;
      ctx.two_dx = 2 * dx;

      bool any_bp = false;
      for (int py = 0; py <= 1; ++py)
        for (int px = 0; px <= 1; ++px) {
          const int ci = i - 1 + px, cj = j - 1 + py;
          if (!f.cell_active[f.cell_idx(ci, cj)]) continue;
          const double v00 = f.psi[g.idx(ci, cj)];
          const double v10 = f.psi[g.idx(ci + 1, cj)];
          const double v01 = f.psi[g.idx(ci, cj + 1)];
          const double v11 = f.psi[g.idx(ci + 1, cj + 1)];
          NodeCell cl;
          // Node occupies corner (1-px, 1-py) of this cell.
          const int qx = 1 - px, qy = 1 - py;
          cl.sx = qx == 1 ? 1.0 : -1.0;
          cl.sy = qy == 1 ? 1.0 : -1.0;
          const double gx2 = v10 - v00 + v11 - v01;
          const double gy2 = v01 - v00 + v11 - v10;
          const double ssum = v00 + v10 + v01 + v11;
          cl.ax = gx2 - cl.sx * v0;
          cl.ay = gy2 - cl.sy * v0;
          cl.ssum = ssum - v0;
          cl.ind = (g.ix0 + ci >= 0);
          if (cl.ind) {
            const double bp = -cl.ssum;
            if (bp >= lo && bp <= hi) any_bp = true;
          }
          ctx.cell[ctx.n++] = cl;
        }
      if (ctx.n == 0) continue;

      double v_new, dj4;
      if (!any_bp) {
        // Single quadratic over the whole box: closed-form minimizer, and the
        // over-relaxed point provably descends after clamping.
        double a4, b4;
        ctx.quad_at(0.5 * (lo + hi), &a4, &b4);
        const double vq = std::clamp(-b4 / (2 * a4), lo, hi);
        v_new = std::clamp(v0 + omega * (vq - v0), lo, hi);
        dj4 = a4 * (v_new * v_new - v0 * v0) + b4 * (v_new - v0);
      } else {
        // Piecewise quadratic: enumerate interval minimizers and breakpoints.
        double bps[4];
        int nbp = 0;
        for (int k = 0; k < ctx.n; ++k)
          if (ctx.cell[k].ind) {
            const double bp = -ctx.cell[k].ssum;
            if (bp > lo && bp < hi) bps[nbp++] = bp;
          }
        std::sort(bps, bps + nbp);

        double best_v = v0;
        double best_j = ctx.local4(v0);
        const double j0 = best_j;
        auto consider = [&](double v) {
          const double jv = ctx.local4(v);
          if (jv < best_j) {
            best_j = jv;
            best_v = v;
          }
        };
        double left = lo;
        for (int k = 0; k <= nbp; ++k) {
          const double right = k < nbp ? bps[k] : hi;
          if (right > left) {
            double a4, b4;
            ctx.quad_at(0.5 * (left + right), &a4, &b4);
            consider(std::clamp(-b4 / (2 * a4), left, right));
          }
          left = right;
        }
        consider(lo);
        consider(hi);
        for (int k = 0; k < nbp; ++k) consider(bps[k]);

        v_new = best_v;
        dj4 = best_j - j0;
        if (omega != 1.0) {
          const double vr = std::clamp(v0 + omega * (best_v - v0), lo, hi);
          const double jr = ctx.local4(vr);
          if (jr <= j0) {  // keep descent; otherwise fall back to exact min
            v_new = vr;
            dj4 = jr - j0;
          }
        }
      }

      if (v_new != v0) {
        f.psi[n] = v_new;
        max_change = std::max(max_change, std::abs(v_new - v0));
        dJ += static_cast<long double>(dj4) * 0.25L;
      }
    }
  }
  if (delta_energy) *delta_energy = static_cast<double>(dJ);
  return max_change;
}

}  // namespace detail

double relax_sweep(GridField& f, const Coefficients& c, double omega) {
  return detail::sweep_impl(f, c, omega, detail::in_monotone_cone(f), nullptr);
}

double relax_lagged(GridField& f, const Coefficients& c, double omega) {
  const Grid& g = f.grid;
  const int nx = g.nx, ny = g.ny;
  const double two_dx = 2 * g.dx;
  const bool monotone = detail::in_monotone_cone(f);
  double max_change = 0;
  for (int j = 1; j + 1 < ny; ++j) {
    for (int i = 1; i + 1 < nx; ++i) {
      const std::size_t n = g.idx(i, j);
      if (f.role[n] != Role::Interior) continue;
      const double v0 = f.psi[n];
      double lo = f.lo[n], hi = f.hi[n];
      if (monotone) {
        const std::size_t below = g.idx(i, j - 1), above = g.idx(i, j + 1);
        if (f.role[below] != Role::Outside) lo = std::max(lo, f.psi[below]);
        if (f.role[above] != Role::Outside) hi = std::min(hi, f.psi[above]);
      }
      double a4 = 0, b4 = 0;
      for (int py = 0; py <= 1; ++py)
        for (int px = 0; px <= 1; ++px) {
          const int ci = i - 1 + px, cj = j - 1 + py;
          if (!f.cell_active[f.cell_idx(ci, cj)]) continue;
          const double v00 = f.psi[g.idx(ci, cj)];
          const double v10 = f.psi[g.idx(ci + 1, cj)];
          const double v01 = f.psi[g.idx(ci, cj + 1)];
          const double v11 = f.psi[g.idx(ci + 1, cj + 1)];
          const double sx = px == 0 ? 1.0 : -1.0;
          const double sy = py == 0 ? 1.0 : -1.0;
          const double ax = (v10 - v00 + v11 - v01) - sx * v0;
          double ay = (v01 - v00 + v11 - v10) - sy * v0;
          if (g.ix0 + ci >= 0) {
            const double s = v00 + v10 + v01 + v11;  // sign before the move
            ay -= two_dx *
                  (s < 0 ? c.lambda1 : (s > 0 ? c.lambda2 : c.lambda0));
          }
          a4 += 2;
          b4 += 2 * (sx * ax + sy * ay);
        }
      if (a4 == 0 || lo > hi) continue;
      const double vq = std::clamp(-b4 / (2 * a4), lo, hi);
      const double vn = std::clamp(v0 + omega * (vq - v0), lo, hi);
      if (vn != v0) {
        f.psi[n] = vn;
        max_change = std::max(max_change, std::abs(vn - v0));
      }
    }
  }
  return max_change;
}

namespace {

// One SOR pass for the quadratic energy with the per-cell indicator frozen to
// `pattern` (-1, 0, +1; 2 = no indicator). Keeps the monotone cone.
double frozen_sweep(GridField& f, const Coefficients& c,
                    const std::vector<signed char>& pattern, double omega,
                    bool monotone) {
  const Grid& g = f.grid;
  const int nx = g.nx, ny = g.ny;
  const double two_dx = 2 * g.dx;
  double max_change = 0;
  for (int j = 1; j + 1 < ny; ++j) {
    for (int i = 1; i + 1 < nx; ++i) {
      const std::size_t n = g.idx(i, j);
      if (f.role[n] != Role::Interior) continue;
      const double v0 = f.psi[n];
      double lo = f.lo[n], hi = f.hi[n];
      if (monotone) {
        const std::size_t below = g.idx(i, j - 1), above = g.idx(i, j + 1);
        if (f.role[below] != Role::Outside) lo = std::max(lo, f.psi[below]);
        if (f.role[above] != Role::Outside) hi = std::min(hi, f.psi[above]);
        if (lo > hi) continue;
      }
      double a4 = 0, b4 = 0;
      for (int py = 0; py <= 1; ++py)
        for (int px = 0; px <= 1; ++px) {
          const int ci = i - 1 + px, cj = j - 1 + py;
          if (!f.cell_active[f.cell_idx(ci, cj)]) continue;
          const double v00 = f.psi[g.idx(ci, cj)];
          const double v10 = f.psi[g.idx(ci + 1, cj)];
          const double v01 = f.psi[g.idx(ci, cj + 1)];
          const double v11 = f.psi[g.idx(ci + 1, cj + 1)];
          const double sx = px == 0 ? 1.0 : -1.0;
          const double sy = py == 0 ? 1.0 : -1.0;
          const double ax = (v10 - v00 + v11 - v01) - sx * v0;
          double ay = (v01 - v00 + v11 - v10) - sy * v0;
          const signed char p = pattern[f.cell_idx(ci, cj)];
          if (p != 2)
            ay -= two_dx *
                  (p < 0 ? c.lambda1 : (p > 0 ? c.lambda2 : c.lambda0));
          a4 += 2;
          b4 += 2 * (sx * ax + sy * ay);
        }
      if (a4 == 0) continue;
      const double vq = std::clamp(-b4 / (2 * a4), lo, hi);
      const double vn = std::clamp(v0 + omega * (vq - v0), lo, hi);
      if (vn != v0) {
        f.psi[n] = vn;
        max_change = std::max(max_change, std::abs(vn - v0));
      }
    }
  }
  return max_change;
}

void read_pattern(const GridField& f, std::vector<signed char>* pattern) {
  const Grid& g = f.grid;
  pattern->assign(f.cell_active.size(), 2);
  for (int cj = 0; cj + 1 < g.ny; ++cj)
    for (int ci = 0; ci + 1 < g.nx; ++ci) {
      const std::size_t cn = f.cell_idx(ci, cj);
      if (!f.cell_active[cn] || g.ix0 + ci < 0) continue;
      const double s = f.psi[g.idx(ci, cj)] + f.psi[g.idx(ci + 1, cj)] +
                       f.psi[g.idx(ci, cj + 1)] + f.psi[g.idx(ci + 1, cj + 1)];
      (*pattern)[cn] = s < 0 ? -1 : (s > 0 ? 1 : 0);
    }
}

}  // namespace

long relax_picard(GridField& f, const Coefficients& c, double omega,
                  double inner_tol, long max_inner, int max_outer) {
  if (omega <= 0)
    omega = 2.0 / (1.0 + std::sin(kPi / std::max(f.grid.nx, f.grid.ny)));
  const bool monotone = detail::in_monotone_cone(f);
  std::vector<signed char> pattern, next;
  read_pattern(f, &pattern);
  long total = 0;
  for (int outer = 0; outer < max_outer; ++outer) {
    for (long k = 0; k < max_inner; ++k) {
      ++total;
      if (frozen_sweep(f, c, pattern, omega, monotone) <= inner_tol) break;
    }
    read_pattern(f, &next);
    if (next == pattern) break;
    pattern.swap(next);
  }
  return total;
}

MinimizeReport minimize(GridField& f, const Coefficients& c,
                        const MinimizeOptions& opts) {
  const double tol =
      opts.tol < 0 ? 1e-8 * std::max(f.spec.Q, f.spec.L) : opts.tol;
  double omega = opts.omega;
  if (omega <= 0)
    omega = 2.0 / (1.0 + std::sin(kPi / std::max(f.grid.nx, f.grid.ny)));
  const long every = std::max<long>(1, opts.trace_every);

  MinimizeReport rep;
  const bool monotone = detail::in_monotone_cone(f);
  long double j_run = energy(f, c);
  rep.trace.push_back({0, static_cast<double>(j_run), 0.0});

  for (long sweep = 1; sweep <= opts.max_sweeps; ++sweep) {
    double dj = 0;
    const double change = detail::sweep_impl(f, c, omega, monotone, &dj);
    j_run += dj;
    rep.sweeps = sweep;
    rep.max_change = change;
    if (sweep % every == 0 || change <= tol || sweep == opts.max_sweeps)
      rep.trace.push_back({sweep, static_cast<double>(j_run), change});
    if (change <= tol) {
      rep.converged = true;
      break;
    }
  }
  rep.final_energy = energy(f, c);
  return rep;
}

double monotone_y_violation(const GridField& f) {
  const Grid& g = f.grid;
  double worst = 0;
  for (int j = 0; j + 1 < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      if (f.role[g.idx(i, j)] == Role::Outside ||
          f.role[g.idx(i, j + 1)] == Role::Outside)
        continue;
      worst = std::max(worst, f.psi[g.idx(i, j)] - f.psi[g.idx(i, j + 1)]);
    }
  return worst;
}

double monotone_x_violation(const GridField& f) {
  const Grid& g = f.grid;
  double worst = 0;
  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i + 1 < g.nx; ++i) {
      if (f.role[g.idx(i, j)] == Role::Outside ||
          f.role[g.idx(i + 1, j)] == Role::Outside)
        continue;
      worst = std::max(worst, f.psi[g.idx(i + 1, j)] - f.psi[g.idx(i, j)]);
    }
  return worst;
}

void dump_trace_csv(const MinimizeReport& r, std::ostream& os) {
  os << "sweep,energy,max_change\n";
  char buf[96];
  for (const auto& t : r.trace) {
    std::snprintf(buf, sizeof buf, "%ld,%.9g,%.9g\n", t.sweep, t.energy,
                  t.max_change);
    os << buf;
  }
}

}  // namespace slotjet
