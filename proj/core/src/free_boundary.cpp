#include "slotjet/free_boundary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "slotjet/error.hpp"

namespace slotjet {

namespace {

double percentile(std::vector<double> v, double p) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (p >= 1.0) return v.back();
  const std::size_t k = std::min<std::size_t>(
      n - 1, static_cast<std::size_t>(std::ceil(p * n)) - (p > 0 ? 1 : 0));
  return v[k];
}

double median_of(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

int default_slope_window(const FreeBoundaryCurve& c, double a, double dx) {
  const int m = static_cast<int>(std::lround(0.25 * a / dx));
  return std::clamp(m, 3, static_cast<int>(c.size()));
}

}  // namespace

FreeBoundaryCurve extract(const GridField& f) {
  const Grid& g = f.grid;
  FreeBoundaryCurve curve;
  for (int i = 0; i < g.nx; ++i) {
    if (g.ix0 + i < 1) continue;  // columns with x > 0 only
    const double x = g.x(i);
    int crossings = 0;
    double k = 0;
    int prev_j = -1;
    double prev_v = 0;
    for (int j = 0; j < g.ny; ++j) {
      const std::size_t n = g.idx(i, j);
      if (f.role[n] == Role::Outside) continue;
      const double v = f.psi[n];
      if (v == 0) continue;  // exact zeros join the crossing interpolation
      if (prev_j >= 0 && ((prev_v < 0) != (v < 0))) {
        ++crossings;
        if (crossings > 1)
          fail("MULTI_CROSSING",
               "column x=" + std::to_string(x) + " changes sign twice");
        k = g.y(prev_j) + (0 - prev_v) * (g.y(j) - g.y(prev_j)) / (v - prev_v);
      }
      prev_j = j;
      prev_v = v;
    }
    if (crossings == 0) {
      if (curve.xs.empty())
        fail("NO_CROSSING", "column x=" + std::to_string(x) + " has one sign");
      break;  // interface left the window; keep the sampled part
    }
    curve.xs.push_back(x);
    curve.ks.push_back(k);
  }
  if (curve.xs.empty()) fail("NO_CROSSING", "no column with a sign change");

  curve.fit_point = curve.ks.front();
  const std::size_t n = curve.size();
  const std::size_t tail = std::max<std::size_t>(1, n / 10);
  double acc = 0;
  for (std::size_t t = n - tail; t < n; ++t) acc += curve.ks[t];
  curve.downstream_height = acc / tail;
  for (std::size_t t = 0; t + 1 < n; ++t)
    curve.max_backstep = std::max(curve.max_backstep, curve.ks[t] - curve.ks[t + 1]);
  curve.detachment_slope =
      detachment_slope(curve, default_slope_window(curve, f.spec.a, g.dx));
  return curve;
}

JumpStats jump_residual(const GridField& f, const FreeBoundaryCurve& c,
                        double lambda) {
  JumpStats stats;
  const double dx = f.grid.dx;
  const double eps_b = 3 * dx;  // trailing-edge exclusion ball
  std::vector<double> res;
  res.reserve(c.size());
  for (std::size_t t = 0; t < c.size(); ++t) {
    const double x = c.xs[t], y = c.ks[t];
    if (wall_distance(f.spec, x, y) < 3 * dx) continue;
    if (std::hypot(x - f.spec.a, y - f.spec.b) < eps_b) continue;
    try {
      const GradientSample gm = gradient(f, x, y, Phase::minus);
      const GradientSample gp = gradient(f, x, y, Phase::plus);
      const double r = (gm.gx * gm.gx + gm.gy * gm.gy) -
                       (gp.gx * gp.gx + gp.gy * gp.gy) - lambda;
      res.push_back(std::abs(r));
    } catch (const Error& e) {
      if (e.code() == "NO_STENCIL") {
        ++stats.skipped;
        continue;
      }
      throw;
    }
  }
  stats.used = res.size();
  stats.median = median_of(res);
  stats.p90 = percentile(std::move(res), 0.90);
  return stats;
}

double fit_residual(const FreeBoundaryCurve& c) { return c.fit_point; }

double detachment_slope(const FreeBoundaryCurve& c, int m) {
  if (m < 3) fail("SLOPE_WINDOW", "need at least 3 samples");
  m = std::min<int>(m, static_cast<int>(c.size()));
  if (m < 2) fail("SLOPE_WINDOW", "curve too short");
  double sx = 0, sk = 0;
  for (int t = 0; t < m; ++t) {
    sx += c.xs[t];
    sk += c.ks[t];
  }
  const double mx = sx / m, mk = sk / m;
  double num = 0, den = 0;
  for (int t = 0; t < m; ++t) {
    num += (c.xs[t] - mx) * (c.ks[t] - mk);
    den += (c.xs[t] - mx) * (c.xs[t] - mx);
  }
  return num / den;
}

SandwichReport sandwich_check(const GridField& f, const Coefficients& c) {
  const Grid& g = f.grid;
  SandwichReport rep;
  rep.tol = 3 * g.dx * c.lambda2;
  const double x_from = std::max(-f.mu_eff + 1.0, -f.spec.L);
  for (int j = 0; j < g.ny; ++j) {
    const double y = g.y(j);
    if (!(y > 0)) continue;
    for (int i = 0; i < g.nx; ++i) {
      const double x = g.x(i);
      if (x < x_from) continue;
      const std::size_t n = g.idx(i, j);
      if (f.role[n] == Role::Outside) continue;
      const double plus = std::max(f.psi[n], 0.0);
      const double lower = c.lambda2 * (y - c.h);
      const double up_viol = plus - (y + rep.tol);
      const double lo_viol = (lower - rep.tol) - plus;
      if (up_viol > 0) {
        ++rep.violations;
        rep.max_upper_violation = std::max(rep.max_upper_violation, up_viol);
      }
      if (lo_viol > 0) {
        ++rep.violations;
        rep.max_lower_violation = std::max(rep.max_lower_violation, lo_viol);
      }
    }
  }
  return rep;
}

AsymptoticsReport asymptotics_check(const GridField& f, const Coefficients& c,
                                    const DomainSpec& spec) {
  const Grid& g = f.grid;
  AsymptoticsReport rep;
  const double dx = g.dx;
  const double band = 3 * dx;
  const double mu = f.mu_eff;

  const double x_down = f.x_max - 0.1 * (f.x_max - spec.a);
  const double x_up_lo = -0.55 * mu, x_up_hi = -0.35 * mu;
  const double y_slot_lo = -0.65 * mu, y_slot_hi = -0.45 * mu;

  for (int j = 0; j < g.ny; ++j)
    for (int i = 0; i < g.nx; ++i) {
      const std::size_t n = g.idx(i, j);
      if (f.role[n] != Role::Interior) continue;
      const double x = g.x(i), y = g.y(j);
      if (wall_distance(f.spec, x, y) < band) continue;
      if (x >= x_down && y > spec.b + band && y < spec.L - band) {
        const double ref =
            asymptotic_profile(spec, c, Region::downstream, x, y);
        rep.downstream = std::max(rep.downstream, std::abs(f.psi[n] - ref));
      }
      if (x >= x_up_lo && x <= x_up_hi && y > band && y < spec.L - band) {
        rep.upstream = std::max(rep.upstream, std::abs(f.psi[n] - y));
      }
      if (y >= y_slot_lo && y <= y_slot_hi) {
        const double w = x * std::sin(spec.theta) - y * std::cos(spec.theta);
        if (w > band && w < spec.d2() - band) {
          const double ref = asymptotic_profile(spec, c, Region::slot, x, y);
          rep.slot = std::max(rep.slot, std::abs(f.psi[n] - ref));
        }
      }
    }
  return rep;
}

void dump_curve_csv(const FreeBoundaryCurve& c, std::ostream& os) {
  os << "x,k\n";
  char buf[80];
  for (std::size_t t = 0; t < c.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%.9g,%.9g\n", c.xs[t], c.ks[t]);
    os << buf;
  }
}

void dump_diagnostics_csv(
    const std::vector<std::pair<std::string, double>>& rows, std::ostream& os) {
  os << "name,value\n";
  char buf[96];
  for (const auto& [name, value] : rows) {
    std::snprintf(buf, sizeof buf, "%s,%.9g\n", name.c_str(), value);
    os << buf;
  }
}

}  // namespace slotjet
