#include "slotjet/svg.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace slotjet {

namespace {

struct Mapper {
  double x0, y1, scale;
  double px(double x) const { return (x - x0) * scale + 20; }
  double py(double y) const { return (y1 - y) * scale + 20; }
};

void emit_polyline(std::ostream& os, const std::vector<double>& xs,
                   const std::vector<double>& ys, const Mapper& m,
                   const char* style) {
  if (xs.size() < 2) return;
  os << "<polyline fill=\"none\" " << style << " points=\"";
  char buf[64];
  for (std::size_t t = 0; t < xs.size(); ++t) {
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", m.px(xs[t]), m.py(ys[t]));
    os << buf;
  }
  os << "\"/>\n";
}

void emit_segment(std::ostream& os, double x1, double y1, double x2, double y2,
                  const Mapper& m, const char* style) {
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" %s/>\n",
                m.px(x1), m.py(y1), m.px(x2), m.py(y2), style);
  os << buf;
}

// Marching-squares contour of one level over active cells.
void emit_level(std::ostream& os, const GridField& f, double level,
                const Mapper& m, const char* style) {
  const Grid& g = f.grid;
  char buf[160];
  for (int cj = 0; cj + 1 < g.ny; ++cj)
    for (int ci = 0; ci + 1 < g.nx; ++ci) {
      if (!f.cell_active[f.cell_idx(ci, cj)]) continue;
      const double v[4] = {
          f.psi[g.idx(ci, cj)] - level, f.psi[g.idx(ci + 1, cj)] - level,
          f.psi[g.idx(ci + 1, cj + 1)] - level, f.psi[g.idx(ci, cj + 1)] - level};
      const double cx[4] = {g.x(ci), g.x(ci + 1), g.x(ci + 1), g.x(ci)};
      const double cy[4] = {g.y(cj), g.y(cj), g.y(cj + 1), g.y(cj + 1)};
      double pts[4][2];
      int np = 0;
      for (int e = 0; e < 4 && np < 4; ++e) {
        const int e2 = (e + 1) % 4;
        if ((v[e] < 0) != (v[e2] < 0)) {
          const double t = v[e] / (v[e] - v[e2]);
          pts[np][0] = cx[e] + t * (cx[e2] - cx[e]);
          pts[np][1] = cy[e] + t * (cy[e2] - cy[e]);
          ++np;
        }
      }
      if (np >= 2) {
        std::snprintf(
            buf, sizeof buf,
            "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" %s/>\n",
            m.px(pts[0][0]), m.py(pts[0][1]), m.px(pts[1][0]), m.py(pts[1][1]),
            style);
        os << buf;
      }
    }
}

}  // namespace

void render_svg(const GridField& f, const FreeBoundaryCurve* curve,
                std::ostream& os) {
  const Grid& g = f.grid;
  const DomainSpec& s = f.spec;
  const double wx = g.x(g.nx - 1) - g.x(0);
  const double wy = g.y(g.ny - 1) - g.y(0);
  const double scale = 760.0 / std::max(wx, wy);
  Mapper m{g.x(0), g.y(g.ny - 1), scale};
  const int W = static_cast<int>(wx * scale) + 40;
  const int H = static_cast<int>(wy * scale) + 40;

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  const char* thin = "stroke=\"#9ecae1\" stroke-width=\"0.8\"";
  const int levels = 15;
  for (int k = 1; k <= levels; ++k) {
    const double t = static_cast<double>(k) / (levels + 1);
    const double lv = -s.Q + t * (s.L + s.Q);
    if (std::abs(lv) < 1e-9) continue;
    emit_level(os, f, lv, m, thin);
  }

  const char* wall = "stroke=\"black\" stroke-width=\"2\"";
  const double xmax = f.x_max;
  emit_segment(os, -f.mu_eff, 0, 0, 0, m, wall);                       // N1
  emit_segment(os, s.s1_x(-f.mu_eff), -f.mu_eff, 0, 0, m, wall);       // S1
  emit_segment(os, s.a, s.b, xmax, s.b, m, wall);                      // N2
  emit_segment(os, s.s2_x(-f.mu_eff), -f.mu_eff, s.a, s.b, m, wall);   // S2
  emit_segment(os, s.s1_x(-f.mu_eff), -f.mu_eff, s.s2_x(-f.mu_eff),
               -f.mu_eff, m, wall);                                    // Smu
  emit_segment(os, -f.mu_eff, 0, -f.mu_eff, s.L, m, wall);             // sigma
  emit_segment(os, -f.mu_eff, s.L, xmax, s.L, m, wall);                // NL

  if (curve && curve->size() >= 2)
    emit_polyline(os, curve->xs, curve->ks, m,
                  "stroke=\"#d62728\" stroke-width=\"2\"");
  os << "</svg>\n";
}

}  // namespace slotjet
