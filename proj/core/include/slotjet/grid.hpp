#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "slotjet/geometry.hpp"

namespace slotjet {

// Uniform Cartesian node lattice. Node coordinates are integer multiples of
// dx (anchored so that x=0 and y=0 are exact node coordinates).
struct Grid {
  double dx = 0;
  long ix0 = 0, iy0 = 0;  // integer coordinates of node (0,0)
  int nx = 0, ny = 0;

  double x(int i) const { return (ix0 + i) * dx; }
  double y(int j) const { return (iy0 + j) * dx; }
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * nx + i;
  }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
};

// Stream-function samples with per-node roles and admissible-set boxes.
// Dirichlet nodes always hold exactly their wall data; interior values stay
// inside [lo, hi] after every mutating operation.
struct GridField {
  DomainSpec spec;
  Grid grid;
  double mu_eff = 0;   // truncation extent snapped up to the grid
  double x_max = 0;    // downstream cut (free outflow)
  std::vector<double> psi;
  std::vector<Role> role;
  std::vector<double> lo, hi;
  std::vector<unsigned char> cell_active;  // (nx-1)*(ny-1), all corners in domain

  bool is_interior(int i, int j) const {
    return role[grid.idx(i, j)] == Role::Interior;
  }
  std::size_t cell_idx(int ci, int cj) const {
    return static_cast<std::size_t>(cj) * (grid.nx - 1) + ci;
  }
};

enum class Phase { plus, minus };

struct GradientSample {
  double gx = 0, gy = 0;
  int order = 0;  // worst one-sided order achieved across the two axes
};

// Builds the masked grid over the truncated domain. `pad` is the downstream
// extent past x=a (pad < 0 selects 2*L). Throws GRID_TOO_COARSE unless the
// slot is resolved by at least 8 cells across.
GridField build(const DomainSpec& spec, double dx, double pad = -1.0);

// One-sided finite-difference gradient using only nodes where psi has the
// sign selected by `phase`. Throws NO_STENCIL if fewer than 2 usable nodes
// line up along an axis.
GradientSample gradient(const GridField& f, double x, double y, Phase phase);

// Bilinear interpolation; throws OUT_OF_HULL outside the node lattice.
double interpolate(const GridField& f, double x, double y);

// Clamps every node to its admissible box (Dirichlet data is box-consistent).
void project_to_box(GridField& f);

// CSV dump `x,y,psi,role`, row-major, 9 significant digits.
void dump_field_csv(const GridField& f, std::ostream& os);

}  // namespace slotjet
