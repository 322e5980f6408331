#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "slotjet/grid.hpp"

namespace slotjet {

// Physical velocities recovered from the stream function:
// (u, v) = (d psi/dy, -d psi/dx) / sqrt(rho), with rho picked by the sign of
// psi. phase is +1/-1 for the two fluids, 0 where no stencil applies.
struct VelocityField {
  Grid grid;
  std::vector<double> u, v;
  std::vector<std::int8_t> phase;
};

// Central differences away from the interface, one-sided same-phase stencils
// next to it.
VelocityField recover(const GridField& f, const DomainSpec& spec);

struct PositivityReport {
  long u_nonpositive = 0;
  long v_nonpositive_near_slot = 0;
  long checked_u = 0;
  long checked_v = 0;
};

// u > 0 is checked over both phases outside the wall bands and the
// trailing-edge ball; v > 0 only within |x| <= 2a of the slot, where the
// turning flow keeps it bounded away from the downstream v -> 0 limit.
PositivityReport positivity_report(const VelocityField& vel,
                                   const GridField& f);

// CSV dump `x,y,u,v,phase`.
void dump_velocity_csv(const VelocityField& vel, std::ostream& os);

}  // namespace slotjet
