#pragma once

#include "logvlasov/phase.hpp"
#include "logvlasov/potential.hpp"

namespace logvlasov {

// Vertical energy v3^2/2 + Phi(x3); conserved by the vertical motion.
inline double vertical_energy(const PotentialParams& p, const PhaseState& s) {
  return 0.5 * s.v[2] * s.v[2] + p.phi(s.x3);
}

inline double total_energy(const PotentialParams& p, const PhaseState& s) {
  return 0.5 * s.speed2() + p.phi(s.x3);
}

// Exact characteristic flow by dt (either sign).  The trajectory must stay
// in the closed half-space over the whole interval; crossing the boundary
// raises an error.  Horizontal motion is free, vertical motion integrates
//   F_a(V3(s)) = F_a(v3) - a^{-E} (s-t)/ln a,   1+X3 = a^{E - V3^2/2},
// with E the vertical energy.
PhaseState flow(const PotentialParams& params, const PhaseState& state, double dt);

// Backward/forward exit event in closed form, splitting the trajectory at
// the apex V3 = 0:
//   t_b = ln a * a^E (F_a(sqrt(2E)) - F_a(v3)),
//   t_f = ln a * a^E (F_a(v3) + F_a(sqrt(2E))).
// A tangential boundary state (E = 0) gets duration 0 and the degenerate flag.
ExitEvent exit_time(const PotentialParams& params, const PhaseState& state,
                    ExitDirection direction);

// Flight duration of a boundary launch with vertical speed w > 0 (equals the
// backward exit time of the arrival state with v3 = -w):
//   T(w) = 2 ln a * a^{w^2/2} F_a(w).
double flight_time(const PotentialParams& params, double w);

// Inverse of flight_time on w >= 0 (bisection bracket, Newton polish).
double flight_time_inverse(const PotentialParams& params, double t);

// d t_b / d v3 for a boundary state arriving with v3 < 0:
//   -2 ln a + ln a * v3 * t_b.
double exit_time_derivative(const PotentialParams& params, double v3);

}  // namespace logvlasov
