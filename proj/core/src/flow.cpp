#include "logvlasov/flow.hpp"

#include <cmath>
#include <stdexcept>

namespace logvlasov {

PhaseState flow(const PotentialParams& params, const PhaseState& state, double dt) {
  if (dt == 0.0) return state;

  const GaussIntegral fa(params);
  const double energy = vertical_energy(params, state);
  const double slope = std::exp(-params.ln_a * energy) / params.ln_a;
  const double target = fa(state.v[2]) - slope * dt;

  // |F_a(V3)| reaches fa(sqrt(2E)) exactly at the wall; beyond that the
  // requested dt has crossed the boundary.
  const double wall = fa(std::sqrt(2.0 * energy));
  if (std::fabs(target) > wall * (1.0 + 1e-12)) {
    throw std::domain_error("flow: interval crosses the boundary, split at exit_time first");
  }

  PhaseState out = state;
  out.x_par = wrap_unit(Vec2{state.x_par[0] + state.v[0] * dt, state.x_par[1] + state.v[1] * dt});
  const double v3 = (std::fabs(target) >= wall) ? std::copysign(std::sqrt(2.0 * energy), target)
                                                : fa.inverse(target);
  out.v[2] = v3;
  out.x3 = std::expm1(params.ln_a * (energy - 0.5 * v3 * v3));
  if (out.x3 < 0.0) out.x3 = 0.0;
  return out;
}

ExitEvent exit_time(const PotentialParams& params, const PhaseState& state,
                    ExitDirection direction) {
  const GaussIntegral fa(params);
  const double energy = vertical_energy(params, state);
  const double arrival_speed = std::sqrt(2.0 * energy);

  ExitEvent ev;
  ev.direction = direction;
  if (energy == 0.0) {
    // Tangential contact: the vertical motion is pinned to the wall.
    ev.degenerate = true;
    ev.footpoint = state.x_par;
    ev.boundary_velocity = state.v;
    return ev;
  }

  const double amplitude = params.ln_a * params.pow_a(energy);
  const double f_wall = fa(arrival_speed);
  const double f_here = fa(state.v[2]);
  const double duration = (direction == ExitDirection::backward) ? amplitude * (f_wall - f_here)
                                                                 : amplitude * (f_wall + f_here);
  ev.duration = duration < 0.0 ? 0.0 : duration;

  const double sgn = (direction == ExitDirection::backward) ? -1.0 : 1.0;
  ev.footpoint = wrap_unit(Vec2{state.x_par[0] + sgn * state.v[0] * ev.duration,
                                state.x_par[1] + sgn * state.v[1] * ev.duration});
  ev.boundary_velocity = {state.v[0], state.v[1],
                          (direction == ExitDirection::backward) ? arrival_speed : -arrival_speed};
  return ev;
}

double flight_time(const PotentialParams& params, double w) {
  if (w < 0.0) throw std::domain_error("flight_time: launch speed must be non-negative");
  const GaussIntegral fa(params);
  return 2.0 * params.ln_a * params.pow_a(0.5 * w * w) * fa(w);
}

double flight_time_inverse(const PotentialParams& params, double t) {
  if (t < 0.0) throw std::domain_error("flight_time_inverse: negative duration");
  if (t == 0.0) return 0.0;

  // Bracket by doubling, then bisect; T(w) is strictly increasing with
  // T'(w) = ln a (w T + 2).
  double lo = 0.0, hi = 1.0;
  while (flight_time(params, hi) < t) {
    lo = hi;
    hi *= 2.0;
    if (hi > 64.0) throw std::domain_error("flight_time_inverse: duration out of range");
  }
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (flight_time(params, mid) < t) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15 * (1.0 + hi)) break;
  }
  double w = 0.5 * (lo + hi);
  for (int it = 0; it < 4; ++it) {
    const double f = flight_time(params, w) - t;
    const double df = params.ln_a * (w * (f + t) + 2.0);
    const double step = f / df;
    w -= step;
    if (!(w > 0.0)) {
      w = 0.5 * (lo + hi);
      break;
    }
    if (std::fabs(step) <= 1e-14 * w) break;
  }
  return w;
}

double exit_time_derivative(const PotentialParams& params, double v3) {
  if (!(v3 < 0.0)) throw std::domain_error("exit_time_derivative: needs an arriving state, v3 < 0");
  const double tb = flight_time(params, -v3);
  return -2.0 * params.ln_a + params.ln_a * v3 * tb;
}

}  // namespace logvlasov
