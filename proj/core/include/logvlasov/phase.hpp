#pragma once

#include <array>
#include <cmath>

namespace logvlasov {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;

// Reduce a torus coordinate to [0,1).
inline double wrap_unit(double x) {
  const double w = x - std::floor(x);
  return w < 1.0 ? w : 0.0;
}

inline Vec2 wrap_unit(Vec2 x) { return {wrap_unit(x[0]), wrap_unit(x[1])}; }

// Shortest signed distance between two torus coordinates.
inline double torus_distance(double a, double b) {
  const double d = wrap_unit(a - b);
  return d <= 0.5 ? d : d - 1.0;
}

// A point of T^2 x R_+ x R^3.  x_par is kept reduced to [0,1)^2; x3 = 0 is
// exact boundary contact.
struct PhaseState {
  Vec2 x_par{0.0, 0.0};
  double x3 = 0.0;
  Vec3 v{0.0, 0.0, 0.0};

  double speed2() const { return v[0] * v[0] + v[1] * v[1] + v[2] * v[2]; }
  double speed() const { return std::sqrt(speed2()); }
  double vpar_norm() const { return std::hypot(v[0], v[1]); }
  bool on_boundary() const { return x3 == 0.0; }
};

enum class ExitDirection { backward, forward };

// Flight data to the previous (backward) or next (forward) wall contact.
// boundary_velocity is the full velocity at the footpoint: its vertical
// component is +speed for a backward footpoint (the particle departed
// upward) and -speed for a forward one (it arrives downward).
struct ExitEvent {
  double duration = 0.0;
  Vec2 footpoint{0.0, 0.0};
  Vec3 boundary_velocity{0.0, 0.0, 0.0};
  ExitDirection direction = ExitDirection::backward;
  bool degenerate = false;  // tangential boundary state, duration 0
};

}  // namespace logvlasov
