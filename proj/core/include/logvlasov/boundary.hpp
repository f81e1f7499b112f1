#pragma once

#include "logvlasov/phase.hpp"
#include "logvlasov/potential.hpp"
#include "logvlasov/rng.hpp"

namespace logvlasov {

// Wall Maxwellian of unit temperature, mu(v) = (1/2pi) e^{-|v|^2/2}.  The
// boundary is isothermal, so the position argument drops out.
inline double wall_maxwellian(const Vec3& v) {
  const double s2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
  return std::exp(-0.5 * s2) / (2.0 * M_PI);
}

inline double wall_maxwellian_speed(double speed) {
  return std::exp(-0.5 * speed * speed) / (2.0 * M_PI);
}

// Diffuse-reflection law: outgoing velocities distributed as mu(v){v3} on
// v3 > 0, i.e. v3 Rayleigh and the tangential components standard normal.
struct BoundaryLaw {
  static Vec3 sample_outgoing(RandomStream& stream) {
    const auto tan = stream.gaussian_pair();
    return {tan[0], tan[1], stream.rayleigh()};
  }
};

// Normalization of the stationary state tilde-mu = (c_m/2pi) e^{-(|v|^2/2+Phi)}:
// c_m = m (1/ln a - 1)/sqrt(2 pi), so the phase-space integral equals m.
double stationary_normalization(const PotentialParams& params);

// The explicit stationary state and its sampler.
struct StationaryState {
  PotentialParams params;

  explicit StationaryState(const PotentialParams& p) : params(p) {}

  double density(const PhaseState& s) const {
    return params.c_m / (2.0 * M_PI) *
           std::exp(-(0.5 * s.speed2() + params.phi(s.x3)));
  }

  // Normalized height marginal (A-1)(1+h)^{-A} with A = 1/ln a, by inverse CDF.
  double sample_height(double u) const {
    const double tail = 1.0 / params.ln_a - 1.0;
    return std::pow(1.0 - u, -1.0 / tail) - 1.0;
  }

  double height_cdf(double h) const {
    return 1.0 - std::pow(1.0 + h, 1.0 - 1.0 / params.ln_a);
  }

  // One normalized draw (unit mass): x_par uniform, height by inverse CDF,
  // velocity a standard Gaussian triple.
  PhaseState sample(RandomStream& stream) const {
    PhaseState s;
    s.x_par = {stream.uniform(), stream.uniform()};
    s.x3 = sample_height(stream.uniform());
    const auto g01 = stream.gaussian_pair();
    const auto g23 = stream.gaussian_pair();
    s.v = {g01[0], g01[1], g23[0]};
    return s;
  }
};

}  // namespace logvlasov
