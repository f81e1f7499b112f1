#include "logvlasov/potential.hpp"

#include <cmath>

namespace logvlasov {

double erf_inv(double z) {
  if (!(z > -1.0 && z < 1.0)) throw std::domain_error("erf_inv: argument outside (-1,1)");
  if (z == 0.0) return 0.0;

  // Winitzki's approximation, ~1e-4 accurate on the whole interval.
  const double kA = 0.147;
  const double l = std::log1p(-z * z);
  const double c = 2.0 / (M_PI * kA) + 0.5 * l;
  double x = std::copysign(std::sqrt(std::sqrt(c * c - l / kA) - c), z);

  // Newton on erf(x) - z; quadratic convergence makes four steps ample.
  const double two_over_sqrt_pi = 2.0 / std::sqrt(M_PI);
  for (int it = 0; it < 6; ++it) {
    const double err = std::erf(x) - z;
    const double step = err / (two_over_sqrt_pi * std::exp(-x * x));
    x -= step;
    if (std::fabs(step) <= 1e-14 * std::fabs(x)) break;
  }
  return x;
}

PotentialParams PotentialParams::from_log_slope(double ln_a, double mass) {
  if (!(ln_a > 0.0 && ln_a < 1.0)) {
    throw std::domain_error("PotentialParams: requires 1 < a < e, i.e. 0 < ln a < 1");
  }
  if (!(mass >= 0.0)) throw std::domain_error("PotentialParams: mass must be non-negative");

  PotentialParams p;
  p.ln_a = ln_a;
  p.a = std::exp(ln_a);
  // Snap 1/ln a to the nearest integer when within roundoff so that e.g.
  // a = e^{1/8} lands on A = 8 no matter how a was transported through text.
  const double r = 1.0 / ln_a;
  const double nearest = std::nearbyint(r);
  p.big_a = int((std::fabs(r - nearest) < 1e-9 * r) ? nearest : std::floor(r));
  p.mass = mass;
  if (r <= 1.0) {
    throw std::domain_error("PotentialParams: 1/ln a <= 1, stationary state has divergent mass");
  }
  p.c_m = mass * (r - 1.0) / std::sqrt(2.0 * M_PI);
  return p;
}

PotentialParams PotentialParams::from_base(double a, double mass) {
  if (!(a > 1.0 && a < std::exp(1.0))) {
    throw std::domain_error("PotentialParams: base must satisfy 1 < a < e");
  }
  return from_log_slope(std::log(a), mass);
}

}  // namespace logvlasov
