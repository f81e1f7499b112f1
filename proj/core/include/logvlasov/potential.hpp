#pragma once

#include <cmath>
#include <stdexcept>

namespace logvlasov {

// Inverse error function on (-1,1): Winitzki seed plus Newton refinement,
// terminating at relative 1e-14.
double erf_inv(double z);

// Base, log-slope and derived constants for the potential
// Phi(x) = log_a(1 + x3), with 1 < a < e and A = floor(1/ln a) >= 8.
struct PotentialParams {
  double a = 0.0;       // base of the logarithm
  double ln_a = 0.0;    // ln(a), the primary stored quantity
  int big_a = 0;        // A = floor(1/ln a)
  double mass = 1.0;    // total mass m > 0
  double c_m = 0.0;     // stationary normalization

  static PotentialParams from_log_slope(double ln_a, double mass = 1.0);
  static PotentialParams from_base(double a, double mass = 1.0);

  // Phi(x3) = ln(1+x3)/ln(a); zero exactly at x3 = 0.
  double phi(double x3) const {
    if (x3 < 0.0) throw std::domain_error("phi: height below the boundary");
    return std::log1p(x3) / ln_a;
  }

  double phi_gradient(double x3) const {
    if (x3 < 0.0) throw std::domain_error("phi_gradient: height below the boundary");
    return 1.0 / ((1.0 + x3) * ln_a);
  }

  // a^w = e^{w ln a}
  double pow_a(double w) const { return std::exp(w * ln_a); }
};

// F_a(u) = int_0^u a^{-y^2/2} dy, odd, strictly increasing, with range
// (-sqrt(pi/(2 ln a)), sqrt(pi/(2 ln a))).  Evaluated through the scaled
// error function; the inverse goes through erf_inv.
class GaussIntegral {
 public:
  explicit GaussIntegral(const PotentialParams& params)
      : scale_(std::sqrt(0.5 * params.ln_a)),
        bound_(std::sqrt(M_PI / (2.0 * params.ln_a))) {}

  double operator()(double u) const { return bound_ * std::erf(u * scale_); }

  // Supremum of |F_a|, attained in the limit u -> +-infinity.
  double bound() const { return bound_; }

  double inverse(double y) const {
    if (!(std::fabs(y) < bound_)) {
      throw std::domain_error("GaussIntegral::inverse: value outside the range of F_a");
    }
    return erf_inv(y / bound_) / scale_;
  }

 private:
  double scale_;
  double bound_;
};

}  // namespace logvlasov
