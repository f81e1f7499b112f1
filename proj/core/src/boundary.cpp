#include "logvlasov/boundary.hpp"

namespace logvlasov {

double stationary_normalization(const PotentialParams& params) {
  const double r = 1.0 / params.ln_a;
  if (r <= 1.0) {
    throw std::domain_error("stationary_normalization: 1/ln a <= 1 gives divergent mass");
  }
  return params.mass * (r - 1.0) / std::sqrt(2.0 * M_PI);
}

}  // namespace logvlasov
