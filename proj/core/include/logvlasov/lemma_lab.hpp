#pragma once

#include <cstdint>
#include <vector>

#include "logvlasov/diagnostics.hpp"
#include "logvlasov/phase.hpp"
#include "logvlasov/potential.hpp"

namespace logvlasov {

// Horizontal winding truncation for the periodic-copy sums.
struct WindingIndex {
  int m_max = 0;          // windings kept: |m|,|n| <= m_max
  double tail_bound = 0;  // analytic bound on the dropped Gaussian tail
};

// Finite-difference check of the velocity -> (footpoint, flight time) map:
// the Jacobian determinant equals t_b^2 |dt_b/dv3| and sits between
// c1 t_b^2 and c2 t_b^2 (1 + |v3| t_b).
struct JacobianRow {
  double v3 = 0.0;
  double t_b = 0.0;
  double dtb_dv3_fd = 0.0;        // central finite difference
  double dtb_dv3_closed = 0.0;    // -2 ln a + ln a v3 t_b
  double dtb_dv12_max = 0.0;      // |dt_b/dv1|, |dt_b/dv2| (should vanish)
  double det_fd = 0.0;            // 3x3 determinant by finite differences
  double det_over_tb2 = 0.0;
  double sandwich_upper = 0.0;    // det/(t_b^2 (1+|v3| t_b))
  double richardson_order = 0.0;  // observed FD convergence order
};

struct JacobianReport {
  std::vector<JacobianRow> rows;
  double max_dtb_dv12 = 0.0;
  double max_closed_form_error = 0.0;  // |fd - closed| relative
  double lower_constant = 0.0;         // min det/t_b^2
  double upper_constant = 0.0;         // max det/(t_b^2 (1+|v3| t_b))
  double min_richardson_order = 0.0;
};

JacobianReport verify_jacobian_sandwich(const PotentialParams& params,
                                        const std::vector<double>& v3_grid,
                                        const Vec2& v_par = {0.4, -0.3});

// Sum of wall-Maxwellian factors over the periodic copies sharing a
// footpoint pair and flight time:
//   S = sum_{m,n} mu(v^{m,n}_b),  v^{m,n}_par = (dx + (m,n))/t_b,
// with the vertical component fixed by the flight time.
double maxwellian_winding_sum(const PotentialParams& params, const Vec2& x, const Vec2& x_prev,
                              double t_b, WindingIndex* used = nullptr);

// The nine |m|<2, |n|<2 terms kept unabsorbed in the short-flight bound.
double maxwellian_winding_near_diagonal(const PotentialParams& params, const Vec2& x,
                                        const Vec2& x_prev, double t_b);

// Test functions for the boundary-flux/volume identity.
enum class CovTestFunction {
  stationary_density,   // g = mu~ / m, both sides 1
  truncated_indicator,  // g = 1_{x3 <= H, |v| <= Vmax}
};

struct CovIdentityReport {
  double lhs = 0.0;  // boundary-flux side, Monte Carlo
  double lhs_se = 0.0;
  double rhs = 0.0;  // volume side, quadrature
};

CovIdentityReport verify_cov_identity(const PotentialParams& params, CovTestFunction g,
                                      std::int64_t n_samples, std::uint64_t seed,
                                      int n_threads = 1, double height_cap = 1.0,
                                      double speed_cap = 2.0);

// Exit-time sandwich over a |v3| grid.
struct TbBoundsReport {
  double upper_ratio_max = 0.0;    // max t_b / a^{v3^2/2}; supremum sqrt(2 pi ln a)
  double upper_ratio_bound = 0.0;  // sqrt(2 pi ln a)
  double lower_ratio_min = 0.0;    // min t_b / (a^{v3^2/2} sqrt(1-a^{-v3^2/2}))
  double small_v_ratio_min = 0.0;  // min t_b/|v3| on |v3| <= 0.1
  double zero_limit_ratio = 0.0;   // t_b/|v3| at the smallest grid point
};

TbBoundsReport verify_tb_bounds(const PotentialParams& params, const std::vector<double>& v3_grid);

}  // namespace logvlasov
