#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "logvlasov/histogram.hpp"
#include "logvlasov/phase.hpp"
#include "logvlasov/potential.hpp"

namespace logvlasov {

// The four polynomial-logarithmic weights, normalized so phi_i(0) = 1:
//   phi_1 = (e ln(e+1))^{-1} (e+tau)   ln(e + ln(e+tau))
//   phi_2 = (e^2 ln(e+1))^{-1} (e+tau)^2 ln(e + ln(e+tau))
//   phi_3 = e^{5-A} (tau+e)^{A-5} ln(tau+e)^{-(1+delta)}
//   phi_4 = e^{4-A} (tau+e)^{A-4} ln(tau+e)^{-(1+delta)}
struct WeightSpec {
  int index = 1;       // 1..4
  double delta = 0.5;  // in (0,1)
  int big_a = 8;
};

double phi_weight(const WeightSpec& spec, double tau);

// Doeblin data: the period T0 > 20 and the L1 norm of the minorant.
struct DoeblinSpec {
  double t0 = 32.0;
  double m_norm = 0.0;  // m_{T0} = ||m(.,.)||_{L1}
};

// m(x,v) = 1_{t_b <= T0/4} T0^{-4-A} mu(x^1, v_b), evaluated through the
// closed-form backward exit time and |v_b|^2 = |v|^2 + 2 Phi(x3).
double doeblin_minorant(const PotentialParams& params, const PhaseState& state, double t0);

// ||m||_{L1} by deterministic quadrature (separable Gaussian in v_par,
// adaptive in x3, erfc threshold in v3).
double doeblin_norm_quadrature(const PotentialParams& params, double t0);

struct MonteCarloEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

// ||m||_{L1} by Monte Carlo over stationary-distributed states; the
// integrand ratio against the stationary law is constant except for the
// flight-time indicator.
MonteCarloEstimate doeblin_norm_mc(const PotentialParams& params, double t0,
                                   std::int64_t n_samples, std::uint64_t seed,
                                   int n_threads = 1);

// Triple norm |||f|||_i = ||f|| + 4 m_T/phi_{i-1}(3T0/4) ||phi_{i-1}(t_f) f||
//                       + 4 e m_T/(T0 phi_{i-1}(3T0/4)) ||phi_i(t_f) f||,
// for i in {2,4}.
double triple_norm(double l1_norm, double phi_im1_norm, double phi_i_norm, double delta,
                   int big_a, const DoeblinSpec& doeblin, int i);

// Cell-wise check of the one-period lower bound
//   f(N T0) >= m(x,v) (mass - defect)
// for a non-negative population binned on the same histogram at both times.
struct DoeblinReport {
  std::int64_t cells_checked = 0;
  std::int64_t violations = 0;
  double violating_fraction = 0.0;
  double minorant_mass_checked = 0.0;  // sum of the per-cell minorant integrals
};

DoeblinReport doeblin_check(const HistogramSpec& hist, const std::vector<double>& next_cell_mass,
                            const std::vector<std::int64_t>& next_cell_count,
                            double next_weight_per_particle, double prev_total_mass,
                            double prev_defect_mass, const DoeblinSpec& doeblin,
                            const PotentialParams& params, std::int64_t min_cell_count = 10);

// Per-cell integrals of the minorant over the interior histogram cells
// (under/overflow regions get 0).
std::vector<double> doeblin_minorant_cell_integrals(const HistogramSpec& hist,
                                                    const PotentialParams& params, double t0);

// Least-squares decay exponents of a norm series, with and without the
// (ln t)^{A-6-delta/2} correction divided out.
struct DecayFit {
  double exponent_raw = 0.0;
  double exponent_corrected = 0.0;
  double rms_residual_raw = 0.0;
  double rms_residual_corrected = 0.0;
  int n_used = 0;
  int n_dropped = 0;  // non-positive estimates, flagged and skipped
};

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, int big_a, double delta);

// Moment weights of the exponential-moment bound; requires 0 <= 2 theta < theta'.
struct MomentWeights {
  double theta = 0.2;
  double theta_prime = 0.5;
  int big_a = 8;

  // rho(t) = (ln<t>)^{6-A} <t>^{A-5} with <t> = sqrt(1+t^2)
  double varrho(double t) const;
  // envelope (ln<t>)^{6-A} <t>^{A-6}
  double varrho_prime_envelope(double t) const;
};

}  // namespace logvlasov
