#pragma once

#include <cstdint>
#include <vector>

#include "logvlasov/boundary.hpp"
#include "logvlasov/flow.hpp"

namespace logvlasov {

// Kahan accumulator; reflection chains can run past 1e5 flights.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

struct AdvanceResult {
  PhaseState state;
  double elapsed = 0.0;
  bool hit = false;
};

// Exact flow up to min(horizon, forward exit time).  On a wall hit the
// returned state sits exactly on x3 = 0 with the arrival velocity.
AdvanceResult advance(const PotentialParams& params, const PhaseState& state, double horizon);

// One stochastic cycle: reflection instants (decreasing), footpoints,
// outgoing velocities, and the arrival speeds of each flight.
struct CycleRecord {
  std::vector<double> times;               // t^0 = t_stop > t^1 > ...
  std::vector<Vec2> footpoints;            // x^k
  std::vector<Vec3> outgoing_velocities;   // v^k, third component > 0
  std::vector<double> arrival_speeds;      // |v_b^k| = |v^k|
};

// Alternate free flight and diffuse re-emission, starting from a boundary
// state with outgoing velocity, until the next reflection instant would
// leave the window [0, t_stop].  Each re-emission draws from the wall law,
// which is exactly the cycle measure d-sigma because arrival and departure
// speeds agree.
CycleRecord run_cycle_chain(const PotentialParams& params, const Vec2& start_footpoint,
                            const Vec3& outgoing, double t_stop, RandomStream& stream);

// Parameters of the cycle-survival estimate.
struct SurvivalConfig {
  double delta = 0.05;   // velocity cutoff
  double c_omega = 0.0;  // empirical constant in t_b >= C_Omega |v3|
  int amp = 2;           // the integer a >= 2 of the combinatorial choice

  // k(t) = amp * (ceil(t/(C_Omega delta)) + 1)
  std::int64_t k_of_t(double t) const;
};

// inf over a grid of flight_time(w)/w; the infimum sits at w -> 0 where the
// ratio tends to 2 ln a.
double measure_c_omega(const PotentialParams& params, int grid_points = 512,
                       double w_max = 6.0);

// Least integer amp >= 2 with (delta^{2 amp} e amp)^{1/(C_Omega delta)} <= e^{-2}.
int choose_amp(double delta, double c_omega);

SurvivalConfig make_survival_config(const PotentialParams& params, double delta = 0.05);

struct SurvivalEstimate {
  double probability = 0.0;
  double std_error = 0.0;
  std::int64_t survived = 0;
  std::int64_t samples = 0;
};

// Monte Carlo estimate of the probability that k flux-law flight times sum
// to less than t (a k-cycle still alive after a backward window of length t).
SurvivalEstimate survival_probability(const PotentialParams& params, double t, std::int64_t k,
                                      std::int64_t n_samples, std::uint64_t seed,
                                      int n_threads = 1);

}  // namespace logvlasov
