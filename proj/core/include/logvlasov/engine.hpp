#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "logvlasov/boundary.hpp"
#include "logvlasov/diagnostics.hpp"
#include "logvlasov/flow.hpp"
#include "logvlasov/histogram.hpp"

namespace logvlasov {

struct Particle {
  double x1 = 0.0, x2 = 0.0, x3 = 0.0;
  double v1 = 0.0, v2 = 0.0, v3 = 0.0;
  std::uint32_t events = 0;  // next event index of the particle's stream

  PhaseState state() const { return {{x1, x2}, x3, {v1, v2, v3}}; }
};

// The fluctuation f = f+ - f- carried as two equal-size positive ensembles.
// Particle i of both signs shares the stream key (seed, i, event), so the
// populations are coupled draw-for-draw; each marginal law is untouched and
// the signed cell sums lose most of their sampling variance.
struct SignedEnsemble {
  PotentialParams params;
  std::vector<Particle> plus;
  std::vector<Particle> minus;
  double weight_per_particle = 0.0;  // population mass / particle count
  double time = 0.0;
  std::uint64_t seed = 0;
};

// Initial fluctuation: the plus population follows the stationary law with
// heights displaced up by height_shift, the minus population the stationary
// law itself.  height_shift = 0 reproduces f0 = 0 exactly.
struct FluctuationSpec {
  double height_shift = 1.0;
};

SignedEnsemble init_fluctuation(const PotentialParams& params, std::int64_t n_per_sign,
                                std::uint64_t seed, const FluctuationSpec& spec = {});

// A single stationary-distributed population (for invariance runs).
std::vector<Particle> init_stationary(const PotentialParams& params, std::int64_t n,
                                      std::uint64_t seed);

// Advance every particle through its exact flight/reflection sequence from
// `from_time` to `to_time`.  Pure per-particle map; deterministic for any
// thread count.
void evolve_population(const PotentialParams& params, std::vector<Particle>& particles,
                       double from_time, double to_time, std::uint64_t seed, int n_threads = 1);

void evolve(SignedEnsemble& ensemble, double t_target, int n_threads = 1);

struct L1Estimate {
  double value = 0.0;
  double std_error = 0.0;
  double refined_value = 0.0;  // same statistic at 2x bin refinement (bias proxy)
};

// Histogram L1 distance sum_cells |mass+ - mass-| with a pair-resampling
// bootstrap standard error.
L1Estimate estimate_l1(const SignedEnsemble& ensemble, const HistogramSpec& hist,
                       int bootstrap_replicas = 32, int n_threads = 1);

struct MomentEstimate {
  double value = 0.0;      // max over height slabs
  double std_error = 0.0;  // bootstrap error of the max
  std::vector<double> per_slab;
};

// Slab-max exponential moment sup_x int e^{theta(|v|^2+2 Phi)} |f| dv,
// importance-weighted on the (v3,|v_par|) cells of each height slab.
MomentEstimate estimate_exponential_moment(const SignedEnsemble& ensemble, double theta,
                                           const HistogramSpec& hist, int bootstrap_replicas = 32,
                                           int n_threads = 1);

// Everything the diagnostics consume at one output time, measured in a
// single pass: the L1 channels (plain and phi_1..phi_4 weighted), the
// exponential moment, per-sign defect masses and stationarity probes, and
// the per-sign cell occupancy for the Doeblin check.
struct CheckpointStats {
  double time = 0.0;
  L1Estimate l1;
  std::array<double, 4> phi_norm{};     // ||phi_k(t_f) f|| estimates, k = 1..4
  std::array<double, 4> phi_norm_se{};
  double moment = 0.0;
  double moment_se = 0.0;
  double theta = 0.0;
  double defect_plus = 0.0;   // mass with t_f >= T0/4
  double defect_minus = 0.0;
  double mean_phi_plus = 0.0;     // E[Phi(x3)] over the plus population
  double mean_speed2_plus = 0.0;  // E|v|^2 over the plus population
  std::vector<double> cell_mass_plus;
  std::vector<double> cell_mass_minus;
  std::vector<std::int64_t> cell_count_plus;
  std::vector<std::int64_t> cell_count_minus;
};

struct StatsConfig {
  double t0 = 32.0;
  double delta = 0.5;
  double theta = 0.2;
  int bootstrap_replicas = 32;
  bool with_refinement = true;
  bool keep_cells = false;  // retain per-sign cell arrays for the Doeblin check
};

CheckpointStats compute_checkpoint_stats(const SignedEnsemble& ensemble,
                                         const HistogramSpec& hist, const StatsConfig& cfg,
                                         int n_threads = 1);

// Versioned binary particle dump: seed, params, time, then both populations.
void write_checkpoint(const std::string& path, const SignedEnsemble& ensemble);
SignedEnsemble read_checkpoint(const std::string& path);

}  // namespace logvlasov
