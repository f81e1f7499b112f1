#include "logvlasov/engine.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "logvlasov/parallel.hpp"

namespace logvlasov {

namespace {

constexpr std::uint32_t kInitEvent = 0;
// Bootstrap multipliers draw from a reserved event index so they never
// collide with reflection draws.
constexpr std::uint32_t kBootstrapEvent = 0xB0075u;

Particle make_particle(const StationaryState& stationary, RandomStream& stream,
                       double height_shift) {
  const double u_h = stream.uniform();
  const double x1 = stream.uniform();
  const double x2 = stream.uniform();
  const auto g01 = stream.gaussian_pair();
  const auto g23 = stream.gaussian_pair();
  Particle p;
  p.x1 = x1;
  p.x2 = x2;
  p.x3 = height_shift + stationary.sample_height(u_h);
  p.v1 = g01[0];
  p.v2 = g01[1];
  p.v3 = g23[0];
  p.events = kInitEvent + 1;
  return p;
}

// Poisson(1) by inverse CDF; clamped at 8 (beyond is < 1e-8 likely).
int poisson_one(double u) {
  static const double cdf[9] = {0.36787944117144233, 0.7357588823428847, 0.9196986029286058,
                                0.9810118431238462,  0.9963401531726563, 0.9994058151824183,
                                0.9999167588507119,  0.9999897508033253, 0.9999988747974019};
  for (int k = 0; k < 9; ++k) {
    if (u < cdf[k]) return k;
  }
  return 9;
}

void advance_particle(const PotentialParams& params, const GaussIntegral& fa, Particle& p,
                      double remaining, std::uint64_t seed, std::uint64_t pid) {
  while (remaining > 0.0) {
    double energy, f_here, f_wall;
    if (p.x3 == 0.0 && p.v3 >= 0.0) {
      if (p.v3 == 0.0) {
        // Tangential contact gets re-emitted immediately.
        RandomStream stream(seed, pid, p.events++);
        const Vec3 v = BoundaryLaw::sample_outgoing(stream);
        p.v1 = v[0];
        p.v2 = v[1];
        p.v3 = v[2];
        continue;
      }
      energy = 0.5 * p.v3 * p.v3;
      f_here = fa(p.v3);
      f_wall = f_here;
    } else {
      energy = 0.5 * p.v3 * p.v3 + std::log1p(p.x3) / params.ln_a;
      f_here = fa(p.v3);
      f_wall = fa(std::sqrt(2.0 * energy));
    }
    const double amplitude = params.ln_a * std::exp(params.ln_a * energy);
    const double t_forward = amplitude * (f_wall + f_here);

    if (t_forward > remaining) {
      double target = f_here - remaining / amplitude;
      double v3;
      if (std::fabs(target) >= f_wall) {
        v3 = std::copysign(std::sqrt(2.0 * energy), target);
      } else {
        v3 = fa.inverse(target);
      }
      p.x1 = wrap_unit(p.x1 + p.v1 * remaining);
      p.x2 = wrap_unit(p.x2 + p.v2 * remaining);
      p.v3 = v3;
      p.x3 = std::max(0.0, std::expm1(params.ln_a * (energy - 0.5 * v3 * v3)));
      return;
    }

    p.x1 = wrap_unit(p.x1 + p.v1 * t_forward);
    p.x2 = wrap_unit(p.x2 + p.v2 * t_forward);
    p.x3 = 0.0;
    remaining -= t_forward;
    RandomStream stream(seed, pid, p.events++);
    const Vec3 v = BoundaryLaw::sample_outgoing(stream);
    p.v1 = v[0];
    p.v2 = v[1];
    p.v3 = v[2];
  }
}

struct Channels {
  bool unit = false;
  bool phi = false;
  bool moment = false;
  int count() const { return (unit ? 1 : 0) + (phi ? 4 : 0) + (moment ? 1 : 0); }
};

// Per-particle binning scratch: cell, optional refined cell, channel weights.
struct BinScratch {
  std::vector<std::uint32_t> cell;
  std::vector<std::uint32_t> cell_refined;
  std::vector<float> weights;  // [particle * n_channels + channel]
};

struct CollectResult {
  std::size_t cells = 0;
  int n_channels = 0;
  std::vector<double> base;               // [channel * cells + cell], signed sums
  std::vector<double> base_refined_unit;  // refined-unit channel, signed sums
  std::vector<double> mass_plus, mass_minus;
  std::vector<std::int64_t> count_plus, count_minus;
  double defect_plus = 0.0, defect_minus = 0.0;
  double mean_phi_plus = 0.0, mean_speed2_plus = 0.0;
};

void fill_scratch(const PotentialParams& params, const std::vector<Particle>& particles,
                  const HistogramSpec& hist, const HistogramSpec* refined, const Channels& ch,
                  const StatsConfig& cfg, int n_threads, BinScratch& scratch,
                  std::vector<double>& chunk_defect, std::vector<double>& chunk_phi,
                  std::vector<double>& chunk_speed2) {
  const std::int64_t n = std::int64_t(particles.size());
  const int nch = ch.count();
  scratch.cell.resize(std::size_t(n));
  if (refined) scratch.cell_refined.resize(std::size_t(n));
  scratch.weights.assign(std::size_t(n) * std::size_t(nch), 0.0f);

  const std::int64_t n_chunks = chunk_count(n);
  chunk_defect.assign(std::size_t(n_chunks), 0.0);
  chunk_phi.assign(std::size_t(n_chunks), 0.0);
  chunk_speed2.assign(std::size_t(n_chunks), 0.0);

  parallel_chunks(n, n_threads, [&](std::int64_t chunk, std::int64_t lo, std::int64_t hi) {
    double defect = 0.0, phi_sum = 0.0, speed2_sum = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) {
      const Particle& p = particles[std::size_t(i)];
      const PhaseState s = p.state();
      scratch.cell[std::size_t(i)] = std::uint32_t(hist.cell_of(s));
      if (refined) scratch.cell_refined[std::size_t(i)] = std::uint32_t(refined->cell_of(s));

      const double phi_x = params.phi(p.x3);
      const double speed2 = s.speed2();
      phi_sum += phi_x;
      speed2_sum += speed2;

      float* w = &scratch.weights[std::size_t(i) * std::size_t(nch)];
      int slot = 0;
      if (ch.unit) w[slot++] = 1.0f;
      if (ch.phi || cfg.t0 > 0.0) {
        const double t_f = exit_time(params, s, ExitDirection::forward).duration;
        if (cfg.t0 > 0.0 && t_f >= 0.25 * cfg.t0) defect += 1.0;
        if (ch.phi) {
          for (int k = 1; k <= 4; ++k) {
            w[slot++] = float(phi_weight({k, cfg.delta, params.big_a}, t_f));
          }
        }
      }
      if (ch.moment) {
        w[slot++] = float(std::exp(cfg.theta * (speed2 + 2.0 * phi_x)));
      }
    }
    chunk_defect[std::size_t(chunk)] = defect;
    chunk_phi[std::size_t(chunk)] = phi_sum;
    chunk_speed2[std::size_t(chunk)] = speed2_sum;
  });
}

CollectResult collect(const SignedEnsemble& ensemble, const HistogramSpec& hist,
                      const Channels& ch, const StatsConfig& cfg, bool keep_cells, int n_threads,
                      BinScratch& plus_scratch, BinScratch& minus_scratch) {
  if (ensemble.plus.empty() || ensemble.minus.empty()) {
    throw std::domain_error("engine: populations must be non-empty");
  }
  HistogramSpec refined_spec;
  const HistogramSpec* refined = nullptr;
  if (cfg.with_refinement && ch.unit) {
    refined_spec = hist.refined(2);
    refined = &refined_spec;
  }

  CollectResult res;
  res.cells = hist.cells();
  res.n_channels = ch.count();

  std::vector<double> dplus, dminus, phip, phim, s2p, s2m;
  fill_scratch(ensemble.params, ensemble.plus, hist, refined, ch, cfg, n_threads, plus_scratch,
               dplus, phip, s2p);
  fill_scratch(ensemble.params, ensemble.minus, hist, refined, ch, cfg, n_threads, minus_scratch,
               dminus, phim, s2m);

  const double w = ensemble.weight_per_particle;
  for (const double d : dplus) res.defect_plus += d;
  for (const double d : dminus) res.defect_minus += d;
  res.defect_plus *= w;
  res.defect_minus *= w;
  double phi_total = 0.0, s2_total = 0.0;
  for (const double d : phip) phi_total += d;
  for (const double d : s2p) s2_total += d;
  res.mean_phi_plus = phi_total / double(ensemble.plus.size());
  res.mean_speed2_plus = s2_total / double(ensemble.plus.size());

  // Serial accumulation keeps the floating sums in a fixed order.
  res.base.assign(std::size_t(res.n_channels) * res.cells, 0.0);
  if (refined) res.base_refined_unit.assign(refined->cells(), 0.0);
  if (keep_cells) {
    res.mass_plus.assign(res.cells, 0.0);
    res.mass_minus.assign(res.cells, 0.0);
    res.count_plus.assign(res.cells, 0);
    res.count_minus.assign(res.cells, 0);
  }

  const int nch = res.n_channels;
  auto accumulate = [&](const std::vector<Particle>& particles, const BinScratch& scratch,
                        double sign, std::vector<double>* mass, std::vector<std::int64_t>* count) {
    const std::size_t n = particles.size();
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t cell = scratch.cell[i];
      const float* wts = &scratch.weights[i * std::size_t(nch)];
      for (int c = 0; c < nch; ++c) {
        res.base[std::size_t(c) * res.cells + cell] += sign * w * double(wts[c]);
      }
      if (refined) {
        res.base_refined_unit[scratch.cell_refined[i]] += sign * w;
      }
      if (mass) {
        (*mass)[cell] += w;
        ++(*count)[cell];
      }
    }
  };
  accumulate(ensemble.plus, plus_scratch, +1.0, keep_cells ? &res.mass_plus : nullptr,
             keep_cells ? &res.count_plus : nullptr);
  accumulate(ensemble.minus, minus_scratch, -1.0, keep_cells ? &res.mass_minus : nullptr,
             keep_cells ? &res.count_minus : nullptr);
  return res;
}

double abs_cell_sum(const double* cells, std::size_t n) {
  double total = 0.0;
  for (std::size_t c = 0; c < n; ++c) total += std::fabs(cells[c]);
  return total;
}

// Slab-max of the moment channel: per interior height slab, the v-cell L1
// divided by the slab width.
double moment_max(const HistogramSpec& hist, const double* cells, std::vector<double>* per_slab) {
  const int nx = hist.regions_x3();
  const std::size_t stride = std::size_t(hist.regions_v3()) * std::size_t(hist.regions_vpar());
  double best = 0.0;
  if (per_slab) per_slab->assign(std::size_t(nx), 0.0);
  for (int ix = 0; ix < nx; ++ix) {
    const double width = hist.x3_region_width(ix);
    if (width <= 0.0) continue;
    double slab = 0.0;
    const double* row = cells + std::size_t(ix) * stride;
    for (std::size_t c = 0; c < stride; ++c) slab += std::fabs(row[c]);
    slab /= width;
    if (per_slab) (*per_slab)[std::size_t(ix)] = slab;
    best = std::max(best, slab);
  }
  return best;
}

struct ReplicaStats {
  double l1 = 0.0;
  std::array<double, 4> phi{};
  double moment = 0.0;
};

ReplicaStats stats_from_cells(const HistogramSpec& hist, const Channels& ch,
                              const std::vector<double>& cells, std::size_t n_cells,
                              std::vector<double>* per_slab) {
  ReplicaStats out;
  int slot = 0;
  if (ch.unit) {
    out.l1 = abs_cell_sum(&cells[std::size_t(slot) * n_cells], n_cells);
    ++slot;
  }
  if (ch.phi) {
    for (int k = 0; k < 4; ++k) {
      out.phi[std::size_t(k)] = abs_cell_sum(&cells[std::size_t(slot) * n_cells], n_cells);
      ++slot;
    }
  }
  if (ch.moment) {
    out.moment = moment_max(hist, &cells[std::size_t(slot) * n_cells], per_slab);
    ++slot;
  }
  return out;
}

// Pair-resampling bootstrap: particle pairs (the coupled plus/minus draws)
// get common Poisson(1) multipliers, which preserves the coupling in the
// replicate statistics.
std::vector<ReplicaStats> bootstrap_replicas(const SignedEnsemble& ensemble,
                                             const HistogramSpec& hist, const Channels& ch,
                                             const CollectResult& base,
                                             const BinScratch& plus_scratch,
                                             const BinScratch& minus_scratch, int replicas,
                                             int n_threads) {
  const std::size_t n = ensemble.plus.size();
  const int nch = base.n_channels;
  const double w = ensemble.weight_per_particle;

  std::vector<std::uint8_t> multipliers(std::size_t(replicas) * n);
  parallel_chunks(std::int64_t(n), n_threads,
                  [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
                    for (std::int64_t i = lo; i < hi; ++i) {
                      RandomStream stream(ensemble.seed, std::uint64_t(i), kBootstrapEvent);
                      for (int b = 0; b < replicas; ++b) {
                        multipliers[std::size_t(b) * n + std::size_t(i)] =
                            std::uint8_t(poisson_one(stream.uniform()));
                      }
                    }
                  });

  std::vector<ReplicaStats> out(static_cast<std::size_t>(replicas));
  parallel_chunks(replicas, n_threads, [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
    std::vector<double> cells(base.base.size());
    for (std::int64_t b = lo; b < hi; ++b) {
      cells = base.base;
      const std::uint8_t* mult = &multipliers[std::size_t(b) * n];
      for (std::size_t i = 0; i < n; ++i) {
        const int k = int(mult[i]) - 1;
        if (k == 0) continue;
        const float* wp = &plus_scratch.weights[i * std::size_t(nch)];
        const float* wm = &minus_scratch.weights[i * std::size_t(nch)];
        const std::size_t cp = plus_scratch.cell[i], cm = minus_scratch.cell[i];
        for (int c = 0; c < nch; ++c) {
          cells[std::size_t(c) * base.cells + cp] += k * w * double(wp[c]);
          cells[std::size_t(c) * base.cells + cm] -= k * w * double(wm[c]);
        }
      }
      out[std::size_t(b)] = stats_from_cells(hist, ch, cells, base.cells, nullptr);
    }
  }, /*chunk_size=*/1);
  return out;
}

double sample_std(const std::vector<double>& xs) {
  if (xs.size() < 2) return 0.0;
  double mean = 0.0;
  for (const double x : xs) mean += x;
  mean /= double(xs.size());
  double ss = 0.0;
  for (const double x : xs) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / double(xs.size() - 1));
}

}  // namespace

SignedEnsemble init_fluctuation(const PotentialParams& params, std::int64_t n_per_sign,
                                std::uint64_t seed, const FluctuationSpec& spec) {
  if (n_per_sign <= 0) throw std::domain_error("init_fluctuation: need a positive particle count");
  if (spec.height_shift < 0.0) {
    throw std::domain_error("init_fluctuation: height shift must be non-negative");
  }

  const StationaryState stationary(params);
  SignedEnsemble ens;
  ens.params = params;
  ens.seed = seed;
  ens.weight_per_particle = 1.0 / double(n_per_sign);
  ens.plus.resize(std::size_t(n_per_sign));
  ens.minus.resize(std::size_t(n_per_sign));
  for (std::int64_t i = 0; i < n_per_sign; ++i) {
    RandomStream stream_p(seed, std::uint64_t(i), kInitEvent);
    RandomStream stream_m(seed, std::uint64_t(i), kInitEvent);
    ens.plus[std::size_t(i)] = make_particle(stationary, stream_p, spec.height_shift);
    ens.minus[std::size_t(i)] = make_particle(stationary, stream_m, 0.0);
  }
  return ens;
}

std::vector<Particle> init_stationary(const PotentialParams& params, std::int64_t n,
                                      std::uint64_t seed) {
  if (n <= 0) throw std::domain_error("init_stationary: need a positive particle count");
  const StationaryState stationary(params);
  std::vector<Particle> out(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    RandomStream stream(seed, std::uint64_t(i), kInitEvent);
    out[std::size_t(i)] = make_particle(stationary, stream, 0.0);
  }
  return out;
}

void evolve_population(const PotentialParams& params, std::vector<Particle>& particles,
                       double from_time, double to_time, std::uint64_t seed, int n_threads) {
  if (to_time < from_time) throw std::domain_error("evolve: target time before current time");
  const double remaining = to_time - from_time;
  if (remaining == 0.0) return;
  const GaussIntegral fa(params);
  parallel_chunks(std::int64_t(particles.size()), n_threads,
                  [&](std::int64_t, std::int64_t lo, std::int64_t hi) {
                    for (std::int64_t i = lo; i < hi; ++i) {
                      advance_particle(params, fa, particles[std::size_t(i)], remaining, seed,
                                       std::uint64_t(i));
                    }
                  });
}

void evolve(SignedEnsemble& ensemble, double t_target, int n_threads) {
  evolve_population(ensemble.params, ensemble.plus, ensemble.time, t_target, ensemble.seed,
                    n_threads);
  evolve_population(ensemble.params, ensemble.minus, ensemble.time, t_target, ensemble.seed,
                    n_threads);
  ensemble.time = t_target;
}

L1Estimate estimate_l1(const SignedEnsemble& ensemble, const HistogramSpec& hist,
                       int bootstrap_replicas_n, int n_threads) {
  if (hist.cells() == 0) throw std::domain_error("estimate_l1: empty histogram");
  Channels ch;
  ch.unit = true;
  StatsConfig cfg;
  cfg.t0 = 0.0;  // no defect channel needed
  cfg.with_refinement = true;

  BinScratch sp, sm;
  const CollectResult base = collect(ensemble, hist, ch, cfg, false, n_threads, sp, sm);
  const ReplicaStats base_stats = stats_from_cells(hist, ch, base.base, base.cells, nullptr);

  L1Estimate est;
  est.value = base_stats.l1;
  est.refined_value = abs_cell_sum(base.base_refined_unit.data(), base.base_refined_unit.size());

  const auto reps = bootstrap_replicas(ensemble, hist, ch, base, sp, sm, bootstrap_replicas_n,
                                       n_threads);
  std::vector<double> vals;
  vals.reserve(reps.size());
  for (const auto& r : reps) vals.push_back(r.l1);
  est.std_error = sample_std(vals);
  return est;
}

MomentEstimate estimate_exponential_moment(const SignedEnsemble& ensemble, double theta,
                                           const HistogramSpec& hist, int bootstrap_replicas_n,
                                           int n_threads) {
  if (!(theta >= 0.0 && 2.0 * theta < 0.5)) {
    throw std::domain_error("estimate_exponential_moment: requires 0 <= 2 theta < 1/2");
  }
  Channels ch;
  ch.moment = true;
  StatsConfig cfg;
  cfg.t0 = 0.0;
  cfg.theta = theta;
  cfg.with_refinement = false;

  BinScratch sp, sm;
  const CollectResult base = collect(ensemble, hist, ch, cfg, false, n_threads, sp, sm);

  MomentEstimate est;
  est.value = moment_max(hist, base.base.data(), &est.per_slab);

  const auto reps = bootstrap_replicas(ensemble, hist, ch, base, sp, sm, bootstrap_replicas_n,
                                       n_threads);
  std::vector<double> vals;
  vals.reserve(reps.size());
  for (const auto& r : reps) vals.push_back(r.moment);
  est.std_error = sample_std(vals);
  return est;
}

CheckpointStats compute_checkpoint_stats(const SignedEnsemble& ensemble,
                                         const HistogramSpec& hist, const StatsConfig& cfg,
                                         int n_threads) {
  if (!(cfg.theta >= 0.0 && 2.0 * cfg.theta < 0.5)) {
    throw std::domain_error("compute_checkpoint_stats: requires 0 <= 2 theta < 1/2");
  }
  Channels ch;
  ch.unit = true;
  ch.phi = true;
  ch.moment = true;

  BinScratch sp, sm;
  const CollectResult base =
      collect(ensemble, hist, ch, cfg, cfg.keep_cells, n_threads, sp, sm);

  CheckpointStats out;
  out.time = ensemble.time;
  out.theta = cfg.theta;
  const ReplicaStats base_stats = stats_from_cells(hist, ch, base.base, base.cells, nullptr);
  out.l1.value = base_stats.l1;
  if (!base.base_refined_unit.empty()) {
    out.l1.refined_value =
        abs_cell_sum(base.base_refined_unit.data(), base.base_refined_unit.size());
  }
  out.phi_norm = base_stats.phi;
  out.moment = base_stats.moment;
  out.defect_plus = base.defect_plus;
  out.defect_minus = base.defect_minus;
  out.mean_phi_plus = base.mean_phi_plus;
  out.mean_speed2_plus = base.mean_speed2_plus;
  if (cfg.keep_cells) {
    out.cell_mass_plus = base.mass_plus;
    out.cell_mass_minus = base.mass_minus;
    out.cell_count_plus = base.count_plus;
    out.cell_count_minus = base.count_minus;
  }

  const auto reps =
      bootstrap_replicas(ensemble, hist, ch, base, sp, sm, cfg.bootstrap_replicas, n_threads);
  std::vector<double> vals(reps.size());
  auto se_of = [&](auto getter) {
    for (std::size_t b = 0; b < reps.size(); ++b) vals[b] = getter(reps[b]);
    return sample_std(vals);
  };
  out.l1.std_error = se_of([](const ReplicaStats& r) { return r.l1; });
  for (int k = 0; k < 4; ++k) {
    out.phi_norm_se[std::size_t(k)] =
        se_of([k](const ReplicaStats& r) { return r.phi[std::size_t(k)]; });
  }
  out.moment_se = se_of([](const ReplicaStats& r) { return r.moment; });
  return out;
}

namespace {
constexpr std::uint32_t kCheckpointMagic = 0x4B43564Cu;  // "LVCK"
constexpr std::uint32_t kCheckpointVersion = 1u;

void write_particles(std::ofstream& out, const std::vector<Particle>& ps) {
  for (const Particle& p : ps) {
    double buf[6] = {p.x1, p.x2, p.x3, p.v1, p.v2, p.v3};
    std::uint32_t tail[2] = {p.events, 0};
    out.write(reinterpret_cast<const char*>(buf), sizeof(buf));
    out.write(reinterpret_cast<const char*>(tail), sizeof(tail));
  }
}

void read_particles(std::ifstream& in, std::vector<Particle>& ps) {
  for (Particle& p : ps) {
    double buf[6];
    std::uint32_t tail[2];
    in.read(reinterpret_cast<char*>(buf), sizeof(buf));
    in.read(reinterpret_cast<char*>(tail), sizeof(tail));
    p = {buf[0], buf[1], buf[2], buf[3], buf[4], buf[5], tail[0]};
  }
}
}  // namespace

void write_checkpoint(const std::string& path, const SignedEnsemble& ensemble) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_checkpoint: cannot open " + path);
  const std::uint32_t header_u32[2] = {kCheckpointMagic, kCheckpointVersion};
  out.write(reinterpret_cast<const char*>(header_u32), sizeof(header_u32));
  const std::uint64_t seed = ensemble.seed;
  out.write(reinterpret_cast<const char*>(&seed), sizeof(seed));
  const double header_f64[4] = {ensemble.params.ln_a, ensemble.params.mass,
                                ensemble.weight_per_particle, ensemble.time};
  out.write(reinterpret_cast<const char*>(header_f64), sizeof(header_f64));
  const std::uint64_t counts[2] = {ensemble.plus.size(), ensemble.minus.size()};
  out.write(reinterpret_cast<const char*>(counts), sizeof(counts));
  write_particles(out, ensemble.plus);
  write_particles(out, ensemble.minus);
  if (!out) throw std::runtime_error("write_checkpoint: write failed for " + path);
}

SignedEnsemble read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_checkpoint: cannot open " + path);
  std::uint32_t header_u32[2];
  in.read(reinterpret_cast<char*>(header_u32), sizeof(header_u32));
  if (!in || header_u32[0] != kCheckpointMagic) {
    throw std::runtime_error("read_checkpoint: bad magic in " + path);
  }
  if (header_u32[1] != kCheckpointVersion) {
    throw std::runtime_error("read_checkpoint: unsupported version in " + path);
  }
  SignedEnsemble ens;
  std::uint64_t seed = 0;
  in.read(reinterpret_cast<char*>(&seed), sizeof(seed));
  double header_f64[4];
  in.read(reinterpret_cast<char*>(header_f64), sizeof(header_f64));
  ens.seed = seed;
  ens.params = PotentialParams::from_log_slope(header_f64[0], header_f64[1]);
  ens.weight_per_particle = header_f64[2];
  ens.time = header_f64[3];
  std::uint64_t counts[2];
  in.read(reinterpret_cast<char*>(counts), sizeof(counts));
  ens.plus.resize(counts[0]);
  ens.minus.resize(counts[1]);
  read_particles(in, ens.plus);
  read_particles(in, ens.minus);
  if (!in) throw std::runtime_error("read_checkpoint: truncated file " + path);
  return ens;
}

}  // namespace logvlasov
