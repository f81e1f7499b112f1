#include "logvlasov/cycles.hpp"

#include <cmath>
#include <stdexcept>

#include "logvlasov/parallel.hpp"

namespace logvlasov {

AdvanceResult advance(const PotentialParams& params, const PhaseState& state, double horizon) {
  if (horizon < 0.0) throw std::domain_error("advance: negative horizon");

  AdvanceResult res;
  const ExitEvent exit = exit_time(params, state, ExitDirection::forward);
  if (!exit.degenerate && exit.duration > horizon) {
    res.state = flow(params, state, horizon);
    res.elapsed = horizon;
    res.hit = false;
    return res;
  }
  res.state.x_par = exit.footpoint;
  res.state.x3 = 0.0;
  res.state.v = exit.boundary_velocity;
  res.elapsed = exit.duration;
  res.hit = true;
  return res;
}

CycleRecord run_cycle_chain(const PotentialParams& params, const Vec2& start_footpoint,
                            const Vec3& outgoing, double t_stop, RandomStream& stream) {
  if (outgoing[2] <= 0.0) {
    throw std::domain_error("run_cycle_chain: start velocity must point into the domain");
  }

  CycleRecord rec;
  Vec2 foot = start_footpoint;
  Vec3 v = outgoing;
  CompensatedSum elapsed;

  for (;;) {
    const double t_flight = flight_time(params, v[2]);
    CompensatedSum next = elapsed;
    next.add(t_flight);
    if (next.sum > t_stop) break;

    rec.times.push_back(t_stop - elapsed.sum);
    rec.footpoints.push_back(foot);
    rec.outgoing_velocities.push_back(v);
    rec.arrival_speeds.push_back(std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]));

    elapsed = next;
    foot = wrap_unit(Vec2{foot[0] + v[0] * t_flight, foot[1] + v[1] * t_flight});
    v = BoundaryLaw::sample_outgoing(stream);
  }
  return rec;
}

std::int64_t SurvivalConfig::k_of_t(double t) const {
  if (!(c_omega > 0.0) || !(delta > 0.0)) {
    throw std::domain_error("SurvivalConfig: delta and C_Omega must be positive");
  }
  return std::int64_t(amp) * (std::int64_t(std::ceil(t / (c_omega * delta))) + 1);
}

double measure_c_omega(const PotentialParams& params, int grid_points, double w_max) {
  double inf = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= grid_points; ++i) {
    const double w = w_max * double(i) / grid_points;
    inf = std::min(inf, flight_time(params, w) / w);
  }
  return inf;
}

int choose_amp(double delta, double c_omega) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("choose_amp: need 0 < delta < 1");
  for (int amp = 2; amp <= 1 << 20; ++amp) {
    // (delta^{2a} e a)^{1/(C_Omega delta)} <= e^{-2} in log form
    const double lhs = (2.0 * amp * std::log(delta) + 1.0 + std::log(double(amp))) /
                       (c_omega * delta);
    if (lhs <= -2.0) return amp;
  }
  throw std::runtime_error("choose_amp: no admissible integer found");
}

SurvivalConfig make_survival_config(const PotentialParams& params, double delta) {
  SurvivalConfig cfg;
  cfg.delta = delta;
  cfg.c_omega = measure_c_omega(params);
  cfg.amp = choose_amp(delta, cfg.c_omega);
  return cfg;
}

SurvivalEstimate survival_probability(const PotentialParams& params, double t, std::int64_t k,
                                      std::int64_t n_samples, std::uint64_t seed,
                                      int n_threads) {
  if (n_samples <= 0) throw std::domain_error("survival_probability: n_samples must be positive");
  if (k < 1 || t <= 0.0) throw std::domain_error("survival_probability: need k >= 1 and t > 0");

  const std::int64_t n_chunks = chunk_count(n_samples);
  std::vector<std::int64_t> survived_per_chunk(n_chunks, 0);
  parallel_chunks(n_samples, n_threads, [&](std::int64_t chunk, std::int64_t lo, std::int64_t hi) {
    std::int64_t survived = 0;
    for (std::int64_t i = lo; i < hi; ++i) {
      RandomStream stream(seed, std::uint64_t(i), 0);
      CompensatedSum total;
      bool alive = true;
      for (std::int64_t j = 0; j < k; ++j) {
        total.add(flight_time(params, stream.rayleigh()));
        if (total.sum >= t) {
          alive = false;
          break;
        }
      }
      if (alive) ++survived;
    }
    survived_per_chunk[std::size_t(chunk)] = survived;
  });

  SurvivalEstimate est;
  for (const auto s : survived_per_chunk) est.survived += s;
  est.samples = n_samples;
  est.probability = double(est.survived) / double(n_samples);
  est.std_error = std::sqrt(est.probability * (1.0 - est.probability) / double(n_samples));
  return est;
}

}  // namespace logvlasov
