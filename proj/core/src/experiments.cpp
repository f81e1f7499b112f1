#include "logvlasov/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>

#include "logvlasov/csv.hpp"
#include "logvlasov/cycles.hpp"
#include "logvlasov/engine.hpp"
#include "logvlasov/lemma_lab.hpp"

#include "json.hpp"

namespace logvlasov {

namespace {

std::string output_name(const std::string& run_id, const std::string& stem,
                        const std::string& ext = "csv") {
  return run_id + "_" + stem + "." + ext;
}

std::string d(double v) { return csv_double(v); }

struct Context {
  RunConfig cfg;
  PotentialParams params;
  std::string out_dir;
  std::string run_id;
  RunManifest manifest;

  std::string path(const std::string& name) const { return out_dir + "/" + name; }
  std::string add_output(const std::string& stem, const std::string& ext = "csv") {
    const std::string name = output_name(run_id, stem, ext);
    manifest.outputs.push_back(name);
    return path(name);
  }
  void verdict(const std::string& name, bool pass, const std::string& detail) {
    manifest.verdicts.push_back({name, pass, detail});
  }
};

// ---------------------------------------------------------------------------
// flow: closed-form self-consistency checks of the characteristic flow.
// ---------------------------------------------------------------------------
void run_flow(Context& ctx) {
  const PotentialParams& params = ctx.params;
  const StationaryState stationary(params);
  CsvWriter csv(ctx.add_output("flow_check"), {"check", "value", "bound", "pass"});

  double energy_drift = 0.0;
  double group_law = 0.0;
  for (std::int64_t i = 0; i < 10000; ++i) {
    RandomStream stream(ctx.cfg.seed, std::uint64_t(i), 101);
    const PhaseState s = stationary.sample(stream);
    const double t_b = exit_time(params, s, ExitDirection::backward).duration;
    const double t_f = exit_time(params, s, ExitDirection::forward).duration;
    const double window = t_b + t_f;
    if (window == 0.0) continue;
    const double dt = (-t_b + stream.uniform() * window) * 0.999;
    const PhaseState moved = flow(params, s, dt);
    energy_drift =
        std::max(energy_drift, std::fabs(total_energy(params, moved) - total_energy(params, s)));

    if (i < 1000) {
      const double frac = stream.uniform();
      const PhaseState two_step = flow(params, flow(params, s, dt * frac), dt * (1.0 - frac));
      double err = std::fabs(two_step.x3 - moved.x3);
      err = std::max(err, std::fabs(torus_distance(two_step.x_par[0], moved.x_par[0])));
      err = std::max(err, std::fabs(torus_distance(two_step.x_par[1], moved.x_par[1])));
      for (int c = 0; c < 3; ++c) {
        err = std::max(err, std::fabs(two_step.v[std::size_t(c)] - moved.v[std::size_t(c)]));
      }
      group_law = std::max(group_law, err);
    }
  }
  csv.row({"energy_drift_max", d(energy_drift), d(1e-10), energy_drift < 1e-10 ? "1" : "0"});
  csv.row({"group_law_max", d(group_law), d(1e-9), group_law < 1e-9 ? "1" : "0"});
  ctx.verdict("flow_energy_conservation", energy_drift < 1e-10, "max drift " + d(energy_drift));
  ctx.verdict("flow_group_law", group_law < 1e-9, "max error " + d(group_law));

  double speed_err = 0.0;
  double symmetry_err = 0.0;
  for (std::int64_t i = 0; i < 10000; ++i) {
    RandomStream stream(ctx.cfg.seed, std::uint64_t(i), 202);
    PhaseState s;
    s.x_par = {stream.uniform(), stream.uniform()};
    s.x3 = 0.0;
    const auto tan = stream.gaussian_pair();
    const double w = stream.rayleigh();
    s.v = {tan[0], tan[1], w};
    const AdvanceResult res = advance(params, s, 1e300);
    if (!res.hit) continue;
    const double speed_in = s.speed();
    const double speed_out = res.state.speed();
    speed_err = std::max(speed_err, std::fabs(speed_out - speed_in));
    symmetry_err = std::max(symmetry_err, std::fabs(res.state.v[2] + w));
    symmetry_err =
        std::max(symmetry_err, std::fabs(res.elapsed - flight_time(params, w)) / res.elapsed);
  }
  csv.row({"boundary_speed_error_max", d(speed_err), d(1e-10), speed_err < 1e-10 ? "1" : "0"});
  csv.row({"reflection_symmetry_max", d(symmetry_err), d(1e-10), symmetry_err < 1e-10 ? "1" : "0"});
  ctx.verdict("flow_speed_preservation", speed_err < 1e-10, "max error " + d(speed_err));
  ctx.verdict("flow_reflection_symmetry", symmetry_err < 1e-10, "max error " + d(symmetry_err));

  const double upper_bound = std::sqrt(2.0 * M_PI * params.ln_a) + 1e-9;
  double upper = 0.0, small_v = std::numeric_limits<double>::infinity();
  for (int i = 1; i <= 2000; ++i) {
    const double w = 8.0 * double(i) / 2000.0;
    upper = std::max(upper, flight_time(params, w) / params.pow_a(0.5 * w * w));
    if (w <= 0.1) small_v = std::min(small_v, flight_time(params, w) / w);
  }
  const double small_bound = 2.0 * params.ln_a * (1.0 - 1e-12);
  csv.row({"exit_ratio_sup", d(upper), d(upper_bound), upper <= upper_bound ? "1" : "0"});
  csv.row({"small_velocity_ratio_min", d(small_v), d(small_bound),
           small_v >= small_bound ? "1" : "0"});
  ctx.verdict("flow_exit_ratio", upper <= upper_bound, "sup " + d(upper));
  ctx.verdict("flow_small_velocity_bound", small_v >= small_bound, "min ratio " + d(small_v));
}

// ---------------------------------------------------------------------------
// lemmas: deterministic verification reports.
// ---------------------------------------------------------------------------
void run_lemmas(Context& ctx) {
  const PotentialParams& params = ctx.params;

  std::vector<double> grid;
  for (int i = 0; i < 25; ++i) {
    grid.push_back(-0.1 * std::pow(50.0, double(i) / 24.0));  // |v3| in [0.1, 5]
  }
  const JacobianReport jac = verify_jacobian_sandwich(params, grid);
  {
    CsvWriter csv(ctx.add_output("jacobian"),
                  {"v3", "t_b", "dtb_dv3_fd", "dtb_dv3_closed", "dtb_dv12_max", "det_fd",
                   "det_over_tb2", "sandwich_upper", "richardson_order"});
    for (const auto& r : jac.rows) {
      csv.row({d(r.v3), d(r.t_b), d(r.dtb_dv3_fd), d(r.dtb_dv3_closed), d(r.dtb_dv12_max),
               d(r.det_fd), d(r.det_over_tb2), d(r.sandwich_upper), d(r.richardson_order)});
    }
  }
  ctx.verdict("jacobian_horizontal_derivatives", jac.max_dtb_dv12 < 1e-9,
              "max " + d(jac.max_dtb_dv12));
  ctx.verdict("jacobian_closed_form", jac.max_closed_form_error < 1e-7,
              "max error " + d(jac.max_closed_form_error));
  ctx.verdict("jacobian_richardson", jac.min_richardson_order >= 1.9,
              "min order " + d(jac.min_richardson_order));
  ctx.verdict("jacobian_sandwich", jac.lower_constant > 0.0,
              "det/tb^2 in [" + d(jac.lower_constant) + ", upper " + d(jac.upper_constant) + "]");

  // Winding sums over random footpoint pairs.
  {
    CsvWriter csv(ctx.add_output("winding"),
                  {"t_b", "pair", "sum", "scaled", "near_diagonal", "tail_envelope"});
    double c_large = 0.0, c_small_ratio = 0.0;
    std::array<double, 2> c_by_t{0.0, 0.0};  // constants at t=1,2 vs t=5,10,20
    for (const double t : {1.0, 2.0, 5.0, 10.0, 20.0}) {
      double c_here = 0.0;
      for (int p = 0; p < 100; ++p) {
        RandomStream stream(ctx.cfg.seed, std::uint64_t(p), 303);
        const Vec2 x = {stream.uniform(), stream.uniform()};
        const Vec2 xp = {stream.uniform(), stream.uniform()};
        const double s = maxwellian_winding_sum(params, x, xp, t);
        const double scaled = s * std::pow(t, double(params.big_a - 4));
        c_here = std::max(c_here, scaled);
        if (p < 4) csv.row({d(t), std::to_string(p), d(s), d(scaled), "", ""});
      }
      c_large = std::max(c_large, c_here);
      if (t <= 2.0) {
        c_by_t[0] = std::max(c_by_t[0], c_here);
      } else {
        c_by_t[1] = std::max(c_by_t[1], c_here);
      }
    }
    for (const double t : {0.05, 0.1, 0.2}) {
      for (int p = 0; p < 100; ++p) {
        RandomStream stream(ctx.cfg.seed, std::uint64_t(p), 404);
        const Vec2 x = {stream.uniform(), stream.uniform()};
        const Vec2 xp = {stream.uniform(), stream.uniform()};
        const double s = maxwellian_winding_sum(params, x, xp, t);
        const double near = maxwellian_winding_near_diagonal(params, x, xp, t);
        const double envelope = std::exp(-1.0 / (2.0 * t * t));
        const double tail = s - near;
        c_small_ratio = std::max(c_small_ratio, tail / envelope);
        if (p < 4) csv.row({d(t), std::to_string(p), d(s), "", d(near), d(envelope)});
      }
    }
    const double dominance_t = 0.05;
    const Vec2 same = {0.25, 0.75};
    const double s_same = maxwellian_winding_sum(params, same, same, dominance_t);
    const double near_zero = maxwellian_winding_near_diagonal(params, same, same, dominance_t);
    // share of the (0,0) term alone
    const double u = flight_time_inverse(params, dominance_t);
    const double term00 = std::exp(-0.5 * u * u) / (2.0 * M_PI);

    ctx.verdict("winding_large_t_bounded", c_by_t[1] <= c_by_t[0] * 2.0 + 1e-12,
                "scaled sum constants " + d(c_by_t[0]) + " (t<=2), " + d(c_by_t[1]) + " (t>2)");
    ctx.verdict("winding_small_t_tail", c_small_ratio <= 1.0,
                "max tail/envelope " + d(c_small_ratio));
    ctx.verdict("winding_dominance", term00 >= (1.0 - 1e-6) * s_same,
                "(0,0) share " + d(term00 / s_same) + ", near9 " + d(near_zero / s_same));
  }

  // Boundary-flux/volume identity.
  {
    CsvWriter csv(ctx.add_output("cov_identity"), {"g", "lhs", "lhs_se", "rhs", "pass"});
    const std::int64_t n = std::min<std::int64_t>(ctx.cfg.n_particles, 1000000);
    const CovIdentityReport stat = verify_cov_identity(params, CovTestFunction::stationary_density,
                                                       n, ctx.cfg.seed, ctx.cfg.threads);
    const bool stat_ok = std::fabs(stat.lhs - stat.rhs) <= 3.0 * stat.lhs_se;
    csv.row({"stationary_density", d(stat.lhs), d(stat.lhs_se), d(stat.rhs), stat_ok ? "1" : "0"});
    const CovIdentityReport ind = verify_cov_identity(params, CovTestFunction::truncated_indicator,
                                                      n, ctx.cfg.seed, ctx.cfg.threads);
    const bool ind_ok = std::fabs(ind.lhs - ind.rhs) <= 3.0 * ind.lhs_se;
    csv.row({"truncated_indicator", d(ind.lhs), d(ind.lhs_se), d(ind.rhs), ind_ok ? "1" : "0"});
    ctx.verdict("cov_identity_stationary", stat_ok,
                "lhs " + d(stat.lhs) + " vs rhs " + d(stat.rhs) + " (se " + d(stat.lhs_se) + ")");
    ctx.verdict("cov_identity_indicator", ind_ok,
                "lhs " + d(ind.lhs) + " vs rhs " + d(ind.rhs) + " (se " + d(ind.lhs_se) + ")");
  }

  // Exit-time sandwich report.
  {
    std::vector<double> tb_grid;
    for (int i = 0; i < 200; ++i) {
      tb_grid.push_back(1e-3 * std::pow(8000.0, double(i) / 199.0));  // [1e-3, 8]
    }
    const TbBoundsReport rep = verify_tb_bounds(params, tb_grid);
    CsvWriter csv(ctx.add_output("tb_bounds"), {"quantity", "value", "bound", "pass"});
    const bool upper_ok = rep.upper_ratio_max <= rep.upper_ratio_bound + 1e-9;
    const bool lower_ok = rep.lower_ratio_min > 0.5;
    const bool small_ok = rep.small_v_ratio_min >= 2.0 * params.ln_a * (1.0 - 1e-12);
    const bool limit_ok =
        std::fabs(rep.zero_limit_ratio - 2.0 * params.ln_a) <= 1e-4 * params.ln_a;
    csv.row({"upper_ratio_max", d(rep.upper_ratio_max), d(rep.upper_ratio_bound),
             upper_ok ? "1" : "0"});
    csv.row({"lower_ratio_min", d(rep.lower_ratio_min), d(0.5), lower_ok ? "1" : "0"});
    csv.row({"small_velocity_ratio_min", d(rep.small_v_ratio_min), d(2.0 * params.ln_a),
             small_ok ? "1" : "0"});
    csv.row({"zero_limit_ratio", d(rep.zero_limit_ratio), d(2.0 * params.ln_a),
             limit_ok ? "1" : "0"});
    ctx.verdict("tb_sandwich_upper", upper_ok, "sup " + d(rep.upper_ratio_max) + " vs " +
                                                   d(rep.upper_ratio_bound));
    ctx.verdict("tb_sandwich_lower", lower_ok, "min ratio " + d(rep.lower_ratio_min));
    ctx.verdict("tb_small_velocity", small_ok && limit_ok,
                "min t_b/|v3| " + d(rep.small_v_ratio_min) + ", zero limit " +
                    d(rep.zero_limit_ratio));

    nlohmann::json summary;
    summary["jacobian"] = {{"lower_constant", jac.lower_constant},
                           {"upper_constant", jac.upper_constant},
                           {"max_dtb_dv12", jac.max_dtb_dv12},
                           {"max_closed_form_error", jac.max_closed_form_error},
                           {"min_richardson_order", jac.min_richardson_order}};
    summary["tb_bounds"] = {{"upper_ratio_max", rep.upper_ratio_max},
                            {"upper_ratio_bound", rep.upper_ratio_bound},
                            {"lower_ratio_min", rep.lower_ratio_min},
                            {"small_v_ratio_min", rep.small_v_ratio_min}};
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : ctx.manifest.verdicts) {
      verdicts.push_back({{"name", v.name}, {"pass", v.pass}});
    }
    summary["verdicts"] = verdicts;
    std::ofstream out(ctx.add_output("lemma_summary", "json"));
    out << summary.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// decay: the signed-ensemble run with norm series, fit and triple norms.
// ---------------------------------------------------------------------------
void run_decay(Context& ctx) {
  const PotentialParams& params = ctx.params;
  const HistogramSpec hist = ctx.cfg.histogram.build(params);
  const double m_t0 = doeblin_norm_quadrature(params, ctx.cfg.t0);
  const DoeblinSpec doeblin{ctx.cfg.t0, m_t0};

  StatsConfig scfg;
  scfg.t0 = ctx.cfg.t0;
  scfg.delta = ctx.cfg.delta;
  scfg.theta = ctx.cfg.theta;

  SignedEnsemble ens =
      init_fluctuation(params, ctx.cfg.n_particles, ctx.cfg.seed, {ctx.cfg.f0_shift});

  std::vector<CheckpointStats> stats;
  stats.push_back(compute_checkpoint_stats(ens, hist, scfg, ctx.cfg.threads));
  for (int k = 1; k <= ctx.cfg.n_checkpoints; ++k) {
    evolve(ens, ctx.cfg.t0 * k, ctx.cfg.threads);
    stats.push_back(compute_checkpoint_stats(ens, hist, scfg, ctx.cfg.threads));
  }

  {
    CsvWriter csv(ctx.add_output("series"), {"t", "l1", "l1_se", "moment_theta", "moment_se"});
    for (const auto& s : stats) {
      csv.row({d(s.time), d(s.l1.value), d(s.l1.std_error), d(s.moment), d(s.moment_se)});
    }
  }
  {
    CsvWriter csv(ctx.add_output("details"),
                  {"t", "l1_refined", "phi1", "phi1_se", "phi2", "phi2_se", "phi3", "phi3_se",
                   "phi4", "phi4_se", "triple2", "triple4", "defect_plus", "defect_minus",
                   "mean_phi_plus", "mean_speed2_plus"});
    for (const auto& s : stats) {
      const double t2 = triple_norm(s.l1.value, s.phi_norm[0], s.phi_norm[1], ctx.cfg.delta,
                                    params.big_a, doeblin, 2);
      const double t4 = triple_norm(s.l1.value, s.phi_norm[2], s.phi_norm[3], ctx.cfg.delta,
                                    params.big_a, doeblin, 4);
      csv.row({d(s.time), d(s.l1.refined_value), d(s.phi_norm[0]), d(s.phi_norm_se[0]),
               d(s.phi_norm[1]), d(s.phi_norm_se[1]), d(s.phi_norm[2]), d(s.phi_norm_se[2]),
               d(s.phi_norm[3]), d(s.phi_norm_se[3]), d(t2), d(t4), d(s.defect_plus),
               d(s.defect_minus), d(s.mean_phi_plus), d(s.mean_speed2_plus)});
    }
  }

  // Norm monotonicity across checkpoints, 3 s.e. slack.
  bool monotone = true;
  std::string worst;
  for (std::size_t k = 1; k < stats.size(); ++k) {
    const double slack = 3.0 * std::sqrt(stats[k].l1.std_error * stats[k].l1.std_error +
                                         stats[k - 1].l1.std_error * stats[k - 1].l1.std_error);
    if (stats[k].l1.value > stats[k - 1].l1.value + slack) {
      monotone = false;
      worst = "t=" + d(stats[k].time);
    }
  }
  ctx.verdict("l1_monotone", monotone,
              monotone ? "non-increasing within 3 s.e." : "increase at " + worst);

  // Triple-norm monotonicity for N = 1..6.
  for (const int i : {2, 4}) {
    bool ok = true;
    std::string detail;
    const std::size_t n_max = std::min<std::size_t>(stats.size() - 1, 6);
    for (std::size_t k = 2; k <= n_max; ++k) {
      const auto value = [&](std::size_t idx) {
        return triple_norm(stats[idx].l1.value, stats[idx].phi_norm[std::size_t(i - 2)],
                           stats[idx].phi_norm[std::size_t(i - 1)], ctx.cfg.delta, params.big_a,
                           doeblin, i);
      };
      const auto se = [&](std::size_t idx) {
        const WeightSpec lower{i - 1, ctx.cfg.delta, params.big_a};
        const double denom = phi_weight(lower, 0.75 * doeblin.t0);
        const double c1 = 4.0 * doeblin.m_norm / denom;
        const double c2 = 4.0 * std::exp(1.0) * doeblin.m_norm / (doeblin.t0 * denom);
        const double s0 = stats[idx].l1.std_error;
        const double s1 = c1 * stats[idx].phi_norm_se[std::size_t(i - 2)];
        const double s2 = c2 * stats[idx].phi_norm_se[std::size_t(i - 1)];
        return std::sqrt(s0 * s0 + s1 * s1 + s2 * s2);
      };
      const double slack = 3.0 * std::sqrt(se(k) * se(k) + se(k - 1) * se(k - 1));
      if (value(k) > value(k - 1) + slack) {
        ok = false;
        detail = "increase at N=" + std::to_string(k);
      }
    }
    ctx.verdict("triple_norm_monotone_" + std::to_string(i), ok,
                ok ? "non-increasing within 3 s.e." : detail);
  }

  // Decay-exponent fit over the positive-time checkpoints.
  std::vector<std::pair<double, double>> series;
  for (std::size_t k = 1; k < stats.size(); ++k) {
    series.emplace_back(stats[k].time, stats[k].l1.value);
  }
  try {
    const DecayFit fit = fit_decay(series, params.big_a, ctx.cfg.delta);
    CsvWriter csv(ctx.add_output("fit"),
                  {"exponent_raw", "exponent_corrected", "rms_residual_raw",
                   "rms_residual_corrected", "n_used", "n_dropped", "m_t0"});
    csv.row({d(fit.exponent_raw), d(fit.exponent_corrected), d(fit.rms_residual_raw),
             d(fit.rms_residual_corrected), std::to_string(fit.n_used),
             std::to_string(fit.n_dropped), d(m_t0)});
    const bool in_band = fit.exponent_corrected >= -3.0 && fit.exponent_corrected <= -1.0;
    ctx.verdict("decay_exponent_band", in_band,
                "log-corrected exponent " + d(fit.exponent_corrected));
  } catch (const std::exception& e) {
    ctx.verdict("decay_exponent_band", false, e.what());
  }

  // Exponential-moment decay across a decade, when the run spans one.
  if (stats.size() >= 2) {
    const CheckpointStats& first = stats[1];
    const CheckpointStats& last = stats.back();
    if (last.time >= 10.0 * first.time - 1e-9) {
      const double factor = first.moment / std::max(last.moment, 1e-300);
      ctx.verdict("moment_decay_factor", factor >= 5.0,
                  "moment(" + d(first.time) + ")/moment(" + d(last.time) + ") = " + d(factor));
    }
  }

  write_checkpoint(ctx.add_output("final", "ckpt"), ens);
}

// ---------------------------------------------------------------------------
// doeblin: the one-period lower bound and the minorant norm.
// ---------------------------------------------------------------------------
void run_doeblin(Context& ctx) {
  const PotentialParams& params = ctx.params;
  const HistogramSpec hist = ctx.cfg.histogram.build(params);

  StatsConfig scfg;
  scfg.t0 = ctx.cfg.t0;
  scfg.delta = ctx.cfg.delta;
  scfg.theta = ctx.cfg.theta;
  scfg.keep_cells = true;
  scfg.with_refinement = false;

  SignedEnsemble ens =
      init_fluctuation(params, ctx.cfg.n_particles, ctx.cfg.seed, {ctx.cfg.f0_shift});
  const CheckpointStats prev = compute_checkpoint_stats(ens, hist, scfg, ctx.cfg.threads);
  evolve(ens, ctx.cfg.t0, ctx.cfg.threads);
  const CheckpointStats next = compute_checkpoint_stats(ens, hist, scfg, ctx.cfg.threads);

  const double m_quad = doeblin_norm_quadrature(params, ctx.cfg.t0);
  const DoeblinSpec doeblin{ctx.cfg.t0, m_quad};

  const DoeblinReport plus =
      doeblin_check(hist, next.cell_mass_plus, next.cell_count_plus, ens.weight_per_particle, 1.0,
                    prev.defect_plus, doeblin, params);
  const DoeblinReport minus =
      doeblin_check(hist, next.cell_mass_minus, next.cell_count_minus, ens.weight_per_particle,
                    1.0, prev.defect_minus, doeblin, params);
  {
    CsvWriter csv(ctx.add_output("doeblin_check"),
                  {"population", "cells_checked", "violations", "violating_fraction",
                   "defect_prev"});
    csv.row({"plus", std::to_string(plus.cells_checked), std::to_string(plus.violations),
             d(plus.violating_fraction), d(prev.defect_plus)});
    csv.row({"minus", std::to_string(minus.cells_checked), std::to_string(minus.violations),
             d(minus.violating_fraction), d(prev.defect_minus)});
  }
  const double worst = std::max(plus.violating_fraction, minus.violating_fraction);
  ctx.verdict("doeblin_violation_fraction", worst <= 0.01,
              "max violating fraction " + d(worst) + " over " +
                  std::to_string(plus.cells_checked) + "+" + std::to_string(minus.cells_checked) +
                  " cells");

  {
    CsvWriter csv(ctx.add_output("minorant"),
                  {"t0", "quadrature", "mc", "mc_se", "envelope_constant", "below_one"});
    bool all_below = true;
    for (const double t0 : {24.0, 32.0, 48.0}) {
      const double quad = doeblin_norm_quadrature(params, t0);
      const MonteCarloEstimate mc = doeblin_norm_mc(
          params, t0, std::min<std::int64_t>(ctx.cfg.n_particles, 1000000), ctx.cfg.seed,
          ctx.cfg.threads);
      const double envelope = quad * std::pow(t0, double(3 + params.big_a));
      const bool below = quad < 1.0 && mc.value < 1.0;
      all_below = all_below && below;
      csv.row({d(t0), d(quad), d(mc.value), d(mc.std_error), d(envelope), below ? "1" : "0"});
    }
    ctx.verdict("minorant_norm_below_one", all_below, "m_T0 < 1 for T0 in {24,32,48}");
  }
}

// ---------------------------------------------------------------------------
// moments: the exponential-moment values across a decade in time.
// ---------------------------------------------------------------------------
void run_moments(Context& ctx) {
  const PotentialParams& params = ctx.params;
  const HistogramSpec hist = ctx.cfg.histogram.build(params);

  SignedEnsemble ens =
      init_fluctuation(params, ctx.cfg.n_particles, ctx.cfg.seed, {ctx.cfg.f0_shift});
  CsvWriter csv(ctx.add_output("moments"), {"t", "moment_theta", "moment_se"});

  evolve(ens, ctx.cfg.t0, ctx.cfg.threads);
  const MomentEstimate early =
      estimate_exponential_moment(ens, ctx.cfg.theta, hist, 32, ctx.cfg.threads);
  csv.row({d(ens.time), d(early.value), d(early.std_error)});

  evolve(ens, 10.0 * ctx.cfg.t0, ctx.cfg.threads);
  const MomentEstimate late =
      estimate_exponential_moment(ens, ctx.cfg.theta, hist, 32, ctx.cfg.threads);
  csv.row({d(ens.time), d(late.value), d(late.std_error)});

  const double factor = early.value / std::max(late.value, 1e-300);
  ctx.verdict("moment_decay_factor", factor >= 5.0,
              "moment(" + d(ctx.cfg.t0) + ")/moment(" + d(10.0 * ctx.cfg.t0) + ") = " + d(factor));
}

// ---------------------------------------------------------------------------
// survival: k-cycle survival against the e^{-t} envelope.
// ---------------------------------------------------------------------------
void run_survival(Context& ctx) {
  const PotentialParams& params = ctx.params;
  const SurvivalConfig cfg = make_survival_config(params, ctx.cfg.delta);

  CsvWriter csv(ctx.add_output("survival"),
                {"t", "k", "estimate", "se", "envelope", "pass"});
  bool all_ok = true;
  std::string detail;
  for (const double t : {5.0, 10.0, 20.0}) {
    const std::int64_t k = cfg.k_of_t(t);
    const SurvivalEstimate est =
        survival_probability(params, t, k, ctx.cfg.n_particles, ctx.cfg.seed, ctx.cfg.threads);
    const double envelope = std::exp(-t);
    const bool ok = est.probability <= envelope + 3.0 * est.std_error;
    all_ok = all_ok && ok;
    csv.row({d(t), std::to_string(k), d(est.probability), d(est.std_error), d(envelope),
             ok ? "1" : "0"});
    detail += " t=" + d(t) + ": " + d(est.probability) + " vs " + d(envelope) + ";";
  }
  ctx.verdict("survival_envelope", all_ok,
              "delta=" + d(cfg.delta) + " C_Omega=" + d(cfg.c_omega) +
                  " amp=" + std::to_string(cfg.amp) + ";" + detail);
}

}  // namespace

RunManifest run_experiment(const RunConfig& config, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);

  Context ctx;
  ctx.cfg = config;
  ctx.params = config.potential();
  ctx.out_dir = out_dir;
  ctx.run_id = config_run_id(config);
  ctx.manifest.run_id = ctx.run_id;
  ctx.manifest.config = config;

  const auto start = std::chrono::steady_clock::now();
  switch (config.experiment) {
    case Experiment::flow: run_flow(ctx); break;
    case Experiment::lemmas: run_lemmas(ctx); break;
    case Experiment::decay: run_decay(ctx); break;
    case Experiment::doeblin: run_doeblin(ctx); break;
    case Experiment::moments: run_moments(ctx); break;
    case Experiment::survival: run_survival(ctx); break;
  }
  const auto end = std::chrono::steady_clock::now();
  ctx.manifest.wall_time_seconds = std::chrono::duration<double>(end - start).count();
  return ctx.manifest;
}

std::string run_and_write(const RunConfig& config, const std::string& out_dir,
                          RunManifest* manifest_out) {
  RunManifest manifest = run_experiment(config, out_dir);
  const std::string path = out_dir + "/" + manifest.run_id + "_manifest.json";
  write_manifest(path, manifest);
  if (manifest_out) *manifest_out = manifest;
  return path;
}

}  // namespace logvlasov
