#include "logvlasov/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <tuple>

#include "logvlasov/boundary.hpp"
#include "logvlasov/flow.hpp"
#include "logvlasov/parallel.hpp"
#include "logvlasov/rng.hpp"

namespace logvlasov {

double phi_weight(const WeightSpec& spec, double tau) {
  if (tau < 0.0) throw std::domain_error("phi_weight: tau must be non-negative");
  if (!(spec.delta > 0.0 && spec.delta < 1.0)) {
    throw std::domain_error("phi_weight: delta must lie in (0,1)");
  }
  const double e = std::exp(1.0);
  switch (spec.index) {
    case 1:
      return (e + tau) * std::log(e + std::log(e + tau)) / (e * std::log(e + 1.0));
    case 2:
      return (e + tau) * (e + tau) * std::log(e + std::log(e + tau)) /
             (e * e * std::log(e + 1.0));
    case 3:
      return std::exp(double(5 - spec.big_a)) * std::pow(tau + e, double(spec.big_a - 5)) *
             std::pow(std::log(tau + e), -(1.0 + spec.delta));
    case 4:
      return std::exp(double(4 - spec.big_a)) * std::pow(tau + e, double(spec.big_a - 4)) *
             std::pow(std::log(tau + e), -(1.0 + spec.delta));
    default:
      throw std::domain_error("phi_weight: index must be 1..4");
  }
}

double doeblin_minorant(const PotentialParams& params, const PhaseState& state, double t0) {
  if (!(t0 > 20.0)) throw std::domain_error("doeblin_minorant: requires T0 > 20");
  const ExitEvent back = exit_time(params, state, ExitDirection::backward);
  if (back.duration > 0.25 * t0) return 0.0;
  const double vb2 = state.speed2() + 2.0 * params.phi(state.x3);
  return std::pow(t0, double(-4 - params.big_a)) * std::exp(-0.5 * vb2) / (2.0 * M_PI);
}

namespace {

// Backward exit time of an interior (x3, v3) pair, vertical motion only.
double tb_vertical(const PotentialParams& params, double x3, double v3) {
  const GaussIntegral fa(params);
  const double energy = 0.5 * v3 * v3 + params.phi(x3);
  if (energy == 0.0) return 0.0;
  return params.ln_a * params.pow_a(energy) * (fa(std::sqrt(2.0 * energy)) - fa(v3));
}

// Threshold v3*(x3) with t_b = tau; t_b is strictly decreasing in v3.
double v3_threshold(const PotentialParams& params, double x3, double tau) {
  double lo = -40.0, hi = 40.0;
  if (tb_vertical(params, x3, lo) <= tau) return lo;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (tb_vertical(params, x3, mid) > tau) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-13 * (1.0 + std::fabs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

// integrand of ||m|| T0^{4+A} over x3: e^{-Phi(x3)} * int_{v3 >= v3*} e^{-v3^2/2}
double doeblin_x3_integrand(const PotentialParams& params, double x3, double tau) {
  const double v3s = v3_threshold(params, x3, tau);
  return std::exp(-params.phi(x3)) * std::sqrt(0.5 * M_PI) * std::erfc(v3s / std::sqrt(2.0));
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double doeblin_norm_quadrature(const PotentialParams& params, double t0) {
  if (!(t0 > 20.0)) throw std::domain_error("doeblin_norm_quadrature: requires T0 > 20");
  const double tau = 0.25 * t0;
  // Height tail (1+H)^{1-A'} below 1e-12 of the total.
  const double a_prime = 1.0 / params.ln_a;
  const double cap = std::pow(1e-12, -1.0 / (a_prime - 1.0)) - 1.0;
  const auto f = [&](double x3) { return doeblin_x3_integrand(params, x3, tau); };
  const double integral = integrate(f, 0.0, cap, 1e-12);
  return std::pow(t0, double(-4 - params.big_a)) * integral;
}

MonteCarloEstimate doeblin_norm_mc(const PotentialParams& params, double t0,
                                   std::int64_t n_samples, std::uint64_t seed, int n_threads) {
  if (!(t0 > 20.0)) throw std::domain_error("doeblin_norm_mc: requires T0 > 20");
  if (n_samples <= 0) throw std::domain_error("doeblin_norm_mc: n_samples must be positive");

  const StationaryState stationary(params);
  const double tau = 0.25 * t0;
  const std::int64_t n_chunks = chunk_count(n_samples);
  std::vector<std::int64_t> hits(n_chunks, 0);
  parallel_chunks(n_samples, n_threads, [&](std::int64_t chunk, std::int64_t lo, std::int64_t hi) {
    std::int64_t h = 0;
    for (std::int64_t i = lo; i < hi; ++i) {
      RandomStream stream(seed, std::uint64_t(i), 0);
      const PhaseState s = stationary.sample(stream);
      if (exit_time(params, s, ExitDirection::backward).duration <= tau) ++h;
    }
    hits[std::size_t(chunk)] = h;
  });

  std::int64_t total = 0;
  for (const auto h : hits) total += h;
  const double p = double(total) / double(n_samples);
  const double p_se = std::sqrt(p * (1.0 - p) / double(n_samples));
  // ||m|| = T0^{-4-A} (m/c_m) P_{stationary}(t_b <= T0/4)
  const double factor = std::pow(t0, double(-4 - params.big_a)) * params.mass / params.c_m;
  return {factor * p, factor * p_se};
}

double triple_norm(double l1_norm, double phi_im1_norm, double phi_i_norm, double delta,
                   int big_a, const DoeblinSpec& doeblin, int i) {
  if (i != 2 && i != 4) throw std::domain_error("triple_norm: i must be 2 or 4");
  if (std::isnan(l1_norm) || std::isnan(phi_im1_norm) || std::isnan(phi_i_norm)) {
    throw std::domain_error("triple_norm: missing t_f-weighted channel");
  }
  const WeightSpec lower{i - 1, delta, big_a};
  const double denom = phi_weight(lower, 0.75 * doeblin.t0);
  const double e = std::exp(1.0);
  return l1_norm + 4.0 * doeblin.m_norm / denom * phi_im1_norm +
         4.0 * e * doeblin.m_norm / (doeblin.t0 * denom) * phi_i_norm;
}

std::vector<double> doeblin_minorant_cell_integrals(const HistogramSpec& hist,
                                                    const PotentialParams& params, double t0) {
  if (!(t0 > 20.0)) throw std::domain_error("doeblin_minorant_cell_integrals: requires T0 > 20");
  const double tau = 0.25 * t0;
  const double prefactor = std::pow(t0, double(-4 - params.big_a));

  // Gauss-Legendre 8 points on [-1,1].
  static const double kNode[8] = {-0.9602898564975363, -0.7966664774136267,
                                  -0.5255324099163290, -0.1834346424956498,
                                  0.1834346424956498,  0.5255324099163290,
                                  0.7966664774136267,  0.9602898564975363};
  static const double kWeight[8] = {0.1012285362903763, 0.2223810344533745,
                                    0.3137066458778873, 0.3626837833783620,
                                    0.3626837833783620, 0.3137066458778873,
                                    0.2223810344533745, 0.1012285362903763};

  const int nx = hist.regions_x3(), nv = hist.regions_v3(), np = hist.regions_vpar();
  std::vector<double> out(hist.cells(), 0.0);

  // (x3, v3) factor per interior 2-D cell, with the flight-time indicator.
  std::vector<double> plane(std::size_t(nx) * std::size_t(nv), 0.0);
  for (int ix = 1; ix <= int(hist.x3_edges.size()) - 1; ++ix) {
    const double xa = hist.x3_edges[std::size_t(ix - 1)], xb = hist.x3_edges[std::size_t(ix)];
    for (int iv = 1; iv <= int(hist.v3_edges.size()) - 1; ++iv) {
      const double va = hist.v3_edges[std::size_t(iv - 1)], vb = hist.v3_edges[std::size_t(iv)];
      double acc = 0.0;
      for (int i = 0; i < 8; ++i) {
        const double x3 = 0.5 * (xa + xb) + 0.5 * (xb - xa) * kNode[i];
        for (int j = 0; j < 8; ++j) {
          const double v3 = 0.5 * (va + vb) + 0.5 * (vb - va) * kNode[j];
          if (tb_vertical(params, x3, v3) > tau) continue;
          acc += kWeight[i] * kWeight[j] * std::exp(-0.5 * v3 * v3 - params.phi(x3));
        }
      }
      plane[std::size_t(ix) * std::size_t(nv) + std::size_t(iv)] =
          acc * 0.25 * (xb - xa) * (vb - va);
    }
  }

  for (int ix = 0; ix < nx; ++ix) {
    for (int iv = 0; iv < nv; ++iv) {
      const double base = plane[std::size_t(ix) * std::size_t(nv) + std::size_t(iv)];
      if (base == 0.0) continue;
      for (int ip = 1; ip <= int(hist.vpar_edges.size()) - 1; ++ip) {
        const double pa = hist.vpar_edges[std::size_t(ip - 1)],
                     pb = hist.vpar_edges[std::size_t(ip)];
        // int_{pa}^{pb} e^{-p^2/2} p dp, the 2pi of dv_par cancels 1/2pi of mu
        const double vp_mass = std::exp(-0.5 * pa * pa) - std::exp(-0.5 * pb * pb);
        const std::size_t cell =
            (std::size_t(ix) * std::size_t(nv) + std::size_t(iv)) * std::size_t(np) +
            std::size_t(ip);
        out[cell] = prefactor * base * vp_mass;
      }
    }
  }
  return out;
}

DoeblinReport doeblin_check(const HistogramSpec& hist, const std::vector<double>& next_cell_mass,
                            const std::vector<std::int64_t>& next_cell_count,
                            double next_weight_per_particle, double prev_total_mass,
                            double prev_defect_mass, const DoeblinSpec& doeblin,
                            const PotentialParams& params, std::int64_t min_cell_count) {
  if (next_cell_mass.size() != hist.cells() || next_cell_count.size() != hist.cells()) {
    throw std::domain_error("doeblin_check: histogram size mismatch");
  }
  const std::vector<double> minorant = doeblin_minorant_cell_integrals(hist, params, doeblin.t0);
  const double budget = std::max(0.0, prev_total_mass - prev_defect_mass);

  DoeblinReport report;
  for (std::size_t c = 0; c < hist.cells(); ++c) {
    if (next_cell_count[c] < min_cell_count) continue;
    ++report.cells_checked;
    report.minorant_mass_checked += minorant[c];
    const double se =
        next_weight_per_particle * std::sqrt(double(std::max<std::int64_t>(next_cell_count[c], 1)));
    if (next_cell_mass[c] < minorant[c] * budget - 3.0 * se) ++report.violations;
  }
  report.violating_fraction =
      report.cells_checked > 0 ? double(report.violations) / double(report.cells_checked) : 0.0;
  return report;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& series, int big_a, double delta) {
  DecayFit fit;
  std::vector<double> lt, ly_raw, ly_corr;
  for (const auto& [t, y] : series) {
    if (!(y > 0.0) || !(t > 0.0)) {
      ++fit.n_dropped;
      continue;
    }
    lt.push_back(std::log(t));
    ly_raw.push_back(std::log(y));
    const double beta = double(big_a - 6) - 0.5 * delta;
    ly_corr.push_back(std::log(y) - beta * std::log(std::log(t)));
  }
  fit.n_used = int(lt.size());
  if (fit.n_used < 2) throw std::domain_error("fit_decay: fewer than two positive points");

  const auto slope_resid = [&](const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = double(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
      sx += lt[i];
      sy += y[i];
      sxx += lt[i] * lt[i];
      sxy += lt[i] * y[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double rss = 0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double r = y[i] - slope * lt[i] - intercept;
      rss += r * r;
    }
    return std::pair<double, double>{slope, std::sqrt(rss / n)};
  };

  std::tie(fit.exponent_raw, fit.rms_residual_raw) = slope_resid(ly_raw);
  std::tie(fit.exponent_corrected, fit.rms_residual_corrected) = slope_resid(ly_corr);
  return fit;
}

double MomentWeights::varrho(double t) const {
  const double bracket = std::sqrt(1.0 + t * t);
  return std::pow(std::log(bracket), double(6 - big_a)) * std::pow(bracket, double(big_a - 5));
}

double MomentWeights::varrho_prime_envelope(double t) const {
  const double bracket = std::sqrt(1.0 + t * t);
  return std::pow(std::log(bracket), double(6 - big_a)) * std::pow(bracket, double(big_a - 6));
}

}  // namespace logvlasov
