#include "logvlasov/lemma_lab.hpp"

#include <cmath>
#include <stdexcept>

#include "logvlasov/boundary.hpp"
#include "logvlasov/flow.hpp"
#include "logvlasov/parallel.hpp"
#include "logvlasov/rng.hpp"

namespace logvlasov {

namespace {

// Unwrapped footpoint/flight-time map of a boundary state (x fixed at the
// origin, velocity the free variable).
struct BackwardMap {
  double xb1, xb2, tb;
};

BackwardMap backward_map(const PotentialParams& params, const Vec3& v) {
  if (!(v[2] < 0.0)) throw std::domain_error("backward_map: arriving states have v3 < 0");
  const double tb = flight_time(params, -v[2]);
  return {-v[0] * tb, -v[1] * tb, tb};
}

double det3(const double j[3][3]) {
  return j[0][0] * (j[1][1] * j[2][2] - j[1][2] * j[2][1]) -
         j[0][1] * (j[1][0] * j[2][2] - j[1][2] * j[2][0]) +
         j[0][2] * (j[1][0] * j[2][1] - j[1][1] * j[2][0]);
}

// Central-difference Jacobian of (xb1, xb2, tb) in v with step h.
void fd_jacobian(const PotentialParams& params, const Vec3& v, double h, double j[3][3]) {
  for (int c = 0; c < 3; ++c) {
    Vec3 vp = v, vm = v;
    vp[std::size_t(c)] += h;
    vm[std::size_t(c)] -= h;
    const BackwardMap fp = backward_map(params, vp);
    const BackwardMap fm = backward_map(params, vm);
    j[0][c] = (fp.xb1 - fm.xb1) / (2.0 * h);
    j[1][c] = (fp.xb2 - fm.xb2) / (2.0 * h);
    j[2][c] = (fp.tb - fm.tb) / (2.0 * h);
  }
}

double fd_dtb_dv3(const PotentialParams& params, const Vec3& v, double h) {
  Vec3 vp = v, vm = v;
  vp[2] += h;
  vm[2] -= h;
  return (backward_map(params, vp).tb - backward_map(params, vm).tb) / (2.0 * h);
}

}  // namespace

JacobianReport verify_jacobian_sandwich(const PotentialParams& params,
                                        const std::vector<double>& v3_grid, const Vec2& v_par) {
  JacobianReport report;
  report.lower_constant = std::numeric_limits<double>::infinity();
  report.min_richardson_order = std::numeric_limits<double>::infinity();

  for (const double v3 : v3_grid) {
    if (!(v3 < -1e-3)) {
      throw std::domain_error("verify_jacobian_sandwich: grid must avoid |v3| < 1e-3");
    }
    const Vec3 v = {v_par[0], v_par[1], v3};
    JacobianRow row;
    row.v3 = v3;
    row.t_b = flight_time(params, -v3);

    const double h = std::max(1e-6, 1e-8 * std::fabs(v3));
    double j[3][3];
    fd_jacobian(params, v, h, j);
    row.dtb_dv3_fd = j[2][2];
    row.dtb_dv3_closed = exit_time_derivative(params, v3);
    row.dtb_dv12_max = std::max(std::fabs(j[2][0]), std::fabs(j[2][1]));
    row.det_fd = std::fabs(det3(j));
    row.det_over_tb2 = row.det_fd / (row.t_b * row.t_b);
    row.sandwich_upper = row.det_fd / (row.t_b * row.t_b * (1.0 + std::fabs(v3) * row.t_b));

    // Convergence order from a truncation-dominated step trio.
    const double hr = 1e-3 * std::max(1.0, std::fabs(v3));
    const double d1 = fd_dtb_dv3(params, v, hr);
    const double d2 = fd_dtb_dv3(params, v, 0.5 * hr);
    const double d4 = fd_dtb_dv3(params, v, 0.25 * hr);
    const double num = std::fabs(d1 - d2), den = std::fabs(d2 - d4);
    row.richardson_order = (den > 0.0) ? std::log2(num / den) : 2.0;
    if (num > 0.0 && den > 0.0 && row.richardson_order < 1.0) {
      throw std::runtime_error("verify_jacobian_sandwich: nonconvergent finite-difference pair");
    }

    report.max_dtb_dv12 = std::max(report.max_dtb_dv12, row.dtb_dv12_max);
    report.max_closed_form_error =
        std::max(report.max_closed_form_error, std::fabs(row.dtb_dv3_fd - row.dtb_dv3_closed));
    report.lower_constant = std::min(report.lower_constant, row.det_over_tb2);
    report.upper_constant = std::max(report.upper_constant, row.sandwich_upper);
    report.min_richardson_order = std::min(report.min_richardson_order, row.richardson_order);
    report.rows.push_back(row);
  }
  return report;
}

namespace {

// One-dimensional winding sum sum_m exp(-((d+m)/t)^2/2) truncated at |m| <= M.
double winding_line_sum(double d, double t, int m_max) {
  double total = 0.0;
  for (int m = -m_max; m <= m_max; ++m) {
    const double u = (d + m) / t;
    total += std::exp(-0.5 * u * u);
  }
  return total;
}

double winding_line_tail(double t, int m_max) {
  // sum_{|m| > M} exp(-((d+m)/t)^2/2) <= 2 int_{M-1}^inf exp(-s^2/(2t^2)) ds
  return 2.0 * t * std::sqrt(0.5 * M_PI) * std::erfc(double(m_max - 1) / (std::sqrt(2.0) * t));
}

}  // namespace

double maxwellian_winding_sum(const PotentialParams& params, const Vec2& x, const Vec2& x_prev,
                              double t_b, WindingIndex* used) {
  if (!(t_b > 0.0)) throw std::domain_error("maxwellian_winding_sum: flight time must be positive");
  const double u = flight_time_inverse(params, t_b);
  const double vertical = std::exp(-0.5 * u * u);

  const int m_max = int(std::ceil(8.5 * t_b)) + 2;
  const double d1 = x[0] - x_prev[0];
  const double d2 = x[1] - x_prev[1];
  const double s1 = winding_line_sum(d1, t_b, m_max);
  const double s2 = winding_line_sum(d2, t_b, m_max);
  const double tail1 = winding_line_tail(t_b, m_max);
  const double tail2 = winding_line_tail(t_b, m_max);
  const double sum = s1 * s2;
  const double tail = tail1 * s2 + s1 * tail2 + tail1 * tail2;
  if (tail > 1e-12 * sum) {
    throw std::runtime_error("maxwellian_winding_sum: truncation tail above threshold, raise M to " +
                             std::to_string(2 * m_max));
  }
  if (used) {
    used->m_max = m_max;
    used->tail_bound = vertical * tail / (2.0 * M_PI);
  }
  return vertical * sum / (2.0 * M_PI);
}

double maxwellian_winding_near_diagonal(const PotentialParams& params, const Vec2& x,
                                        const Vec2& x_prev, double t_b) {
  if (!(t_b > 0.0)) throw std::domain_error("winding_near_diagonal: flight time must be positive");
  const double u = flight_time_inverse(params, t_b);
  double total = 0.0;
  for (int m = -1; m <= 1; ++m) {
    for (int n = -1; n <= 1; ++n) {
      const double w1 = (x[0] + m - x_prev[0]) / t_b;
      const double w2 = (x[1] + n - x_prev[1]) / t_b;
      total += std::exp(-0.5 * (w1 * w1 + w2 * w2 + u * u));
    }
  }
  return total / (2.0 * M_PI);
}

CovIdentityReport verify_cov_identity(const PotentialParams& params, CovTestFunction g,
                                      std::int64_t n_samples, std::uint64_t seed, int n_threads,
                                      double height_cap, double speed_cap) {
  if (n_samples <= 0) throw std::domain_error("verify_cov_identity: n_samples must be positive");

  const std::int64_t n_chunks = chunk_count(n_samples);
  std::vector<double> sum_w(std::size_t(n_chunks), 0.0), sum_w2(std::size_t(n_chunks), 0.0);

  parallel_chunks(n_samples, n_threads, [&](std::int64_t chunk, std::int64_t lo, std::int64_t hi) {
    double sw = 0.0, sw2 = 0.0;
    for (std::int64_t i = lo; i < hi; ++i) {
      RandomStream stream(seed, std::uint64_t(i), 0);
      PhaseState s;
      s.x_par = {stream.uniform(), stream.uniform()};
      s.x3 = 0.0;
      const auto tan = stream.gaussian_pair();
      s.v = {tan[0], tan[1], -stream.rayleigh()};

      const double t_b = flight_time(params, -s.v[2]);
      const double back = -stream.uniform() * t_b;
      double weight = 0.0;
      if (t_b > 0.0) {
        const PhaseState interior = flow(params, s, back);
        const double mu = wall_maxwellian(s.v);
        double g_val = 0.0;
        switch (g) {
          case CovTestFunction::stationary_density: {
            const StationaryState stat(params);
            g_val = stat.density(interior) / params.mass;
            break;
          }
          case CovTestFunction::truncated_indicator: {
            g_val = (interior.x3 <= height_cap && interior.speed() <= speed_cap) ? 1.0 : 0.0;
            break;
          }
        }
        weight = t_b / mu * g_val;
      }
      sw += weight;
      sw2 += weight * weight;
    }
    sum_w[std::size_t(chunk)] = sw;
    sum_w2[std::size_t(chunk)] = sw2;
  });

  double sw = 0.0, sw2 = 0.0;
  for (std::size_t c = 0; c < sum_w.size(); ++c) {
    sw += sum_w[c];
    sw2 += sum_w2[c];
  }
  const double n = double(n_samples);
  CovIdentityReport report;
  report.lhs = sw / n;
  report.lhs_se = std::sqrt(std::max(0.0, sw2 / n - report.lhs * report.lhs) / n);

  switch (g) {
    case CovTestFunction::stationary_density:
      report.rhs = 1.0;
      break;
    case CovTestFunction::truncated_indicator:
      report.rhs = height_cap * (4.0 / 3.0) * M_PI * speed_cap * speed_cap * speed_cap;
      break;
  }
  return report;
}

TbBoundsReport verify_tb_bounds(const PotentialParams& params, const std::vector<double>& v3_grid) {
  TbBoundsReport report;
  report.lower_ratio_min = std::numeric_limits<double>::infinity();
  report.small_v_ratio_min = std::numeric_limits<double>::infinity();
  report.upper_ratio_bound = std::sqrt(2.0 * M_PI * params.ln_a);

  double smallest = std::numeric_limits<double>::infinity();
  for (const double w_signed : v3_grid) {
    const double w = std::fabs(w_signed);
    if (!(w > 0.0)) throw std::domain_error("verify_tb_bounds: grid must avoid v3 = 0");
    const double t_b = flight_time(params, w);
    const double envelope = params.pow_a(0.5 * w * w);
    report.upper_ratio_max = std::max(report.upper_ratio_max, t_b / envelope);
    const double lower_env = envelope * std::sqrt(-std::expm1(-params.ln_a * 0.5 * w * w));
    report.lower_ratio_min = std::min(report.lower_ratio_min, t_b / lower_env);
    if (w <= 0.1) report.small_v_ratio_min = std::min(report.small_v_ratio_min, t_b / w);
    if (w < smallest) {
      smallest = w;
      report.zero_limit_ratio = t_b / w;
    }
  }
  return report;
}

}  // namespace logvlasov
