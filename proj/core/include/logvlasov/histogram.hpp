#pragma once

#include <cstdint>
#include <vector>

#include "logvlasov/phase.hpp"
#include "logvlasov/potential.hpp"

namespace logvlasov {

// Binning of (x3, v3, |v_par|).  Each axis carries an extra under/overflow
// region so that binned mass is conserved exactly.
struct HistogramSpec {
  std::vector<double> x3_edges;    // increasing, first edge 0
  std::vector<double> v3_edges;    // increasing
  std::vector<double> vpar_edges;  // increasing, first edge 0

  // 64 log-spaced height bins up to the 1-1e-4 quantile of the stationary
  // height law, 32 bins on v3 in [-6,6], 16 bins on |v_par| in [0,6].
  static HistogramSpec make_default(const PotentialParams& params, int nx3 = 64, int nv3 = 32,
                                    int nvpar = 16, double v3_max = 6.0, double vpar_max = 6.0,
                                    double quantile = 1.0 - 1e-4);

  HistogramSpec refined(int factor = 2) const;

  int regions_x3() const { return int(x3_edges.size()) + 1; }
  int regions_v3() const { return int(v3_edges.size()) + 1; }
  int regions_vpar() const { return int(vpar_edges.size()) + 1; }
  std::size_t cells() const {
    return std::size_t(regions_x3()) * std::size_t(regions_v3()) * std::size_t(regions_vpar());
  }

  std::size_t cell_of(double x3, double v3, double vpar) const;
  std::size_t cell_of(const PhaseState& s) const { return cell_of(s.x3, s.v[2], s.vpar_norm()); }

  // Region index of the slab along x3 alone.
  int x3_region(double x3) const;
  // Width of an interior x3 region; under/overflow regions report 0.
  double x3_region_width(int region) const;

  bool compatible(const HistogramSpec& other) const;
};

// Region lookup shared by the axes: values below the first edge go to
// region 0, beyond the last edge to the final region, otherwise 1 + bin.
int region_index(const std::vector<double>& edges, double value);

}  // namespace logvlasov
