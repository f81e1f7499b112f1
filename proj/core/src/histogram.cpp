#include "logvlasov/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace logvlasov {

int region_index(const std::vector<double>& edges, double value) {
  if (value < edges.front()) return 0;
  if (value >= edges.back()) return int(edges.size());
  const auto it = std::upper_bound(edges.begin(), edges.end(), value);
  return int(it - edges.begin());
}

HistogramSpec HistogramSpec::make_default(const PotentialParams& params, int nx3, int nv3,
                                          int nvpar, double v3_max, double vpar_max,
                                          double quantile) {
  if (nx3 < 1 || nv3 < 1 || nvpar < 1) throw std::domain_error("HistogramSpec: empty axis");

  HistogramSpec spec;
  // Height cap at the requested quantile of (A-1)(1+h)^{-A}: CDF = 1-(1+h)^{1-A}.
  const double tail_exp = 1.0 - 1.0 / params.ln_a;
  const double cap = std::pow(1.0 - quantile, 1.0 / tail_exp) - 1.0;
  spec.x3_edges.resize(std::size_t(nx3) + 1);
  for (int i = 0; i <= nx3; ++i) {
    spec.x3_edges[std::size_t(i)] = std::pow(1.0 + cap, double(i) / nx3) - 1.0;
  }
  spec.x3_edges.front() = 0.0;

  spec.v3_edges.resize(std::size_t(nv3) + 1);
  for (int i = 0; i <= nv3; ++i) {
    spec.v3_edges[std::size_t(i)] = -v3_max + 2.0 * v3_max * double(i) / nv3;
  }
  spec.vpar_edges.resize(std::size_t(nvpar) + 1);
  for (int i = 0; i <= nvpar; ++i) {
    spec.vpar_edges[std::size_t(i)] = vpar_max * double(i) / nvpar;
  }

  for (const auto* edges : {&spec.x3_edges, &spec.v3_edges, &spec.vpar_edges}) {
    if (!std::is_sorted(edges->begin(), edges->end()) ||
        std::adjacent_find(edges->begin(), edges->end()) != edges->end()) {
      throw std::domain_error("HistogramSpec: edges must be strictly increasing");
    }
  }
  return spec;
}

HistogramSpec HistogramSpec::refined(int factor) const {
  if (factor < 1) throw std::domain_error("HistogramSpec::refined: factor must be >= 1");
  auto refine = [factor](const std::vector<double>& edges) {
    std::vector<double> out;
    out.reserve((edges.size() - 1) * std::size_t(factor) + 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      for (int j = 0; j < factor; ++j) {
        out.push_back(edges[i] + (edges[i + 1] - edges[i]) * double(j) / factor);
      }
    }
    out.push_back(edges.back());
    return out;
  };
  HistogramSpec spec;
  spec.x3_edges = refine(x3_edges);
  spec.v3_edges = refine(v3_edges);
  spec.vpar_edges = refine(vpar_edges);
  return spec;
}

std::size_t HistogramSpec::cell_of(double x3, double v3, double vpar) const {
  const int ix = region_index(x3_edges, x3);
  const int iv = region_index(v3_edges, v3);
  const int ip = region_index(vpar_edges, vpar);
  return (std::size_t(ix) * std::size_t(regions_v3()) + std::size_t(iv)) *
             std::size_t(regions_vpar()) +
         std::size_t(ip);
}

int HistogramSpec::x3_region(double x3) const { return region_index(x3_edges, x3); }

double HistogramSpec::x3_region_width(int region) const {
  if (region < 1 || region > int(x3_edges.size()) - 1) return 0.0;
  return x3_edges[std::size_t(region)] - x3_edges[std::size_t(region) - 1];
}

bool HistogramSpec::compatible(const HistogramSpec& other) const {
  return x3_edges == other.x3_edges && v3_edges == other.v3_edges &&
         vpar_edges == other.vpar_edges;
}

}  // namespace logvlasov
