#pragma once

#include <cstdint>
#include <string>

#include "logvlasov/histogram.hpp"
#include "logvlasov/potential.hpp"

namespace logvlasov {

enum class Experiment { flow, lemmas, decay, doeblin, moments, survival };

const char* to_string(Experiment e);
Experiment experiment_from_string(const std::string& name);

struct HistogramConfig {
  int x3_bins = 64;
  int v3_bins = 32;
  int vpar_bins = 16;
  double v3_max = 6.0;
  double vpar_max = 6.0;
  double quantile = 1.0 - 1e-4;

  HistogramSpec build(const PotentialParams& params) const {
    return HistogramSpec::make_default(params, x3_bins, v3_bins, vpar_bins, v3_max, vpar_max,
                                       quantile);
  }
  bool operator==(const HistogramConfig&) const = default;
};

struct RunConfig {
  std::uint64_t seed = 0;
  double a = 1.1331484530668263;  // e^{1/8}, so A = 8
  double mass = 1.0;
  std::int64_t n_particles = 100000;
  double t0 = 32.0;
  int n_checkpoints = 10;
  HistogramConfig histogram;
  Experiment experiment = Experiment::flow;
  double delta = 0.5;
  double theta = 0.2;
  int threads = 1;
  double f0_shift = 1.0;

  PotentialParams potential() const { return PotentialParams::from_base(a, mass); }
  bool operator==(const RunConfig&) const = default;
};

// key=value text with optional [section] headers; unknown keys and
// out-of-range values are rejected with the key named in the error.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);
std::string render_config(const RunConfig& config);

// FNV-1a of the canonical rendering; used as the run id.
std::string config_run_id(const RunConfig& config);

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace logvlasov
