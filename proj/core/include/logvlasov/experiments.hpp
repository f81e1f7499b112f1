#pragma once

#include <string>

#include "logvlasov/manifest.hpp"

namespace logvlasov {

// Dispatch the configured experiment, write its CSV outputs under out_dir,
// and return the manifest (not yet written to disk).
RunManifest run_experiment(const RunConfig& config, const std::string& out_dir);

// run_experiment + manifest file; returns the manifest path.
std::string run_and_write(const RunConfig& config, const std::string& out_dir,
                          RunManifest* manifest_out = nullptr);

}  // namespace logvlasov
