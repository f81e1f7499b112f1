#pragma once

#include <string>
#include <vector>

#include "logvlasov/config.hpp"

namespace logvlasov {

inline constexpr const char* kCodeVersion = "0.1.0";

struct Verdict {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct RunManifest {
  std::string run_id;
  std::string code_version = kCodeVersion;
  RunConfig config;
  double wall_time_seconds = 0.0;
  std::vector<std::string> outputs;  // file names relative to the manifest
  std::vector<Verdict> verdicts;

  bool all_pass() const {
    for (const auto& v : verdicts) {
      if (!v.pass) return false;
    }
    return true;
  }
};

void write_manifest(const std::string& path, const RunManifest& manifest);
RunManifest read_manifest(const std::string& path);

}  // namespace logvlasov
