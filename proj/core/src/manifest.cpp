#include "logvlasov/manifest.hpp"

#include <fstream>

#include "json.hpp"

namespace logvlasov {

void write_manifest(const std::string& path, const RunManifest& manifest) {
  nlohmann::json j;
  j["run_id"] = manifest.run_id;
  j["code_version"] = manifest.code_version;
  j["config"] = render_config(manifest.config);
  j["wall_time_seconds"] = manifest.wall_time_seconds;
  j["outputs"] = manifest.outputs;
  nlohmann::json verdicts = nlohmann::json::array();
  for (const auto& v : manifest.verdicts) {
    verdicts.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
  }
  j["verdicts"] = verdicts;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_manifest: cannot open " + path);
  out << j.dump(2) << "\n";
}

RunManifest read_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_manifest: cannot open " + path);
  nlohmann::json j;
  in >> j;

  RunManifest m;
  m.run_id = j.at("run_id").get<std::string>();
  m.code_version = j.at("code_version").get<std::string>();
  m.config = parse_config(j.at("config").get<std::string>());
  m.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  m.outputs = j.at("outputs").get<std::vector<std::string>>();
  for (const auto& v : j.at("verdicts")) {
    m.verdicts.push_back(
        {v.at("name").get<std::string>(), v.at("pass").get<bool>(), v.at("detail").get<std::string>()});
  }
  return m;
}

}  // namespace logvlasov
