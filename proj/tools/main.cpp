// Experiment orchestrator: run a configuration, replay a manifest for
// byte-identical outputs, or check an existing manifest.
//
// Exit codes: 0 all enabled acceptance checks pass, 1 acceptance failure,
// 2 usage or configuration error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "logvlasov/experiments.hpp"

namespace {

std::string resolve_out_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("LOGVLASOV_OUT")) return env;
  return ".";
}

void print_verdicts(const logvlasov::RunManifest& manifest) {
  for (const auto& v : manifest.verdicts) {
    std::cout << (v.pass ? "PASS" : "FAIL") << "  " << v.name << "  (" << v.detail << ")\n";
  }
}

int do_run(const std::string& config_path, const std::string& out_flag) {
  logvlasov::RunConfig config;
  try {
    config = logvlasov::load_config(config_path);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  }
  const std::string out_dir = resolve_out_dir(out_flag);
  logvlasov::RunManifest manifest;
  const std::string manifest_path = logvlasov::run_and_write(config, out_dir, &manifest);
  print_verdicts(manifest);
  std::cout << "manifest: " << manifest_path << "\n";
  return manifest.all_pass() ? 0 : 1;
}

bool same_bytes(const std::string& a, const std::string& b) {
  std::ifstream fa(a, std::ios::binary), fb(b, std::ios::binary);
  if (!fa || !fb) return false;
  std::ostringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  return sa.str() == sb.str();
}

int do_replay(const std::string& manifest_path, const std::string& out_flag) {
  logvlasov::RunManifest original;
  try {
    original = logvlasov::read_manifest(manifest_path);
  } catch (const std::exception& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 2;
  }
  const std::string base_dir = std::filesystem::path(manifest_path).parent_path().string();
  const std::string replay_dir =
      resolve_out_dir(out_flag) + "/replay_" + original.run_id;
  logvlasov::RunManifest fresh;
  logvlasov::run_and_write(original.config, replay_dir, &fresh);

  bool identical = true;
  for (const auto& name : original.outputs) {
    const std::string old_path = (base_dir.empty() ? "." : base_dir) + "/" + name;
    const std::string new_path = replay_dir + "/" + name;
    const bool ok = same_bytes(old_path, new_path);
    std::cout << (ok ? "IDENTICAL" : "DIFFERS") << "  " << name << "\n";
    identical = identical && ok;
  }
  return identical ? 0 : 1;
}

int do_check(const std::string& manifest_path) {
  logvlasov::RunManifest manifest;
  try {
    manifest = logvlasov::read_manifest(manifest_path);
  } catch (const std::exception& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 2;
  }
  const std::string base_dir = std::filesystem::path(manifest_path).parent_path().string();
  bool ok = true;
  for (const auto& name : manifest.outputs) {
    const std::string path = (base_dir.empty() ? "." : base_dir) + "/" + name;
    const bool exists = std::filesystem::exists(path);
    const bool carries_id = name.find(manifest.run_id) != std::string::npos;
    if (!exists || !carries_id) {
      std::cout << "MISSING  " << name << "\n";
      ok = false;
    }
  }
  print_verdicts(manifest);
  return (ok && manifest.all_pass()) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kinetic transport experiments in the gravitational half-space"};
  app.require_subcommand(1);

  std::string config_path, manifest_path, out_dir;

  auto* run = app.add_subcommand("run", "run an experiment from a key=value config");
  run->add_option("config", config_path, "configuration file")->required();
  run->add_option("-o,--out", out_dir, "output directory (default $LOGVLASOV_OUT or .)");

  auto* replay = app.add_subcommand("replay", "re-run a manifest and compare outputs byte-wise");
  replay->add_option("manifest", manifest_path, "manifest file")->required();
  replay->add_option("-o,--out", out_dir, "output directory for the replay");

  auto* check = app.add_subcommand("check", "verify a manifest's outputs and verdicts");
  check->add_option("manifest", manifest_path, "manifest file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) return do_run(config_path, out_dir);
    if (replay->parsed()) return do_replay(manifest_path, out_dir);
    if (check->parsed()) return do_check(manifest_path);
  } catch (const logvlasov::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
