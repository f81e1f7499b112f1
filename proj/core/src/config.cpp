#include "logvlasov/config.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace logvlasov {

const char* to_string(Experiment e) {
  switch (e) {
    case Experiment::flow: return "flow";
    case Experiment::lemmas: return "lemmas";
    case Experiment::decay: return "decay";
    case Experiment::doeblin: return "doeblin";
    case Experiment::moments: return "moments";
    case Experiment::survival: return "survival";
  }
  return "flow";
}

Experiment experiment_from_string(const std::string& name) {
  for (const Experiment e : {Experiment::flow, Experiment::lemmas, Experiment::decay,
                             Experiment::doeblin, Experiment::moments, Experiment::survival}) {
    if (name == to_string(e)) return e;
  }
  throw ConfigError("experiment: unknown value '" + name + "'");
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not a number: '" + value + "'");
  }
  if (pos != value.size()) throw ConfigError(key + ": trailing characters in '" + value + "'");
  return out;
}

std::int64_t parse_int(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  std::int64_t out = 0;
  try {
    out = std::stoll(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an integer: '" + value + "'");
  }
  if (pos != value.size()) throw ConfigError(key + ": trailing characters in '" + value + "'");
  return out;
}

std::uint64_t parse_uint(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  std::uint64_t out = 0;
  try {
    out = std::stoull(value, &pos);
  } catch (const std::exception&) {
    throw ConfigError(key + ": not an unsigned integer: '" + value + "'");
  }
  if (pos != value.size()) throw ConfigError(key + ": trailing characters in '" + value + "'");
  return out;
}

const std::map<std::string, int>& known_sections() {
  static const std::map<std::string, int> sections = {
      {"run", 0}, {"potential", 0}, {"engine", 0}, {"histogram", 0},
      {"diagnostics", 0}, {"moments", 0}, {"survival", 0}};
  return sections;
}

void validate(const RunConfig& cfg) {
  PotentialParams params;
  try {
    params = cfg.potential();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("a: ") + e.what());
  }
  if (params.big_a < 8) {
    throw ConfigError("a: A = floor(1/ln a) = " + std::to_string(params.big_a) +
                      " violates the standing hypothesis A >= 8");
  }
  if (!(cfg.mass > 0.0)) throw ConfigError("mass: must be positive");
  if (!(cfg.t0 > 20.0)) throw ConfigError("t0: must exceed 20");
  if (cfg.n_particles < 1) throw ConfigError("n_particles: must be positive");
  if (cfg.n_checkpoints < 1) throw ConfigError("n_checkpoints: must be positive");
  if (!(cfg.delta > 0.0 && cfg.delta < 1.0)) throw ConfigError("delta: must lie in (0,1)");
  if (!(cfg.theta >= 0.0 && 2.0 * cfg.theta < 0.5)) {
    throw ConfigError("theta: must satisfy 0 <= 2 theta < 1/2");
  }
  if (cfg.threads < 1) throw ConfigError("threads: must be positive");
  if (!(cfg.f0_shift >= 0.0)) throw ConfigError("f0_shift: must be non-negative");
  if (cfg.histogram.x3_bins < 1 || cfg.histogram.v3_bins < 1 || cfg.histogram.vpar_bins < 1) {
    throw ConfigError("histogram bins: must be positive");
  }
  if (!(cfg.histogram.v3_max > 0.0) || !(cfg.histogram.vpar_max > 0.0)) {
    throw ConfigError("histogram ranges: must be positive");
  }
  if (!(cfg.histogram.quantile > 0.0 && cfg.histogram.quantile < 1.0)) {
    throw ConfigError("quantile: must lie in (0,1)");
  }
}

}  // namespace

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ConfigError("line " + std::to_string(line_no) + ": bad section");
      const std::string section = trim(line.substr(1, line.size() - 2));
      if (!known_sections().count(section)) {
        throw ConfigError("unknown section '" + section + "'");
      }
      continue;
    }

    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "seed") {
      cfg.seed = parse_uint(key, value);
    } else if (key == "a") {
      cfg.a = parse_double(key, value);
    } else if (key == "mass") {
      cfg.mass = parse_double(key, value);
    } else if (key == "n_particles") {
      cfg.n_particles = parse_int(key, value);
    } else if (key == "t0") {
      cfg.t0 = parse_double(key, value);
    } else if (key == "n_checkpoints") {
      cfg.n_checkpoints = int(parse_int(key, value));
    } else if (key == "experiment") {
      cfg.experiment = experiment_from_string(value);
    } else if (key == "delta") {
      cfg.delta = parse_double(key, value);
    } else if (key == "theta") {
      cfg.theta = parse_double(key, value);
    } else if (key == "threads") {
      cfg.threads = int(parse_int(key, value));
    } else if (key == "f0_shift") {
      cfg.f0_shift = parse_double(key, value);
    } else if (key == "x3_bins") {
      cfg.histogram.x3_bins = int(parse_int(key, value));
    } else if (key == "v3_bins") {
      cfg.histogram.v3_bins = int(parse_int(key, value));
    } else if (key == "vpar_bins") {
      cfg.histogram.vpar_bins = int(parse_int(key, value));
    } else if (key == "v3_max") {
      cfg.histogram.v3_max = parse_double(key, value);
    } else if (key == "vpar_max") {
      cfg.histogram.vpar_max = parse_double(key, value);
    } else if (key == "quantile") {
      cfg.histogram.quantile = parse_double(key, value);
    } else {
      throw ConfigError("unknown key '" + key + "'");
    }
  }
  validate(cfg);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string render_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "[run]\n";
  out << "experiment=" << to_string(cfg.experiment) << "\n";
  out << "seed=" << cfg.seed << "\n";
  out << "threads=" << cfg.threads << "\n";
  out << "[potential]\n";
  out << "a=" << fmt_double(cfg.a) << "\n";
  out << "mass=" << fmt_double(cfg.mass) << "\n";
  out << "[engine]\n";
  out << "n_particles=" << cfg.n_particles << "\n";
  out << "t0=" << fmt_double(cfg.t0) << "\n";
  out << "n_checkpoints=" << cfg.n_checkpoints << "\n";
  out << "f0_shift=" << fmt_double(cfg.f0_shift) << "\n";
  out << "[histogram]\n";
  out << "x3_bins=" << cfg.histogram.x3_bins << "\n";
  out << "v3_bins=" << cfg.histogram.v3_bins << "\n";
  out << "vpar_bins=" << cfg.histogram.vpar_bins << "\n";
  out << "v3_max=" << fmt_double(cfg.histogram.v3_max) << "\n";
  out << "vpar_max=" << fmt_double(cfg.histogram.vpar_max) << "\n";
  out << "quantile=" << fmt_double(cfg.histogram.quantile) << "\n";
  out << "[diagnostics]\n";
  out << "delta=" << fmt_double(cfg.delta) << "\n";
  out << "[moments]\n";
  out << "theta=" << fmt_double(cfg.theta) << "\n";
  return out.str();
}

std::string config_run_id(const RunConfig& cfg) {
  const std::string text = render_config(cfg);
  std::uint64_t h = 1469598103934665603ull;
  for (const char c : text) {
    h ^= std::uint64_t(static_cast<unsigned char>(c));
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016" PRIx64, h);
  return buf;
}

}  // namespace logvlasov
