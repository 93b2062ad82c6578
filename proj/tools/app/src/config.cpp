#include "fqc/app/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "fqc/errors.hpp"

namespace fqc::app {

namespace {

std::uint64_t parse_u64(const std::string& path, const std::string& text) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(path, "expected an unsigned integer, got '" + text + "'");
  }
  return v;
}

double parse_real(const std::string& path, const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, text.data() + text.size(), v);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(path, "expected a finite number, got '" + text + "'");
  }
  return v;
}

bool parse_flag(const std::string& path, const std::string& text) {
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(path, "expected true or false, got '" + text + "'");
}

template <class E>
E parse_enum(const std::string& path, const std::string& text, const std::map<std::string, E>& names) {
  const auto it = names.find(text);
  if (it != names.end()) return it->second;
  std::string options;
  for (const auto& [name, value] : names) options += (options.empty() ? "" : "|") + name;
  throw ConfigError(path, "expected one of " + options + ", got '" + text + "'");
}

const std::map<std::string, Engine> kEngines{{"quantum", Engine::kQuantum}, {"brute", Engine::kBrute}};
const std::map<std::string, ThresholdMode> kModes{{"optimized", ThresholdMode::kOptimized},
                                                  {"fixed", ThresholdMode::kFixed}};
const std::map<std::string, DataSource> kSources{{"threshold_1d", DataSource::kThreshold1d},
                                                 {"circle_2d", DataSource::kCircle2d},
                                                 {"file", DataSource::kFile}};
const std::map<std::string, DataSource> kTestSources{{"none", DataSource::kNone},
                                                     {"threshold_1d", DataSource::kThreshold1d},
                                                     {"circle_2d", DataSource::kCircle2d},
                                                     {"file", DataSource::kFile}};

std::string flag_text(bool b) { return b ? "true" : "false"; }

// Key binders; `m` is a generic accessor usable on const and mutable configs.
template <class M>
ConfigKey u64_key(std::string path, std::string help, M m) {
  return {path, std::move(help), [m, path](RunConfig& c, const std::string& v) { m(c) = parse_u64(path, v); },
          [m](const RunConfig& c) { return std::to_string(m(c)); }};
}

template <class M>
ConfigKey real_key(std::string path, std::string help, M m) {
  return {path, std::move(help), [m, path](RunConfig& c, const std::string& v) { m(c) = parse_real(path, v); },
          [m](const RunConfig& c) { return format_double(m(c)); }};
}

template <class M>
ConfigKey flag_key(std::string path, std::string help, M m) {
  return {path, std::move(help), [m, path](RunConfig& c, const std::string& v) { m(c) = parse_flag(path, v); },
          [m](const RunConfig& c) { return flag_text(m(c)); }};
}

template <class M>
ConfigKey text_key(std::string path, std::string help, M m) {
  return {path, std::move(help), [m](RunConfig& c, const std::string& v) { m(c) = v; },
          [m](const RunConfig& c) { return m(c); }};
}

template <class E, class M>
ConfigKey enum_key(std::string path, std::string help, const std::map<std::string, E>& names, M m) {
  return {path, std::move(help),
          [m, path, &names](RunConfig& c, const std::string& v) { m(c) = parse_enum(path, v, names); },
          [m](const RunConfig& c) { return to_string(m(c)); }};
}

std::vector<ConfigKey> make_keys() {
  std::vector<ConfigKey> k;
  k.push_back(u64_key("seed", "optimizer sampling seed", [](auto& c) -> auto& { return c.seed; }));

  k.push_back(u64_key("circuit.n_params", "trainable binary parameters (layers)",
                       [](auto& c) -> auto& { return c.circuit.n_params; }));
  k.push_back(u64_key("circuit.data_dim", "feature dimension",
                       [](auto& c) -> auto& { return c.circuit.data_dim; }));
  k.push_back(real_key("circuit.encoding_scale", "radians per unit feature",
                       [](auto& c) -> auto& { return c.circuit.encoding_scale; }));
  k.push_back(real_key("circuit.angle_zero", "rotation angle for bit 0",
                       [](auto& c) -> auto& { return c.circuit.angle_zero; }));
  k.push_back(real_key("circuit.angle_one", "rotation angle for bit 1",
                       [](auto& c) -> auto& { return c.circuit.angle_one; }));
  k.push_back(flag_key("circuit.entangler", "CNOT after every layer",
                       [](auto& c) -> auto& { return c.circuit.entangler; }));

  k.push_back(enum_key<Engine>("optimizer.engine", "quantum|brute", kEngines,
                               [](auto& c) -> auto& { return c.engine; }));
  k.push_back(u64_key("optimizer.degree", "suppression polynomial degree",
                       [](auto& c) -> auto& { return c.quantum.degree; }));
  k.push_back(real_key("optimizer.softness_min", "minimum transition width",
                       [](auto& c) -> auto& { return c.quantum.softness_min; }));
  k.push_back(real_key("optimizer.softness_rel", "transition width relative to the threshold",
                       [](auto& c) -> auto& { return c.quantum.softness_rel; }));
  k.push_back(real_key("optimizer.budget_factor", "iteration budget per parameter",
                       [](auto& c) -> auto& { return c.quantum.budget_factor; }));
  k.push_back(real_key("optimizer.eps_s", "relative convergence floor on the success weight",
                       [](auto& c) -> auto& { return c.quantum.eps_s; }));
  k.push_back(flag_key("optimizer.normalize_amplitudes", "suppress 2^{-n/2}-scaled amplitudes",
                       [](auto& c) -> auto& { return c.quantum.normalize_amplitudes; }));
  k.push_back(u64_key("optimizer.max_amplitudes", "simulation cap on 2^n",
                       [](auto& c) -> auto& { return c.quantum.limits.max_amplitudes; }));

  k.push_back(enum_key<DataSource>("dataset.source", "threshold_1d|circle_2d|file", kSources,
                                   [](auto& c) -> auto& { return c.train.source; }));
  k.push_back(u64_key("dataset.k", "generated training points",
                       [](auto& c) -> auto& { return c.train.k; }));
  k.push_back(real_key("dataset.cutoff", "threshold_1d label cutoff",
                       [](auto& c) -> auto& { return c.train.cutoff; }));
  k.push_back(real_key("dataset.radius", "circle_2d radius",
                       [](auto& c) -> auto& { return c.train.radius; }));
  k.push_back(u64_key("dataset.seed", "generator seed", [](auto& c) -> auto& { return c.train.seed; }));
  k.push_back(text_key("dataset.path", "CSV path for source=file",
                       [](auto& c) -> auto& { return c.train.path; }));
  k.push_back(flag_key("dataset.has_header", "CSV files start with a header line",
                       [](auto& c) -> auto& { return c.train.has_header; }));
  k.push_back(flag_key("dataset.rescale", "rescale out-of-range CSV feature columns",
                       [](auto& c) -> auto& { return c.train.rescale; }));
  k.push_back(enum_key<DataSource>("dataset.test_source", "none|threshold_1d|circle_2d|file", kTestSources,
                                   [](auto& c) -> auto& { return c.test_source; }));
  k.push_back(u64_key("dataset.test_k", "generated test points (0: same as k)",
                       [](auto& c) -> auto& { return c.test_k; }));
  k.push_back(u64_key("dataset.test_seed", "test generator seed",
                      [](auto& c) -> auto& { return c.test_seed; }));
  k.push_back(text_key("dataset.test_path", "CSV path for test_source=file",
                       [](auto& c) -> auto& { return c.test_path; }));

  k.push_back(enum_key<ThresholdMode>("evaluation.threshold_mode", "optimized|fixed", kModes,
                                      [](auto& c) -> auto& { return c.threshold_mode; }));
  k.push_back(real_key("evaluation.threshold", "fixed decision threshold on p(|10>)",
                       [](auto& c) -> auto& { return c.threshold; }));
  k.push_back(u64_key("evaluation.grid_res", "boundary grid points per axis",
                       [](auto& c) -> auto& { return c.grid_res; }));
  return k;
}

const std::set<std::string> kConfigSections{"circuit", "optimizer", "dataset", "evaluation"};
// Sections a run report adds; ignored when the report is read back as a config.
const std::set<std::string> kReportSections{"result",           "ledger",          "speedup", "trace",
                                            "train_evaluation", "test_evaluation"};

}  // namespace

QuantumConfig RunConfig::quantum_config() const {
  QuantumConfig q = quantum;
  q.seed = seed;
  return q;
}

std::optional<DataConfig> RunConfig::test_data() const {
  if (test_source == DataSource::kNone) return std::nullopt;
  DataConfig d = train;
  d.source = test_source;
  d.k = test_k == 0 ? train.k : test_k;
  d.seed = test_seed;
  d.path = test_path;
  return d;
}

void RunConfig::validate() const {
  try {
    circuit.validate();
  } catch (const ContractViolation& e) {
    throw ConfigError("circuit", e.what());
  }
  if (quantum.degree < 2) throw ConfigError("optimizer.degree", "must be at least 2");
  if (!(quantum.softness_min > 0.0)) throw ConfigError("optimizer.softness_min", "must be positive");
  if (quantum.softness_rel < 0.0) throw ConfigError("optimizer.softness_rel", "must be non-negative");
  if (!(quantum.budget_factor > 0.0)) throw ConfigError("optimizer.budget_factor", "must be positive");
  if (quantum.eps_s < 0.0) throw ConfigError("optimizer.eps_s", "must be non-negative");
  if (threshold < 0.0 || threshold > 1.0) throw ConfigError("evaluation.threshold", "must lie in [0, 1]");
  if (grid_res < 2) throw ConfigError("evaluation.grid_res", "must be at least 2");

  auto check_data = [&](const DataConfig& d, const std::string& source_key, const std::string& k_key,
                        const std::string& path_key) {
    if (d.k == 0) throw ConfigError(k_key, "must be at least 1");
    switch (d.source) {
      case DataSource::kThreshold1d:
        if (!(d.cutoff > -1.0 && d.cutoff < 1.0)) throw ConfigError("dataset.cutoff", "must lie in (-1, 1)");
        if (circuit.data_dim != 1) {
          throw ConfigError("circuit.data_dim", std::to_string(circuit.data_dim) +
                                                    " does not match dataset dimension 1 (" + source_key + ")");
        }
        break;
      case DataSource::kCircle2d:
        if (!(d.radius > 0.0 && d.radius < std::sqrt(2.0))) {
          throw ConfigError("dataset.radius", "must lie in (0, sqrt(2))");
        }
        if (circuit.data_dim != 2) {
          throw ConfigError("circuit.data_dim", std::to_string(circuit.data_dim) +
                                                    " does not match dataset dimension 2 (" + source_key + ")");
        }
        break;
      case DataSource::kFile:
        if (d.path.empty()) throw ConfigError(path_key, "required when " + source_key + " = file");
        break;
      case DataSource::kNone:
        break;
    }
  };
  check_data(train, "dataset.source", "dataset.k", "dataset.path");
  if (auto t = test_data()) check_data(*t, "dataset.test_source", "dataset.test_k", "dataset.test_path");
}

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = make_keys();
  return keys;
}

void set_key(RunConfig& config, const std::string& path, const std::string& value) {
  const auto& keys = config_keys();
  const auto it = std::find_if(keys.begin(), keys.end(), [&](const ConfigKey& k) { return k.path == path; });
  if (it == keys.end()) throw ConfigError(path, "unknown key");
  it->set(config, value);
}

LoadedConfig parse_config(std::istream& in, const std::string& source) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(source, "line " + std::to_string(e.line()) + ": " + e.message());
  }

  LoadedConfig loaded;
  for (const auto& [name, node] : tree) {
    if (kConfigSections.count(name)) {
      for (const auto& [key, leaf] : node) set_key(loaded.config, name + "." + key, leaf.data());
    } else if (kReportSections.count(name)) {
      continue;
    } else if (node.empty()) {
      set_key(loaded.config, name, node.data());
    } else {
      throw ConfigError(name, "unknown section");
    }
  }

  if (const auto params = tree.get_optional<std::string>("result.best_params")) {
    try {
      loaded.best_params = ParamConfig::parse(*params);
    } catch (const std::exception& e) {
      throw ConfigError("result.best_params", e.what());
    }
  }
  if (const auto t = tree.get_optional<std::string>("result.threshold")) {
    loaded.threshold = parse_real("result.threshold", *t);
  }
  return loaded;
}

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("--config", "cannot open '" + path.string() + "'");
  return parse_config(in, path.string());
}

void write_config(std::ostream& out, const RunConfig& config) {
  std::string section;
  for (const auto& key : config_keys()) {
    const auto dot = key.path.find('.');
    const std::string sec = dot == std::string::npos ? "" : key.path.substr(0, dot);
    const std::string name = dot == std::string::npos ? key.path : key.path.substr(dot + 1);
    if (sec != section) {
      out << "\n[" << sec << "]\n";
      section = sec;
    }
    out << name << " = " << key.get(config) << '\n';
  }
}

Dataset load_dataset(const DataConfig& data) {
  switch (data.source) {
    case DataSource::kThreshold1d:
      return gen_threshold_1d(data.k, data.cutoff, data.seed);
    case DataSource::kCircle2d:
      return gen_circle_2d(data.k, data.radius, data.seed);
    case DataSource::kFile:
      return load_csv(data.path, {.has_header = data.has_header, .rescale = data.rescale});
    case DataSource::kNone:
      break;
  }
  throw ConfigError("dataset.source", "no data source");
}

std::string to_string(Engine engine) { return engine == Engine::kQuantum ? "quantum" : "brute"; }

std::string to_string(DataSource source) {
  switch (source) {
    case DataSource::kNone: return "none";
    case DataSource::kThreshold1d: return "threshold_1d";
    case DataSource::kCircle2d: return "circle_2d";
    case DataSource::kFile: return "file";
  }
  return "none";
}

std::string to_string(ThresholdMode mode) {
  return mode == ThresholdMode::kOptimized ? "optimized" : "fixed";
}

}  // namespace fqc::app
