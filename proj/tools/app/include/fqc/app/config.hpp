#pragma once

// Run configuration: flat `key = value` text with optional [section] headers.
// A key `k` inside section `s` is addressed as `s.k`; `seed` sits at the top.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fqc/circuit.hpp"
#include "fqc/datasets.hpp"
#include "fqc/optimizer.hpp"

namespace fqc::app {

/// Invalid configuration; `field()` is the dotted key path.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

enum class Engine { kQuantum, kBrute };
enum class ThresholdMode { kOptimized, kFixed };
enum class DataSource { kNone, kThreshold1d, kCircle2d, kFile };

struct DataConfig {
  DataSource source = DataSource::kThreshold1d;
  std::size_t k = 8;
  double cutoff = 0.0;
  double radius = 0.8;
  std::uint64_t seed = 7;
  std::string path;
  bool has_header = false;
  bool rescale = false;
};

struct RunConfig {
  /// Optimizer sampling seed.
  std::uint64_t seed = 1;
  CircuitSpec circuit;
  Engine engine = Engine::kQuantum;
  QuantumConfig quantum;
  DataConfig train;
  /// Test set shares cutoff, radius and CSV options with the training set.
  DataSource test_source = DataSource::kNone;
  std::size_t test_k = 0;  // 0: same as train.k
  std::uint64_t test_seed = 8;
  std::string test_path;
  ThresholdMode threshold_mode = ThresholdMode::kOptimized;
  double threshold = 0.5;
  std::size_t grid_res = 21;

  /// Quantum options with the run seed applied.
  QuantumConfig quantum_config() const;
  std::optional<DataConfig> test_data() const;
  /// Field-level checks; throws ConfigError.
  void validate() const;
};

struct ConfigKey {
  std::string path;
  std::string help;
  std::function<void(RunConfig&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

/// Every recognised key, in canonical output order.
const std::vector<ConfigKey>& config_keys();

/// Sets one key from its text value.
void set_key(RunConfig& config, const std::string& path, const std::string& value);

/// A parsed config file. Report files are valid configs; their result
/// section also yields the trained parameters and threshold.
struct LoadedConfig {
  RunConfig config;
  std::optional<ParamConfig> best_params;
  std::optional<double> threshold;
};

LoadedConfig parse_config(std::istream& in, const std::string& source = "config");
LoadedConfig load_config(const std::filesystem::path& path);

/// Canonical dump of every key; parse_config reproduces the same RunConfig.
void write_config(std::ostream& out, const RunConfig& config);

Dataset load_dataset(const DataConfig& data);

std::string to_string(Engine engine);
std::string to_string(DataSource source);
std::string to_string(ThresholdMode mode);

}  // namespace fqc::app
