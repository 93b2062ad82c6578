#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fqc/app/config.hpp"
#include "fqc/circuit.hpp"
#include "fqc/datasets.hpp"
#include "fqc/optimizer.hpp"

namespace fqc::app {

struct Evaluation {
  double threshold = 0.5;
  double accuracy = 0.0;
  std::size_t true_pos = 0;
  std::size_t true_neg = 0;
  std::size_t false_pos = 0;
  std::size_t false_neg = 0;
  /// p(|10>) and predicted class per point, in dataset order.
  std::vector<double> probs;
  std::vector<int> predicted;
};

Evaluation evaluate(const CircuitSpec& spec, const ParamConfig& params, const Dataset& data,
                    double threshold);

/// Scans {0, midpoints of the sorted distinct probabilities, 1} and returns the
/// first threshold of maximal accuracy (classification is p > threshold).
double optimize_threshold(std::span<const double> probs, std::span<const int> labels);

struct RunReport {
  RunConfig config;
  TrainResult result;
  /// First round whose reference equals the returned configuration.
  std::uint64_t found_at = 0;
  SpeedupReport speedup;
  Evaluation train_eval;
  std::optional<Evaluation> test_eval;
};

/// Loads data, runs the configured engine and evaluates. Throws ConfigError
/// when the data dimension disagrees with circuit.data_dim.
RunReport run_train(const RunConfig& config);

/// Self-contained text report; it embeds the full config, so it can be
/// passed back as --config.
void write_report(std::ostream& out, const RunReport& report);
void write_trace_csv(std::ostream& out, const TrainResult& result);
void write_points_csv(std::ostream& out, const Dataset& data, const Evaluation& eval);
void write_evaluation(std::ostream& out, const Evaluation& eval);

struct GridRow {
  std::vector<double> features;
  double prob = 0.0;
  int cls = 0;
};

/// grid_res points per axis over [-1, 1]^D, last axis fastest. D must be 1 or 2.
std::vector<GridRow> boundary_grid(const CircuitSpec& spec, const ParamConfig& params,
                                   double threshold, std::size_t grid_res);
void write_grid_csv(std::ostream& out, std::size_t dim, std::span<const GridRow> rows);

struct Cell {
  std::size_t n_params = 0;
  std::size_t n_points = 0;
};

/// "12x2,4x4" -> {(12,2), (4,4)}; blank text gives no cells.
std::vector<Cell> parse_cells(const std::string& text);

struct CompareRow {
  Cell cell;
  bool ok = false;
  std::string error;
  SpeedupReport speedup;
  double quantum_objective = 0.0;
  double brute_objective = 0.0;
  bool objective_match = false;
};

/// Runs both engines per cell on a generated instance with the base config's
/// circuit, optimizer and dataset settings. A failing cell is marked, not fatal.
std::vector<CompareRow> run_compare(const RunConfig& base, std::span<const Cell> cells);
void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows);

}  // namespace fqc::app
