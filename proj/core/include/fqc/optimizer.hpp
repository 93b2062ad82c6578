#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fqc/circuit.hpp"
#include "fqc/oracle.hpp"
#include "fqc/suppressor.hpp"

namespace fqc {

struct QuantumConfig {
  std::size_t degree = 40;
  /// Transition width w = clamp(max(softness_min, softness_rel * theta), <= 1 - theta).
  double softness_min = 0.02;
  double softness_rel = 0.1;
  /// Iteration budget = ceil(budget_factor * n_params).
  double budget_factor = 3.0;
  std::uint64_t seed = 1;
  /// Convergence floor, relative to the amplitude vector's squared norm.
  double eps_s = 1e-12;
  /// Apply Q to the 2^{-n/2}-scaled amplitudes instead of the raw products.
  bool normalize_amplitudes = false;
  SimulationLimits limits;
  SuppressorOptions suppressor;

  double softness(double theta) const noexcept;
  std::uint64_t budget(std::size_t n_params) const noexcept;
};

struct QueryLedger {
  /// Accumulated modeled applications of the oracle and its inverse.
  double oracle_calls_modeled = 0.0;
  /// O(nk) classical amplitude computations (one per reference or candidate).
  std::uint64_t classical_amp_evals = 0;
  std::uint64_t iterations = 0;
  std::uint64_t brute_force_evals = 0;
};

struct TraceRecord {
  std::uint64_t iteration = 0;
  std::uint64_t reference = 0;
  double reference_magnitude = 0.0;
  double softness = 0.0;
  double gamma = 0.0;
  double success_weight = 0.0;
  /// Weight used in the cost formula: max(success_weight, convergence floor).
  double charged_weight = 0.0;
  std::size_t total_qubits = 0;
  double query_cost = 0.0;
  std::optional<std::uint64_t> successor;
  bool accepted = false;
  bool converged = false;
};

struct TrainResult {
  ParamConfig best_params;
  ObjectiveValue best_objective;
  QueryLedger ledger;
  std::vector<TraceRecord> trace;
  /// Reference drawn before the first transform (quantum engine only).
  std::uint64_t initial_reference = 0;
  bool converged = false;
  /// Every amplitude is zero, so the objective vanishes everywhere.
  bool degenerate = false;
};

/// Maximum finding with polynomial suppression of amplitudes
/// at or below the current reference.
///
/// The amplitude vector is built once; every round charges the modeled query
/// cost of one suppression pass and one classical amplitude evaluation for
/// each sampled candidate. A candidate replaces the reference only when its
/// magnitude is strictly larger. The loop ends when the success weight drops
/// to the convergence floor or after ceil(budget_factor * n) rounds.
TrainResult train_quantum(const CircuitSpec& spec, std::span<const DataPoint> data,
                          const QuantumConfig& config = {});

/// Exhaustive argmax of the objective; ties go to the lowest index.
TrainResult brute_force(const CircuitSpec& spec, std::span<const DataPoint> data,
                        const SimulationLimits& limits = {});

struct SpeedupReport {
  std::size_t n_params = 0;
  std::size_t n_points = 0;
  std::size_t degree = 0;
  double gamma = 0.0;
  /// Sum of per-round modeled costs from the quantum ledger.
  double modeled_quantum_cost = 0.0;
  /// n * sqrt(2^{n + 2k}), constant 1.
  double closed_form_cost = 0.0;
  /// 2^n.
  double classical_cost = 0.0;
  /// classical_cost / closed_form_cost.
  double ratio = 0.0;
  /// classical_cost / modeled_quantum_cost (0 when nothing was charged).
  double modeled_ratio = 0.0;
  std::uint64_t quantum_iterations = 0;
  std::uint64_t classical_evals = 0;
  /// 2k < n.
  bool speedup = false;
};

SpeedupReport speedup_report(std::size_t n_params, std::size_t n_points, std::size_t degree,
                             double gamma, const QueryLedger& quantum,
                             const QueryLedger& classical);

}  // namespace fqc
