#include "fqc/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fqc/errors.hpp"
#include "fqc/random.hpp"

namespace fqc {

namespace {

void check_training_data(const CircuitSpec& spec, std::span<const DataPoint> data) {
  if (data.empty()) throw ContractViolation("training data is empty");
  for (const auto& p : data) {
    if (p.label != 0 && p.label != 1) {
      throw ContractViolation("label must be 0 or 1, got " + std::to_string(p.label));
    }
    if (p.features.size() != spec.data_dim) {
      throw ContractViolation("feature count does not match data_dim");
    }
  }
}

}  // namespace

double QuantumConfig::softness(double theta) const noexcept {
  double w = std::max(softness_min, softness_rel * theta);
  // Keep a non-empty pass band below 1.
  if (theta < 1.0) w = std::min(w, 0.5 * (1.0 - theta));
  return w;
}

std::uint64_t QuantumConfig::budget(std::size_t n_params) const noexcept {
  return static_cast<std::uint64_t>(std::ceil(budget_factor * static_cast<double>(n_params)));
}

TrainResult train_quantum(const CircuitSpec& spec, std::span<const DataPoint> data,
                          const QuantumConfig& config) {
  check_training_data(spec, data);
  const std::size_t n = spec.n_params;
  const AmplitudeVector av = amplitude_vector(spec, data, config.normalize_amplitudes, config.limits);
  const std::size_t total_qubits = n + 2 * data.size();

  TrainResult result;
  const double total = av.total_weight();
  if (!(total > 0.0)) {
    result.degenerate = true;
    result.best_params = ParamConfig::from_index(0, n);
    result.best_objective = objective(spec, result.best_params, data);
    return result;
  }

  Rng rng(config.seed);
  std::vector<double> weights(av.amps.size());
  for (std::size_t j = 0; j < av.amps.size(); ++j) weights[j] = av.amps[j] * av.amps[j];

  std::uint64_t reference = rng.categorical(weights, total);
  result.initial_reference = reference;
  result.ledger.classical_amp_evals += 1;

  const std::uint64_t budget = config.budget(n);
  while (result.ledger.iterations < budget) {
    TraceRecord rec;
    rec.iteration = result.ledger.iterations;
    rec.reference = reference;
    rec.reference_magnitude = std::abs(av.amps[reference]);
    rec.total_qubits = total_qubits;

    const double theta = std::min(rec.reference_magnitude, 1.0);
    rec.softness = config.softness(theta);
    const SuppressionPolynomial q =
        build_suppressor(theta, config.degree, rec.softness, config.suppressor);
    const TransformResult tr = apply_transform(av, q, config.eps_s);

    rec.gamma = q.gamma;
    rec.success_weight = tr.success_weight;
    rec.charged_weight = std::max(tr.success_weight, tr.floor);
    if (q.gamma > 0.0 && rec.charged_weight > 0.0) {
      rec.query_cost = query_cost(q.degree, q.gamma, total_qubits, rec.charged_weight).per_iteration;
    }
    result.ledger.oracle_calls_modeled += rec.query_cost;
    result.ledger.iterations += 1;

    if (tr.converged) {
      rec.converged = true;
      result.converged = true;
      result.trace.push_back(rec);
      break;
    }

    double dist_total = 0.0;
    for (double p : tr.resample_distribution) dist_total += p;
    const std::uint64_t candidate = rng.categorical(tr.resample_distribution, dist_total);
    result.ledger.classical_amp_evals += 1;
    rec.successor = candidate;
    if (std::abs(av.amps[candidate]) > rec.reference_magnitude) {
      rec.accepted = true;
      reference = candidate;
    }
    result.trace.push_back(rec);
  }

  result.best_params = ParamConfig::from_index(reference, n);
  result.best_objective = objective(spec, result.best_params, data);
  return result;
}

TrainResult brute_force(const CircuitSpec& spec, std::span<const DataPoint> data,
                        const SimulationLimits& limits) {
  const std::size_t n = spec.n_params;
  if (n >= 63 || (std::size_t{1} << n) > limits.max_amplitudes) {
    throw ResourceError("2^" + std::to_string(n) + " configurations exceed the cap of " +
                        std::to_string(limits.max_amplitudes));
  }
  for (const auto& p : data) {
    if (p.label != 0 && p.label != 1) {
      throw ContractViolation("label must be 0 or 1, got " + std::to_string(p.label));
    }
  }
  std::vector<CompiledPoint> compiled;
  compiled.reserve(data.size());
  for (const auto& p : data) compiled.emplace_back(spec, p.features);

  TrainResult result;
  const std::uint64_t size = std::uint64_t{1} << n;
  std::uint64_t best = 0;
  ObjectiveValue best_value{-1.0, -std::numeric_limits<double>::infinity()};
  for (std::uint64_t j = 0; j < size; ++j) {
    ObjectiveValue v;
    for (std::size_t i = 0; i < compiled.size(); ++i) {
      const StateVec4 s = compiled[i].run_index(j);
      const double a = data[i].label == 0 ? s[kBasis00] : s[kBasis10];
      const double p = a * a;
      v.value *= p;
      v.log_value += p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
    }
    const bool better = v.value > best_value.value ||
                        (v.value == 0.0 && best_value.value == 0.0 && v.log_value > best_value.log_value);
    if (better) {
      best = j;
      best_value = v;
    }
  }
  result.ledger.brute_force_evals = size;
  result.best_params = ParamConfig::from_index(best, n);
  result.best_objective = objective(spec, result.best_params, data);
  result.degenerate = !(best_value.value > 0.0) && std::isinf(best_value.log_value);
  return result;
}

SpeedupReport speedup_report(std::size_t n_params, std::size_t n_points, std::size_t degree,
                             double gamma, const QueryLedger& quantum,
                             const QueryLedger& classical) {
  SpeedupReport r;
  r.n_params = n_params;
  r.n_points = n_points;
  r.degree = degree;
  r.gamma = gamma;
  r.modeled_quantum_cost = quantum.oracle_calls_modeled;
  r.closed_form_cost = static_cast<double>(n_params) *
                       std::sqrt(std::ldexp(1.0, static_cast<int>(n_params + 2 * n_points)));
  r.classical_cost = std::ldexp(1.0, static_cast<int>(n_params));
  r.ratio = r.classical_cost / r.closed_form_cost;
  r.modeled_ratio = r.modeled_quantum_cost > 0.0 ? r.classical_cost / r.modeled_quantum_cost : 0.0;
  r.quantum_iterations = quantum.iterations;
  r.classical_evals = classical.brute_force_evals;
  r.speedup = 2 * n_points < n_params;
  return r;
}

}  // namespace fqc
