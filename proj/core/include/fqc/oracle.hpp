#pragma once

// Simulation of the state-preparation oracle: the fixed-program amplitude
// vector over all 2^n parameter configurations (factorized path), and the
// full program+training register statevector used to certify it.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "fqc/circuit.hpp"

namespace fqc {

struct SimulationLimits {
  /// Largest 2^n_params accepted by the factorized path.
  std::size_t max_amplitudes = std::size_t{1} << 22;
  /// Largest 2k + n accepted by the joint-register path.
  std::size_t max_joint_qubits = 22;
};

struct AmplitudeVector {
  /// Fixed program: the label of each training point.
  std::vector<int> program;
  /// Signed amplitudes indexed by ParamConfig::index().
  std::vector<double> amps;
  /// True when the 1/sqrt(2^n) joint-register factor is applied.
  bool norm_factor_included = false;

  std::size_t n_params() const noexcept;
  /// Sum of squared amplitudes.
  double total_weight() const noexcept;
};

/// amps[j] = prod_i point_amplitude(spec, config(j), data[i]), optionally
/// times 2^{-n/2}. Throws ResourceError when 2^n exceeds the cap.
AmplitudeVector amplitude_vector(const CircuitSpec& spec, std::span<const DataPoint> data,
                                 bool include_norm_factor, const SimulationLimits& limits = {});

/// Statevector of the joint register on 2k + n qubits.
///
/// Index layout: bits [0, n) hold the training register (bit j = parameter j);
/// bit n + 2i is the class qubit of point i and bit n + 2i + 1 its second
/// ("ancilla zero") qubit.
struct JointState {
  std::size_t n_params = 0;
  std::size_t n_points = 0;
  std::vector<double> amps;

  std::size_t qubits() const noexcept { return n_params + 2 * n_points; }
  /// Program-register bits use the layout above shifted down by n_params.
  double at(std::uint64_t program_bits, std::uint64_t config) const {
    return amps.at((program_bits << n_params) | config);
  }
};

/// Gate-level simulation: Hadamards on the training register, then for every
/// point and layer a data rotation, a trainable rotation controlled by the
/// layer's training qubit, and the CNOT entangler when enabled.
JointState joint_state(const CircuitSpec& spec, std::span<const DataPoint> data,
                       const SimulationLimits& limits = {});

/// Sub-vector at program bits (y_i, 0) for every point. The result carries the
/// 2^{-n/2} factor.
AmplitudeVector slice_program(const JointState& state, std::span<const int> labels);

}  // namespace fqc
