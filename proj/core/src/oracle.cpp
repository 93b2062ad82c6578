#include "fqc/oracle.hpp"

#include <cmath>
#include <string>

#include "fqc/errors.hpp"

namespace fqc {

namespace {

void check_labels(std::span<const DataPoint> data) {
  for (const auto& p : data) {
    if (p.label != 0 && p.label != 1) {
      throw ContractViolation("label must be 0 or 1, got " + std::to_string(p.label));
    }
  }
}

// Real statevector kernels over an arbitrary qubit count.

void apply_hadamard(std::vector<double>& psi, std::size_t q) {
  const std::size_t mask = std::size_t{1} << q;
  const double h = 1.0 / std::sqrt(2.0);
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & mask) continue;
    const double a = psi[i];
    const double b = psi[i | mask];
    psi[i] = h * (a + b);
    psi[i | mask] = h * (a - b);
  }
}

void apply_ry(std::vector<double>& psi, std::size_t q, const Rotation& r) {
  const std::size_t mask = std::size_t{1} << q;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & mask) continue;
    const double a = psi[i];
    const double b = psi[i | mask];
    psi[i] = r.c * a - r.s * b;
    psi[i | mask] = r.s * a + r.c * b;
  }
}

// Rotation on `q` selected by the state of `control`: r0 when it is |0>, r1 when |1>.
void apply_selected_ry(std::vector<double>& psi, std::size_t q, std::size_t control,
                       const Rotation& r0, const Rotation& r1) {
  const std::size_t mask = std::size_t{1} << q;
  const std::size_t cmask = std::size_t{1} << control;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if (i & mask) continue;
    const Rotation& r = (i & cmask) ? r1 : r0;
    const double a = psi[i];
    const double b = psi[i | mask];
    psi[i] = r.c * a - r.s * b;
    psi[i | mask] = r.s * a + r.c * b;
  }
}

void apply_cnot(std::vector<double>& psi, std::size_t control, std::size_t target) {
  const std::size_t cmask = std::size_t{1} << control;
  const std::size_t tmask = std::size_t{1} << target;
  for (std::size_t i = 0; i < psi.size(); ++i) {
    if ((i & cmask) && !(i & tmask)) std::swap(psi[i], psi[i | tmask]);
  }
}

}  // namespace

std::size_t AmplitudeVector::n_params() const noexcept {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < amps.size()) ++n;
  return n;
}

double AmplitudeVector::total_weight() const noexcept {
  double acc = 0.0;
  for (double a : amps) acc += a * a;
  return acc;
}

AmplitudeVector amplitude_vector(const CircuitSpec& spec, std::span<const DataPoint> data,
                                 bool include_norm_factor, const SimulationLimits& limits) {
  const std::size_t n = spec.n_params;
  if (n >= 63 || (std::size_t{1} << n) > limits.max_amplitudes) {
    throw ResourceError("2^" + std::to_string(n) + " amplitudes exceed the cap of " +
                        std::to_string(limits.max_amplitudes));
  }
  check_labels(data);

  std::vector<CompiledPoint> compiled;
  compiled.reserve(data.size());
  for (const auto& p : data) compiled.emplace_back(spec, p.features);

  AmplitudeVector out;
  out.norm_factor_included = include_norm_factor;
  out.program.reserve(data.size());
  for (const auto& p : data) out.program.push_back(p.label);

  const std::size_t size = std::size_t{1} << n;
  out.amps.assign(size, 1.0);
  for (std::size_t j = 0; j < size; ++j) {
    double prod = 1.0;
    for (std::size_t i = 0; i < compiled.size(); ++i) {
      const StateVec4 s = compiled[i].run_index(j);
      prod *= data[i].label == 0 ? s[kBasis00] : s[kBasis10];
    }
    out.amps[j] = prod;
  }
  if (include_norm_factor) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(size));
    for (double& a : out.amps) a *= scale;
  }
  return out;
}

JointState joint_state(const CircuitSpec& spec, std::span<const DataPoint> data,
                       const SimulationLimits& limits) {
  const std::size_t n = spec.n_params;
  const std::size_t k = data.size();
  const std::size_t qubits = n + 2 * k;
  if (qubits > limits.max_joint_qubits || qubits >= 63) {
    throw ResourceError("joint register of " + std::to_string(qubits) +
                        " qubits exceeds the cap of " + std::to_string(limits.max_joint_qubits));
  }
  check_labels(data);
  for (const auto& p : data) {
    if (p.features.size() != spec.data_dim) {
      throw ContractViolation("feature count does not match data_dim");
    }
  }

  JointState js;
  js.n_params = n;
  js.n_points = k;
  js.amps.assign(std::size_t{1} << qubits, 0.0);
  js.amps[0] = 1.0;

  for (std::size_t j = 0; j < n; ++j) apply_hadamard(js.amps, j);

  const Rotation r0 = Rotation::from_angle(spec.angle_zero);
  const Rotation r1 = Rotation::from_angle(spec.angle_one);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t class_qubit = n + 2 * i;
    const std::size_t ancilla = class_qubit + 1;
    for (std::size_t layer = 0; layer < n; ++layer) {
      const double x = data[i].features[layer % spec.data_dim];
      apply_ry(js.amps, class_qubit, Rotation::from_angle(spec.encoding_scale * x));
      apply_selected_ry(js.amps, class_qubit, layer, r0, r1);
      if (spec.entangler) apply_cnot(js.amps, class_qubit, ancilla);
    }
  }
  return js;
}

AmplitudeVector slice_program(const JointState& state, std::span<const int> labels) {
  if (labels.size() != state.n_points) {
    throw ContractViolation("program length " + std::to_string(labels.size()) +
                            " does not match " + std::to_string(state.n_points) + " points");
  }
  std::uint64_t program_bits = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] != 0 && labels[i] != 1) throw ContractViolation("labels must be 0 or 1");
    program_bits |= static_cast<std::uint64_t>(labels[i]) << (2 * i);
  }
  AmplitudeVector out;
  out.program.assign(labels.begin(), labels.end());
  out.norm_factor_included = true;
  const std::size_t size = std::size_t{1} << state.n_params;
  out.amps.resize(size);
  for (std::size_t j = 0; j < size; ++j) out.amps[j] = state.at(program_bits, j);
  return out;
}

}  // namespace fqc
