#include "fqc/circuit.hpp"

#include <cmath>
#include <limits>

#include "fqc/errors.hpp"

namespace fqc {

namespace {

// RY on q0 mixes the pairs (|00>,|10>) and (|01>,|11>).
inline void apply_ry_q0(std::array<double, 4>& a, const Rotation& r) noexcept {
  for (std::size_t q1 = 0; q1 < 2; ++q1) {
    const double lo = a[q1];
    const double hi = a[2 + q1];
    a[q1] = r.c * lo - r.s * hi;
    a[2 + q1] = r.s * lo + r.c * hi;
  }
}

// CNOT, control q0, target q1: |10> <-> |11>.
inline void apply_cnot(std::array<double, 4>& a) noexcept { std::swap(a[2], a[3]); }

void check_features(const CircuitSpec& spec, std::span<const double> features) {
  if (features.size() != spec.data_dim) {
    throw ContractViolation("feature count " + std::to_string(features.size()) +
                            " does not match data_dim " + std::to_string(spec.data_dim));
  }
}

void check_params(const CircuitSpec& spec, const ParamConfig& params) {
  if (params.size() != spec.n_params) {
    throw ContractViolation("parameter count " + std::to_string(params.size()) +
                            " does not match n_params " + std::to_string(spec.n_params));
  }
}

}  // namespace

void CircuitSpec::validate() const {
  if (n_params == 0) throw ContractViolation("n_params must be at least 1");
  if (n_params > 63) throw ContractViolation("n_params must be at most 63");
  if (data_dim == 0) throw ContractViolation("data_dim must be at least 1");
  if (angle_zero == angle_one) throw ContractViolation("angle map must distinguish bit 0 from bit 1");
  if (!std::isfinite(encoding_scale) || !std::isfinite(angle_zero) || !std::isfinite(angle_one)) {
    throw ContractViolation("circuit angles must be finite");
  }
}

ParamConfig::ParamConfig(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto b : bits_) {
    if (b > 1) throw ContractViolation("parameter bits must be 0 or 1");
  }
}

ParamConfig ParamConfig::from_index(std::uint64_t index, std::size_t n_params) {
  if (n_params > 63) throw ContractViolation("n_params must be at most 63");
  if (n_params < 64 && (index >> n_params) != 0) {
    throw ContractViolation("index " + std::to_string(index) + " out of range for " +
                            std::to_string(n_params) + " parameters");
  }
  std::vector<std::uint8_t> bits(n_params);
  for (std::size_t j = 0; j < n_params; ++j) bits[j] = static_cast<std::uint8_t>((index >> j) & 1U);
  return ParamConfig(std::move(bits));
}

ParamConfig ParamConfig::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1') {
      throw ContractViolation("parameter string may only contain '0' and '1': " + std::string(text));
    }
    bits.push_back(static_cast<std::uint8_t>(ch - '0'));
  }
  return ParamConfig(std::move(bits));
}

std::uint64_t ParamConfig::index() const noexcept {
  std::uint64_t idx = 0;
  for (std::size_t j = 0; j < bits_.size() && j < 64; ++j) {
    idx |= static_cast<std::uint64_t>(bits_[j]) << j;
  }
  return idx;
}

std::string ParamConfig::to_string() const {
  std::string out;
  out.reserve(bits_.size());
  for (auto b : bits_) out.push_back(b ? '1' : '0');
  return out;
}

double StateVec4::norm_squared() const noexcept {
  double acc = 0.0;
  for (double a : amps) acc += a * a;
  return acc;
}

Rotation Rotation::from_angle(double angle) noexcept {
  return Rotation{std::cos(angle / 2.0), std::sin(angle / 2.0)};
}

CompiledPoint::CompiledPoint(const CircuitSpec& spec, std::span<const double> features)
    : trainable_{Rotation::from_angle(spec.angle_zero), Rotation::from_angle(spec.angle_one)},
      entangler_(spec.entangler) {
  check_features(spec, features);
  data_.reserve(spec.n_params);
  for (std::size_t layer = 0; layer < spec.n_params; ++layer) {
    data_.push_back(Rotation::from_angle(spec.encoding_scale * features[layer % spec.data_dim]));
  }
}

StateVec4 CompiledPoint::run(std::span<const std::uint8_t> bits) const noexcept {
  StateVec4 state;
  for (std::size_t layer = 0; layer < data_.size(); ++layer) {
    apply_ry_q0(state.amps, data_[layer]);
    apply_ry_q0(state.amps, trainable_[bits[layer] ? 1 : 0]);
    if (entangler_) apply_cnot(state.amps);
  }
  return state;
}

StateVec4 CompiledPoint::run_index(std::uint64_t index) const noexcept {
  StateVec4 state;
  for (std::size_t layer = 0; layer < data_.size(); ++layer) {
    apply_ry_q0(state.amps, data_[layer]);
    apply_ry_q0(state.amps, trainable_[(index >> layer) & 1U]);
    if (entangler_) apply_cnot(state.amps);
  }
  return state;
}

StateVec4 run_elementary(const CircuitSpec& spec, const ParamConfig& params,
                         std::span<const double> features) {
  check_params(spec, params);
  return CompiledPoint(spec, features).run(params.bits());
}

double point_amplitude(const CircuitSpec& spec, const ParamConfig& params, const DataPoint& point) {
  if (point.label != 0 && point.label != 1) {
    throw ContractViolation("label must be 0 or 1, got " + std::to_string(point.label));
  }
  const StateVec4 state = run_elementary(spec, params, point.features);
  return point.label == 0 ? state[kBasis00] : state[kBasis10];
}

ObjectiveValue objective(const CircuitSpec& spec, const ParamConfig& params,
                         std::span<const DataPoint> data) {
  ObjectiveValue out;
  for (const auto& point : data) {
    const double a = point_amplitude(spec, params, point);
    const double p = a * a;
    out.value *= p;
    out.log_value += p > 0.0 ? std::log(p) : -std::numeric_limits<double>::infinity();
  }
  return out;
}

double class_one_probability(const CircuitSpec& spec, const ParamConfig& params,
                             std::span<const double> features) {
  const double a = run_elementary(spec, params, features)[kBasis10];
  return a * a;
}

int classify(const CircuitSpec& spec, const ParamConfig& params, std::span<const double> features,
             double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ContractViolation("threshold must lie in [0, 1]");
  }
  return class_one_probability(spec, params, features) > threshold ? 1 : 0;
}

Matrix4 layer_matrix(const CircuitSpec& spec, bool bit, double feature) {
  const Rotation data = Rotation::from_angle(spec.encoding_scale * feature);
  const Rotation trainable = Rotation::from_angle(spec.angle(bit));
  Matrix4 m{};
  for (std::size_t col = 0; col < 4; ++col) {
    std::array<double, 4> e{};
    e[col] = 1.0;
    apply_ry_q0(e, data);
    apply_ry_q0(e, trainable);
    if (spec.entangler) apply_cnot(e);
    for (std::size_t row = 0; row < 4; ++row) m[row][col] = e[row];
  }
  return m;
}

}  // namespace fqc
