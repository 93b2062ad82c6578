#pragma once

// Two-qubit real-orthogonal data re-uploading classifier.
//
// Basis order of a two-qubit state is (q0 q1) with q0 the class qubit:
//   index 0 = |00>, 1 = |01>, 2 = |10>, 3 = |11>.
// Every gate is a Y-rotation or a CNOT, so amplitudes are real by construction.

#include <array>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fqc {

struct CircuitSpec {
  std::size_t n_params = 8;
  std::size_t data_dim = 1;
  /// Radians per unit feature.
  double encoding_scale = std::numbers::pi;
  /// Trainable rotation angle selected by bit value 0 and 1.
  double angle_zero = -std::numbers::pi / 4;
  double angle_one = std::numbers::pi / 4;
  bool entangler = true;

  double angle(bool bit) const noexcept { return bit ? angle_one : angle_zero; }

  /// Throws ContractViolation when n_params or data_dim is zero, n_params is
  /// above 63, or both angles coincide.
  void validate() const;
};

/// Binary trainable parameters. Bit j is the coefficient of 2^j in `index()`,
/// and bit j drives layer j+1. The text form lists bit 0 first.
class ParamConfig {
 public:
  ParamConfig() = default;
  explicit ParamConfig(std::vector<std::uint8_t> bits);

  static ParamConfig from_index(std::uint64_t index, std::size_t n_params);
  /// Parses a string of '0'/'1' characters, bit 0 first.
  static ParamConfig parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool bit(std::size_t j) const { return bits_.at(j) != 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::uint64_t index() const noexcept;
  std::string to_string() const;

  friend bool operator==(const ParamConfig&, const ParamConfig&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

struct DataPoint {
  std::vector<double> features;
  int label = 0;
};

struct StateVec4 {
  std::array<double, 4> amps{1.0, 0.0, 0.0, 0.0};

  double operator[](std::size_t i) const { return amps[i]; }
  double norm_squared() const noexcept;
};

inline constexpr std::size_t kBasis00 = 0;
inline constexpr std::size_t kBasis10 = 2;

struct ObjectiveValue {
  /// Product of the per-point probabilities of the correct class.
  double value = 1.0;
  /// Sum of per-point log-probabilities; -infinity when any factor is zero.
  double log_value = 0.0;
};

using Matrix4 = std::array<std::array<double, 4>, 4>;

/// cos/sin of half a rotation angle.
struct Rotation {
  double c = 1.0;
  double s = 0.0;

  static Rotation from_angle(double angle) noexcept;
};

/// Per-point gate schedule with all trigonometry evaluated once. Running it for
/// any ParamConfig costs O(n_params).
class CompiledPoint {
 public:
  CompiledPoint(const CircuitSpec& spec, std::span<const double> features);

  StateVec4 run(std::span<const std::uint8_t> bits) const noexcept;
  StateVec4 run_index(std::uint64_t index) const noexcept;

 private:
  std::vector<Rotation> data_;
  Rotation trainable_[2];
  bool entangler_;
};

StateVec4 run_elementary(const CircuitSpec& spec, const ParamConfig& params,
                         std::span<const double> features);

/// <y 0| U(params, x) |00>: the amplitude of |00> for label 0, of |10> for label 1.
double point_amplitude(const CircuitSpec& spec, const ParamConfig& params,
                       const DataPoint& point);

ObjectiveValue objective(const CircuitSpec& spec, const ParamConfig& params,
                         std::span<const DataPoint> data);

/// Probability of measuring |10>.
double class_one_probability(const CircuitSpec& spec, const ParamConfig& params,
                             std::span<const double> features);

/// Class 1 iff p(|10>) is strictly greater than `threshold`.
int classify(const CircuitSpec& spec, const ParamConfig& params,
             std::span<const double> features, double threshold);

/// The 4x4 orthogonal matrix of one layer (data rotation, trainable rotation,
/// optional CNOT) in the basis order above.
Matrix4 layer_matrix(const CircuitSpec& spec, bool bit, double feature);

}  // namespace fqc
