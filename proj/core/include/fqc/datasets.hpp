#pragma once

// Synthetic two-class datasets and the CSV interchange format:
// comma-separated rows "f_1,...,f_D,label", optional single header line,
// decimal floats, newline-delimited.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "fqc/circuit.hpp"

namespace fqc {

struct Dataset {
  std::string name;
  std::size_t dim = 0;
  std::vector<DataPoint> points;

  std::size_t size() const noexcept { return points.size(); }
  std::size_t count_label(int label) const noexcept;
  std::vector<int> labels() const;
};

/// k points uniform on [-1, 1]; label 1 iff the feature exceeds `cutoff`.
Dataset gen_threshold_1d(std::size_t k, double cutoff, std::uint64_t seed);

/// k points uniform on [-1, 1]^2; label 1 iff strictly inside the
/// origin-centred circle of `radius`.
Dataset gen_circle_2d(std::size_t k, double radius, std::uint64_t seed);

struct CsvOptions {
  bool has_header = false;
  /// Divide each feature column by its largest magnitude when that exceeds 1,
  /// instead of rejecting out-of-range features.
  bool rescale = false;
};

/// Throws ParseError (with 1-based line) for malformed numbers and SchemaError
/// for empty input, inconsistent dimension, labels outside {0,1} or features
/// outside [-1, 1].
Dataset parse_csv(std::istream& in, const CsvOptions& options = {}, std::string name = "csv");
Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

/// 17 significant digits, so parse_csv reproduces every double exactly.
void write_csv(std::ostream& out, const Dataset& data, bool header = false);
void save_csv(const std::filesystem::path& path, const Dataset& data, bool header = false);

/// 17 significant digits ("%.17g"); round-trips exactly.
std::string format_double(double value);

}  // namespace fqc
