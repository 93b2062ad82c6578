#include "fqc/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>

#include "fqc/errors.hpp"
#include "fqc/random.hpp"

namespace fqc {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

double parse_double(std::string_view cell, std::size_t line) {
  double value = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  if (!cell.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (cell.empty() || ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError("line " + std::to_string(line) + ": not a number: '" + std::string(cell) + "'",
                     line);
  }
  return value;
}

int parse_label(std::string_view cell, std::size_t line) {
  long value = 0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("line " + std::to_string(line) + ": label is not an integer: '" +
                         std::string(cell) + "'",
                     line);
  }
  if (value != 0 && value != 1) {
    throw SchemaError("line " + std::to_string(line) + ": label must be 0 or 1, got " +
                      std::to_string(value));
  }
  return static_cast<int>(value);
}

}  // namespace

std::size_t Dataset::count_label(int label) const noexcept {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [&](const DataPoint& p) { return p.label == label; }));
}

std::vector<int> Dataset::labels() const {
  std::vector<int> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(p.label);
  return out;
}

Dataset gen_threshold_1d(std::size_t k, double cutoff, std::uint64_t seed) {
  if (k == 0) throw ContractViolation("k must be at least 1");
  if (!(cutoff > -1.0 && cutoff < 1.0)) throw ContractViolation("cutoff must lie in (-1, 1)");
  Rng rng(seed);
  Dataset d;
  d.name = "threshold1d";
  d.dim = 1;
  d.points.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    d.points.push_back(DataPoint{{x}, x > cutoff ? 1 : 0});
  }
  return d;
}

Dataset gen_circle_2d(std::size_t k, double radius, std::uint64_t seed) {
  if (k == 0) throw ContractViolation("k must be at least 1");
  if (!(radius > 0.0 && radius < std::sqrt(2.0))) {
    throw ContractViolation("radius must lie in (0, sqrt(2))");
  }
  Rng rng(seed);
  Dataset d;
  d.name = "circle2d";
  d.dim = 2;
  d.points.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    const double x = rng.uniform(-1.0, 1.0);
    const double y = rng.uniform(-1.0, 1.0);
    d.points.push_back(DataPoint{{x, y}, x * x + y * y < radius * radius ? 1 : 0});
  }
  return d;
}

Dataset parse_csv(std::istream& in, const CsvOptions& options, std::string name) {
  Dataset d;
  d.name = std::move(name);
  std::string raw;
  std::size_t line_no = 0;
  bool header_pending = options.has_header;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (header_pending) {
      header_pending = false;
      continue;
    }
    const auto cells = split_commas(line);
    if (cells.size() < 2) {
      throw SchemaError("line " + std::to_string(line_no) +
                        ": expected at least one feature and a label");
    }
    const std::size_t dim = cells.size() - 1;
    if (d.points.empty()) {
      d.dim = dim;
    } else if (dim != d.dim) {
      throw SchemaError("line " + std::to_string(line_no) + ": expected " + std::to_string(d.dim) +
                        " features, found " + std::to_string(dim));
    }
    DataPoint p;
    p.features.reserve(dim);
    for (std::size_t c = 0; c < dim; ++c) p.features.push_back(parse_double(cells[c], line_no));
    p.label = parse_label(cells.back(), line_no);
    d.points.push_back(std::move(p));
    row_lines.push_back(line_no);
  }
  if (d.points.empty()) throw SchemaError("dataset is empty");

  if (options.rescale) {
    for (std::size_t c = 0; c < d.dim; ++c) {
      double peak = 0.0;
      for (const auto& p : d.points) peak = std::max(peak, std::abs(p.features[c]));
      if (peak > 1.0) {
        for (auto& p : d.points) p.features[c] /= peak;
      }
    }
  } else {
    for (std::size_t r = 0; r < d.points.size(); ++r) {
      for (double v : d.points[r].features) {
        if (v < -1.0 || v > 1.0) {
          throw SchemaError("line " + std::to_string(row_lines[r]) + ": feature " +
                            format_double(v) + " outside [-1, 1] (set rescale to accept)");
        }
      }
    }
  }
  return d;
}

Dataset load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_csv(in, options, path.filename().string());
}

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(std::ostream& out, const Dataset& data, bool header) {
  if (header) {
    for (std::size_t c = 0; c < data.dim; ++c) out << 'f' << (c + 1) << ',';
    out << "label\n";
  }
  for (const auto& p : data.points) {
    for (double v : p.features) out << format_double(v) << ',';
    out << p.label << '\n';
  }
}

void save_csv(const std::filesystem::path& path, const Dataset& data, bool header) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_csv(out, data, header);
}

}  // namespace fqc
