#include "fqc/datasets.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "fqc/errors.hpp"

using namespace fqc;

namespace {

Dataset parse(const std::string& text, CsvOptions opts = {}) {
  std::istringstream in(text);
  return parse_csv(in, opts);
}

bool bit_equal(const Dataset& a, const Dataset& b) {
  if (a.dim != b.dim || a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.points[i].label != b.points[i].label) return false;
    if (a.points[i].features.size() != b.points[i].features.size()) return false;
    if (std::memcmp(a.points[i].features.data(), b.points[i].features.data(),
                    a.points[i].features.size() * sizeof(double)) != 0) {
      return false;
    }
  }
  return true;
}

std::filesystem::path temp_file(const std::string& stem) {
  return std::filesystem::temp_directory_path() /
         (stem + "_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "_" +
          ::testing::UnitTest::GetInstance()->current_test_info()->name() + ".csv");
}

}  // namespace

// ---------- generators ----------

TEST(GenThreshold, SignRule) {
  const Dataset d = gen_threshold_1d(4, 0.0, 7);
  ASSERT_EQ(d.size(), 4U);
  EXPECT_EQ(d.dim, 1U);
  for (const auto& p : d.points) {
    ASSERT_EQ(p.features.size(), 1U);
    EXPECT_GE(p.features[0], -1.0);
    EXPECT_LE(p.features[0], 1.0);
    EXPECT_EQ(p.label, p.features[0] > 0.0 ? 1 : 0);
  }
}

TEST(GenThreshold, HighCutoffIsImbalanced) {
  const Dataset d = gen_threshold_1d(2000, 0.999, 3);
  EXPECT_LT(d.count_label(1), 20U);
  EXPECT_GT(d.count_label(0), 1980U);
}

TEST(GenThreshold, Deterministic) {
  EXPECT_TRUE(bit_equal(gen_threshold_1d(16, 0.2, 42), gen_threshold_1d(16, 0.2, 42)));
  EXPECT_FALSE(bit_equal(gen_threshold_1d(16, 0.2, 42), gen_threshold_1d(16, 0.2, 43)));
}

TEST(GenThreshold, RejectsBadArguments) {
  EXPECT_THROW(gen_threshold_1d(0, 0.0, 1), ContractViolation);
  EXPECT_THROW(gen_threshold_1d(4, 1.0, 1), ContractViolation);
}

TEST(GenCircle, RadiusRule) {
  const double r = 0.6;
  const Dataset d = gen_circle_2d(500, r, 11);
  EXPECT_EQ(d.dim, 2U);
  for (const auto& p : d.points) {
    const double rr = p.features[0] * p.features[0] + p.features[1] * p.features[1];
    EXPECT_EQ(p.label, rr < r * r ? 1 : 0);
    EXPECT_LE(std::abs(p.features[0]), 1.0);
    EXPECT_LE(std::abs(p.features[1]), 1.0);
  }
}

// Area ratio pi r^2 / 4 = 1/2 at r = sqrt(2/pi); binomial 3-sigma band.
TEST(GenCircle, HalfAreaRadiusIsBalanced) {
  const std::size_t k = 20000;
  const Dataset d = gen_circle_2d(k, std::sqrt(2.0 / std::numbers::pi), 5);
  const double frac = static_cast<double>(d.count_label(1)) / static_cast<double>(k);
  EXPECT_NEAR(frac, 0.5, 3.0 * std::sqrt(0.25 / static_cast<double>(k)));
}

TEST(GenCircle, Deterministic) {
  EXPECT_TRUE(bit_equal(gen_circle_2d(8, 0.5, 9), gen_circle_2d(8, 0.5, 9)));
  EXPECT_FALSE(bit_equal(gen_circle_2d(8, 0.5, 9), gen_circle_2d(8, 0.5, 10)));
}

TEST(GenCircle, RejectsBadRadius) {
  EXPECT_THROW(gen_circle_2d(4, 0.0, 1), ContractViolation);
  EXPECT_THROW(gen_circle_2d(4, std::sqrt(2.0), 1), ContractViolation);
}

// ---------- CSV ----------

TEST(Csv, ParsesExample) {
  const Dataset d = parse("0.5,-0.25,1\n-0.1,0.9,0\n");
  ASSERT_EQ(d.size(), 2U);
  EXPECT_EQ(d.dim, 2U);
  EXPECT_EQ(d.labels(), (std::vector<int>{1, 0}));
  EXPECT_EQ(d.points[0].features, (std::vector<double>{0.5, -0.25}));
  EXPECT_EQ(d.points[1].features, (std::vector<double>{-0.1, 0.9}));
}

TEST(Csv, ToleratesCrlfAndBlankLines) {
  const Dataset d = parse("0.5,1\r\n\r\n-0.5,0\r\n");
  EXPECT_EQ(d.size(), 2U);
}

TEST(Csv, EmptyInputIsSchemaError) {
  EXPECT_THROW(parse(""), SchemaError);
  EXPECT_THROW(parse("f1,label\n", {.has_header = true}), SchemaError);
}

TEST(Csv, BadNumberNamesLine) {
  try {
    parse("0.5,abc,1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1U);
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  try {
    parse("f1,label\n0.1,0\n0.2,x\n", {.has_header = true});
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
  }
}

TEST(Csv, SchemaViolations) {
  EXPECT_THROW(parse("0.5,-0.25,1\n0.1,0\n"), SchemaError);
  EXPECT_THROW(parse("0.5,2\n"), SchemaError);
  EXPECT_THROW(parse("1.5,0\n"), SchemaError);
  EXPECT_THROW(parse("1\n"), SchemaError);
}

TEST(Csv, RescaleDividesByColumnMax) {
  const Dataset d = parse("2.0,0.5,1\n-4.0,0.25,0\n", {.rescale = true});
  EXPECT_EQ(d.points[0].features, (std::vector<double>{0.5, 0.5}));
  EXPECT_EQ(d.points[1].features, (std::vector<double>{-1.0, 0.25}));
}

TEST(Csv, HeaderWritten) {
  Dataset d;
  d.dim = 2;
  d.points = {{{0.5, -0.25}, 1}};
  std::ostringstream out;
  write_csv(out, d, true);
  EXPECT_EQ(out.str(), "f1,f2,label\n0.5,-0.25,1\n");
}

TEST(Csv, FileRoundTripIsBitIdentical) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    Dataset d;
    d.dim = 1 + trial % 3;
    d.points.resize(1 + trial);
    for (auto& p : d.points) {
      for (std::size_t j = 0; j < d.dim; ++j) p.features.push_back(u(rng));
      p.label = static_cast<int>(rng() & 1U);
    }
    if (trial == 0) d.points[0].features[0] = std::nextafter(1.0, 0.0);
    if (trial == 1) d.points[0].features[0] = 4.9e-324;
    const bool header = trial % 2 == 0;
    const auto path = temp_file("fqc_roundtrip");
    save_csv(path, d, header);
    const Dataset back = load_csv(path, {.has_header = header});
    std::filesystem::remove(path);
    EXPECT_TRUE(bit_equal(d, back)) << "trial " << trial;
  }
}

TEST(Csv, MissingFileIsError) {
  EXPECT_THROW(load_csv("/nonexistent/fqc/data.csv"), std::runtime_error);
}

TEST(Csv, FormatDouble) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(-1.0), "-1");
}
