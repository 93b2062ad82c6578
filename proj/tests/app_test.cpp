#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "fqc/app/cli.hpp"
#include "fqc/app/commands.hpp"
#include "fqc/app/config.hpp"
#include "fqc/errors.hpp"

using namespace fqc;
using namespace fqc::app;
namespace fs = std::filesystem;

namespace {

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("fqc_app_" + std::to_string(::getpid()) + "_" +
             ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fqc");
  std::ostringstream out;
  std::ostringstream err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

RunConfig small_config(Engine engine, std::uint64_t seed = 1) {
  RunConfig c;
  c.circuit.n_params = 4;
  c.train.k = 4;
  c.engine = engine;
  c.seed = seed;
  return c;
}

// Rows of a CSV with a header line.
std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

// ---------- config ----------

TEST(Config, CanonicalDumpRoundTrips) {
  RunConfig c;
  c.circuit.encoding_scale = 0.1;
  c.quantum.eps_s = 3e-13;
  c.train.path = "some/file.csv";
  c.test_source = DataSource::kCircle2d;
  std::ostringstream first;
  write_config(first, c);
  std::istringstream in(first.str());
  const LoadedConfig back = parse_config(in);
  std::ostringstream second;
  write_config(second, back.config);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(back.config.circuit.encoding_scale, 0.1);
  EXPECT_FALSE(back.best_params.has_value());
}

TEST(Config, UnknownKeyAndBadValueNameTheField) {
  std::istringstream unknown("[circuit]\nn_param = 4\n");
  try {
    parse_config(unknown);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "circuit.n_param");
  }
  std::istringstream bad("[optimizer]\ndegree = forty\n");
  try {
    parse_config(bad);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "optimizer.degree");
  }
  std::istringstream section("[circuits]\nn_params = 4\n");
  EXPECT_THROW(parse_config(section), ConfigError);
  std::istringstream duplicate("[circuit]\nn_params = 4\nn_params = 5\n");
  EXPECT_THROW(parse_config(duplicate), ConfigError);
}

TEST(Config, DimensionMismatchIsFieldError) {
  RunConfig c;
  c.circuit.data_dim = 2;
  try {
    c.validate();
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "circuit.data_dim");
  }
}

TEST(Config, FileDimensionMismatchDetectedAfterLoading) {
  TempDir dir;
  std::ofstream(dir / "d.csv") << "0.1,0.2,1\n-0.3,0.4,0\n";
  RunConfig c;
  c.train.source = DataSource::kFile;
  c.train.path = (dir / "d.csv").string();
  try {
    run_train(c);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "circuit.data_dim");
  }
}

// ---------- threshold ----------

TEST(Threshold, ScanIncludesDegenerateThresholds) {
  // All points of class 1: threshold 0 classifies everything with p > 0 as 1.
  EXPECT_EQ(optimize_threshold(std::vector<double>{0.2, 0.4}, std::vector<int>{1, 1}), 0.0);
  // All of class 0: only threshold 1 gets every point right.
  EXPECT_EQ(optimize_threshold(std::vector<double>{0.2, 0.4}, std::vector<int>{0, 0}), 1.0);
  EXPECT_EQ(optimize_threshold(std::vector<double>{1.0, 1.0}, std::vector<int>{0, 0}), 1.0);
  EXPECT_EQ(optimize_threshold(std::vector<double>{0.1, 0.9, 0.5}, std::vector<int>{0, 1, 1}), 0.3);
}

// ---------- train ----------

TEST(Train, BruteRerunIsDeterministic) {
  const RunReport a = run_train(small_config(Engine::kBrute));
  const RunReport b = run_train(small_config(Engine::kBrute));
  EXPECT_EQ(a.result.best_objective.value, b.result.best_objective.value);
  EXPECT_EQ(a.result.best_params, b.result.best_params);
  EXPECT_EQ(a.result.ledger.brute_force_evals, 16U);
}

// Every amplitude of this instance is below 0.022, under the default softness
// floor of 0.02 above the reference; see README, Limitations.
TEST(Train, QuantumMatchesBruteForAnySeed) {
  const RunReport brute = run_train(small_config(Engine::kBrute));
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RunReport q = run_train(small_config(Engine::kQuantum, seed));
    EXPECT_NEAR(q.result.best_objective.value, brute.result.best_objective.value, 1e-10) << "seed " << seed;
  }
}

TEST(Train, AccuracyAtLeastMajorityFraction) {
  for (std::uint64_t data_seed = 1; data_seed <= 5; ++data_seed) {
    RunConfig c = small_config(Engine::kBrute);
    c.train.k = 7;
    c.train.seed = data_seed;
    const RunReport r = run_train(c);
    const Dataset d = load_dataset(c.train);
    const double majority =
        static_cast<double>(std::max(d.count_label(0), d.count_label(1))) / static_cast<double>(d.size());
    EXPECT_GE(r.train_eval.accuracy, majority);
  }
}

TEST(Train, ReportEmbedsConfigAndParams) {
  const RunReport r = run_train(small_config(Engine::kQuantum));
  std::ostringstream text;
  write_report(text, r);
  std::istringstream in(text.str());
  const LoadedConfig back = parse_config(in);
  ASSERT_TRUE(back.best_params.has_value());
  EXPECT_EQ(*back.best_params, r.result.best_params);
  ASSERT_TRUE(back.threshold.has_value());
  EXPECT_EQ(*back.threshold, r.train_eval.threshold);
  EXPECT_EQ(back.config.circuit.n_params, 4U);
}

// ---------- evaluate ----------

TEST(Evaluate, IdentityCircuitIsClassZero) {
  CircuitSpec spec;
  spec.n_params = 3;
  spec.encoding_scale = 0.0;
  spec.angle_zero = 0.0;
  spec.angle_one = 0.0;
  const Dataset d = gen_threshold_1d(10, 0.0, 3);
  const Evaluation e = evaluate(spec, ParamConfig::from_index(5, 3), d, 0.5);
  for (int c : e.predicted) EXPECT_EQ(c, 0);
  EXPECT_EQ(e.true_pos + e.false_pos, 0U);
}

TEST(Evaluate, AccuracyMatchesEmittedProbabilities) {
  TempDir dir;
  ASSERT_EQ(cli({"train", "--dataset.k", "6", "--circuit.n_params", "5", "--out", (dir / "r.txt").string()}).code, 0);
  const CliRun run = cli({"evaluate", "--config", (dir / "r.txt").string(), "--out", (dir / "p.csv").string()});
  ASSERT_EQ(run.code, 0) << run.err;

  const LoadedConfig report = load_config(dir / "r.txt");
  const double threshold = *report.threshold;
  const auto rows = csv_rows(slurp(dir / "p.csv"));
  ASSERT_EQ(rows.size(), 6U);
  std::size_t correct = 0;
  for (const auto& row : rows) {
    const int label = std::stoi(row[1]);
    const double p = std::stod(row[2]);
    correct += ((p > threshold ? 1 : 0) == label) ? 1 : 0;
  }
  const double expected = static_cast<double>(correct) / 6.0;
  EXPECT_NE(run.out.find("accuracy = " + format_double(expected)), std::string::npos) << run.out;
}

// ---------- boundary ----------

TEST(Boundary, OneDimensionalThreePoints) {
  CircuitSpec spec;
  spec.n_params = 2;
  const auto rows = boundary_grid(spec, ParamConfig::from_index(1, 2), 0.5, 3);
  ASSERT_EQ(rows.size(), 3U);
  EXPECT_EQ(rows[0].features, std::vector<double>{-1.0});
  EXPECT_EQ(rows[1].features, std::vector<double>{0.0});
  EXPECT_EQ(rows[2].features, std::vector<double>{1.0});
}

TEST(Boundary, ZeroAngleCircuitHasZeroProbability) {
  CircuitSpec spec;
  spec.n_params = 3;
  spec.data_dim = 2;
  spec.encoding_scale = 0.0;
  spec.angle_zero = 0.0;
  spec.angle_one = 0.0;
  const auto rows = boundary_grid(spec, ParamConfig::from_index(6, 3), 0.5, 5);
  ASSERT_EQ(rows.size(), 25U);
  for (const auto& r : rows) {
    EXPECT_EQ(r.prob, 0.0);
    EXPECT_EQ(r.cls, 0);
  }
}

TEST(Boundary, RejectsThreeDimensions) {
  CircuitSpec spec;
  spec.n_params = 3;
  spec.data_dim = 3;
  EXPECT_THROW(boundary_grid(spec, ParamConfig::from_index(0, 3), 0.5, 3), ConfigError);
}

TEST(Boundary, GridMatchesEvaluateAtCoincidingPoints) {
  TempDir dir;
  const std::string report = (dir / "r.txt").string();
  ASSERT_EQ(cli({"train", "--circuit.n_params", "6", "--out", report}).code, 0);
  const CliRun grid = cli({"boundary", "--config", report, "--evaluation.grid_res", "5"});
  ASSERT_EQ(grid.code, 0) << grid.err;
  const auto grid_rows = csv_rows(grid.out);
  ASSERT_EQ(grid_rows.size(), 5U);

  std::ofstream(dir / "pts.csv") << "-1,0\n-0.5,1\n0,0\n0.5,1\n1,1\n";
  const CliRun eval =
      cli({"evaluate", "--config", report, "--data", (dir / "pts.csv").string(), "--out", (dir / "e.csv").string()});
  ASSERT_EQ(eval.code, 0) << eval.err;
  const auto eval_rows = csv_rows(slurp(dir / "e.csv"));
  ASSERT_EQ(eval_rows.size(), 5U);
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_EQ(std::stod(grid_rows[i][0]), std::stod(eval_rows[i][0]));
    EXPECT_EQ(grid_rows[i][1], eval_rows[i][2]);  // p10, same formatting
    EXPECT_EQ(grid_rows[i][2], eval_rows[i][3]);  // class
  }
}

// ---------- compare ----------

TEST(Compare, ParseCells) {
  const auto cells = parse_cells("12x2, 4X4");
  ASSERT_EQ(cells.size(), 2U);
  EXPECT_EQ(cells[0].n_params, 12U);
  EXPECT_EQ(cells[1].n_points, 4U);
  EXPECT_TRUE(parse_cells("").empty());
  EXPECT_THROW(parse_cells("12"), ConfigError);
  EXPECT_THROW(parse_cells("12x"), ConfigError);
  EXPECT_THROW(parse_cells("ax2"), ConfigError);
  EXPECT_THROW(parse_cells("4x4,,5x1"), ConfigError);
}

TEST(Compare, SpeedupFlagsAndObjectiveMatch) {
  const std::vector<Cell> cells{{12, 2}, {4, 4}};
  const auto rows = run_compare(RunConfig{}, cells);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_TRUE(rows[0].ok) << rows[0].error;
  EXPECT_TRUE(rows[1].ok) << rows[1].error;
  EXPECT_TRUE(rows[0].speedup.speedup);
  EXPECT_FALSE(rows[1].speedup.speedup);
  EXPECT_DOUBLE_EQ(rows[0].speedup.closed_form_cost, 3072.0);
  EXPECT_TRUE(rows[0].objective_match);
  EXPECT_TRUE(rows[1].objective_match);
  EXPECT_EQ(rows[0].speedup.classical_evals, 4096U);
}

TEST(Compare, FailedCellDoesNotAbortTable) {
  RunConfig base;
  base.quantum.limits.max_amplitudes = 1 << 10;
  const std::vector<Cell> cells{{12, 2}, {4, 2}};
  const auto rows = run_compare(base, cells);
  ASSERT_EQ(rows.size(), 2U);
  EXPECT_FALSE(rows[0].ok);
  EXPECT_FALSE(rows[0].error.empty());
  EXPECT_TRUE(rows[0].speedup.speedup);
  EXPECT_TRUE(rows[1].ok);
  std::ostringstream out;
  write_compare_csv(out, rows);
  const auto table = csv_rows(out.str());
  ASSERT_EQ(table.size(), 2U);
  EXPECT_EQ(table[0][2], "failed");
  EXPECT_EQ(table[1][2], "ok");
}

TEST(Compare, EmptyMatrixExitsZero) {
  const CliRun run = cli({"compare", "--cells", ""});
  EXPECT_EQ(run.code, 0) << run.err;
  EXPECT_TRUE(csv_rows(run.out).empty());
  EXPECT_NE(run.out.find("n_params,n_points"), std::string::npos);
}

// ---------- CLI ----------

TEST(Cli, ReportRerunIsBitIdentical) {
  TempDir dir;
  const std::string first = (dir / "a.txt").string();
  const std::string second = (dir / "b.txt").string();
  ASSERT_EQ(cli({"train", "--seed", "17", "--circuit.n_params", "6", "--out", first}).code, 0);
  ASSERT_EQ(cli({"train", "--config", first, "--out", second}).code, 0);
  EXPECT_EQ(slurp(first), slurp(second));
  EXPECT_EQ(slurp(dir / "a.trace.csv"), slurp(dir / "b.trace.csv"));
  EXPECT_NE(slurp(first).find("seed = 17"), std::string::npos);
}

TEST(Cli, SeedFlagOverridesConfig) {
  TempDir dir;
  std::ofstream(dir / "c.txt") << "seed = 3\n[circuit]\nn_params = 5\n";
  const CliRun run = cli({"train", "--config", (dir / "c.txt").string(), "--seed", "9"});
  ASSERT_EQ(run.code, 0) << run.err;
  EXPECT_NE(run.out.find("seed = 9\n"), std::string::npos);
  EXPECT_NE(run.out.find("n_params = 5\n"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(cli({"--help"}).code, kExitOk);
  EXPECT_EQ(cli({}).code, kExitConfig);
  EXPECT_EQ(cli({"train", "--no-such-flag", "1"}).code, kExitConfig);

  const CliRun mismatch = cli({"train", "--circuit.data_dim", "2"});
  EXPECT_EQ(mismatch.code, kExitConfig);
  EXPECT_NE(mismatch.err.find("circuit.data_dim"), std::string::npos);

  EXPECT_EQ(cli({"train", "--circuit.n_params", "12", "--optimizer.max_amplitudes", "1024"}).code, kExitResource);
  EXPECT_EQ(cli({"train", "--dataset.source", "file", "--dataset.path", "/nonexistent/x.csv"}).code, kExitData);
  EXPECT_EQ(cli({"evaluate"}).code, kExitConfig);
  EXPECT_EQ(cli({"evaluate", "--params", "0101"}).code, kExitConfig);  // 4 bits for n_params = 8
}

TEST(Cli, GenDataWritesParseableCsv) {
  TempDir dir;
  const std::string path = (dir / "d.csv").string();
  ASSERT_EQ(cli({"gen-data", "--dataset.source", "circle_2d", "--dataset.k", "12", "--out", path}).code, 0);
  const Dataset d = load_csv(path);
  EXPECT_EQ(d.size(), 12U);
  EXPECT_EQ(d.dim, 2U);
  const Dataset direct = gen_circle_2d(12, 0.8, 7);
  for (std::size_t i = 0; i < 12; ++i) EXPECT_EQ(d.points[i].features, direct.points[i].features);
}

TEST(Cli, BinaryExitStatus) {
  const std::string bin = FQC_CLI_PATH;
  const int ok = std::system((bin + " gen-data --dataset.k 3 > /dev/null").c_str());
  ASSERT_TRUE(WIFEXITED(ok));
  EXPECT_EQ(WEXITSTATUS(ok), kExitOk);
  const int bad = std::system((bin + " train --circuit.data_dim 2 > /dev/null 2>&1").c_str());
  ASSERT_TRUE(WIFEXITED(bad));
  EXPECT_EQ(WEXITSTATUS(bad), kExitConfig);
}
