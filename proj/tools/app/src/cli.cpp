#include "fqc/app/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include <CLI11.hpp>

#include "fqc/app/commands.hpp"
#include "fqc/app/config.hpp"
#include "fqc/errors.hpp"

namespace fqc::app {

namespace {

struct Common {
  std::string config;
  std::string out;
  std::map<std::string, std::string> keys;
};

struct ParamOptions {
  std::string params;
  std::optional<double> threshold;
  std::string data;
};

void add_common(CLI::App* sub, Common& common) {
  sub->add_option("--config", common.config, "config or report file (key = value, [sections])");
  sub->add_option("--out", common.out, "output path (default: stdout)");
  for (const auto& key : config_keys()) {
    sub->add_option("--" + key.path, common.keys[key.path], key.help);
  }
}

void add_param_options(CLI::App* sub, ParamOptions& p) {
  sub->add_option("--params", p.params, "trained bits, bit 0 first (default: result.best_params of --config)");
  sub->add_option("--threshold", p.threshold, "decision threshold (default: result.threshold of --config)");
}

LoadedConfig resolve(const CLI::App* sub, const Common& common) {
  LoadedConfig loaded = common.config.empty() ? LoadedConfig{} : load_config(common.config);
  for (const auto& key : config_keys()) {
    if (sub->count("--" + key.path) > 0) key.set(loaded.config, common.keys.at(key.path));
  }
  return loaded;
}

ParamConfig resolve_params(const LoadedConfig& loaded, const ParamOptions& p) {
  if (!p.params.empty()) {
    try {
      return ParamConfig::parse(p.params);
    } catch (const ContractViolation& e) {
      throw ConfigError("--params", e.what());
    }
  }
  if (loaded.best_params) return *loaded.best_params;
  throw ConfigError("--params", "no parameters given and --config holds no result.best_params");
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  return f;
}

// Writes through `body` to --out or to `fallback`.
template <class F>
void emit(const std::string& out_path, std::ostream& fallback, F body) {
  if (out_path.empty()) {
    body(fallback);
  } else {
    std::ofstream f = open_out(out_path);
    body(f);
  }
}

int cmd_train(const CLI::App* sub, const Common& common, std::ostream& out) {
  const LoadedConfig loaded = resolve(sub, common);
  const RunReport report = run_train(loaded.config);
  emit(common.out, out, [&](std::ostream& s) { write_report(s, report); });
  if (!common.out.empty()) {
    std::filesystem::path trace = common.out;
    trace.replace_extension(".trace.csv");
    std::ofstream f = open_out(trace);
    write_trace_csv(f, report.result);
    out << "best_params = " << report.result.best_params.to_string()
        << "\nobjective = " << format_double(report.result.best_objective.value)
        << "\ntrain_accuracy = " << format_double(report.train_eval.accuracy) << '\n';
  }
  return kExitOk;
}

double resolve_threshold(const LoadedConfig& loaded, const ParamOptions& p, const ParamConfig& params,
                         const Dataset& train) {
  if (p.threshold) return *p.threshold;
  if (loaded.threshold) return *loaded.threshold;
  const RunConfig& cfg = loaded.config;
  if (cfg.threshold_mode == ThresholdMode::kFixed) return cfg.threshold;
  const Evaluation probe = evaluate(cfg.circuit, params, train, 0.5);
  return optimize_threshold(probe.probs, train.labels());
}

int cmd_evaluate(const CLI::App* sub, const Common& common, const ParamOptions& p, std::ostream& out) {
  const LoadedConfig loaded = resolve(sub, common);
  const RunConfig& cfg = loaded.config;
  const ParamConfig params = resolve_params(loaded, p);

  Dataset data;
  if (!p.data.empty()) {
    data = load_csv(p.data, {.has_header = cfg.train.has_header, .rescale = cfg.train.rescale});
  } else if (const auto test = cfg.test_data()) {
    data = load_dataset(*test);
  } else {
    data = load_dataset(cfg.train);
  }
  const bool need_train = !p.threshold && !loaded.threshold && cfg.threshold_mode == ThresholdMode::kOptimized;
  const double threshold =
      resolve_threshold(loaded, p, params, need_train ? load_dataset(cfg.train) : Dataset{});
  const Evaluation e = evaluate(cfg.circuit, params, data, threshold);

  write_evaluation(out, e);
  if (common.out.empty()) {
    out << '\n';
    write_points_csv(out, data, e);
  } else {
    std::ofstream f = open_out(common.out);
    write_points_csv(f, data, e);
  }
  return kExitOk;
}

int cmd_boundary(const CLI::App* sub, const Common& common, const ParamOptions& p, std::ostream& out) {
  const LoadedConfig loaded = resolve(sub, common);
  const RunConfig& cfg = loaded.config;
  const ParamConfig params = resolve_params(loaded, p);
  const bool need_train = !p.threshold && !loaded.threshold && cfg.threshold_mode == ThresholdMode::kOptimized;
  const double threshold =
      resolve_threshold(loaded, p, params, need_train ? load_dataset(cfg.train) : Dataset{});
  const auto rows = boundary_grid(cfg.circuit, params, threshold, cfg.grid_res);
  emit(common.out, out, [&](std::ostream& s) { write_grid_csv(s, cfg.circuit.data_dim, rows); });
  return kExitOk;
}

int cmd_compare(const CLI::App* sub, const Common& common, const std::string& cells_text, std::ostream& out,
                std::ostream& err) {
  const LoadedConfig loaded = resolve(sub, common);
  const auto cells = parse_cells(cells_text);
  const auto rows = run_compare(loaded.config, cells);
  emit(common.out, out, [&](std::ostream& s) { write_compare_csv(s, rows); });
  for (const auto& r : rows) {
    if (!r.ok) err << "cell " << r.cell.n_params << 'x' << r.cell.n_points << " failed: " << r.error << '\n';
  }
  return kExitOk;
}

int cmd_gen_data(const CLI::App* sub, const Common& common, bool test_set, std::ostream& out) {
  const LoadedConfig loaded = resolve(sub, common);
  const RunConfig& cfg = loaded.config;
  std::optional<DataConfig> source = test_set ? cfg.test_data() : std::optional<DataConfig>(cfg.train);
  if (!source) throw ConfigError("dataset.test_source", "is none");
  const Dataset data = load_dataset(*source);
  emit(common.out, out, [&](std::ostream& s) { write_csv(s, data, cfg.train.has_header); });
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Train and evaluate binary-parameter re-uploading classifiers", "fqc"};
  app.set_version_flag("--version", "fqc 0.1.0");
  app.require_subcommand(1);

  Common common;
  ParamOptions params;
  std::string cells;
  bool test_set = false;

  CLI::App* train = app.add_subcommand("train", "optimize the parameters and write a run report");
  add_common(train, common);

  CLI::App* evaluate_cmd = app.add_subcommand("evaluate", "classify a dataset with trained parameters");
  add_common(evaluate_cmd, common);
  add_param_options(evaluate_cmd, params);
  evaluate_cmd->add_option("--data", params.data, "CSV to evaluate (default: test set, else training set)");

  CLI::App* boundary = app.add_subcommand("boundary", "export p(|10>) on a grid over [-1, 1]^D");
  add_common(boundary, common);
  add_param_options(boundary, params);

  CLI::App* compare = app.add_subcommand("compare", "run both engines over (n, k) cells");
  add_common(compare, common);
  compare->add_option("--cells", cells, "comma-separated NxK cells, e.g. 12x2,4x4");

  CLI::App* gen = app.add_subcommand("gen-data", "write the configured dataset as CSV");
  add_common(gen, common);
  gen->add_flag("--test", test_set, "write the test set instead of the training set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (train->parsed()) return cmd_train(train, common, out);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate_cmd, common, params, out);
    if (boundary->parsed()) return cmd_boundary(boundary, common, params, out);
    if (compare->parsed()) return cmd_compare(compare, common, cells, out, err);
    if (gen->parsed()) return cmd_gen_data(gen, common, test_set, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ContractViolation& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kExitConfig;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kExitResource;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kExitData;
  } catch (const SchemaError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ApproximationError& e) {
    err << "approximation error: " << e.what() << '\n';
    return kExitData;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "unexpected error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitFailure;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  for (const auto& a : args) argv.push_back(a.c_str());
  argv.push_back(nullptr);
  return run_cli(static_cast<int>(args.size()), argv.data(), out, err);
}

}  // namespace fqc::app
