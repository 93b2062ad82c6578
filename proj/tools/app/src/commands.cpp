#include "fqc/app/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "fqc/errors.hpp"

namespace fqc::app {

namespace {

const char* flag_text(bool b) { return b ? "true" : "false"; }

void check_dim(const CircuitSpec& spec, const Dataset& data, const std::string& which) {
  if (data.dim != spec.data_dim) {
    throw ConfigError("circuit.data_dim", std::to_string(spec.data_dim) + " does not match " + which +
                                              " dimension " + std::to_string(data.dim));
  }
}

double max_gamma(const TrainResult& r) {
  double g = 0.0;
  for (const auto& t : r.trace) g = std::max(g, t.gamma);
  return g;
}

std::uint64_t found_at(const TrainResult& r) {
  const std::uint64_t best = r.best_params.index();
  for (const auto& t : r.trace) {
    if (t.reference == best) return t.iteration;
    if (t.accepted && t.successor == best) return t.iteration + 1;
  }
  return 0;
}

void write_eval_section(std::ostream& out, const std::string& name, const Evaluation& e) {
  out << "\n[" << name << "]\n"
      << "points = " << e.probs.size() << '\n'
      << "threshold = " << format_double(e.threshold) << '\n'
      << "accuracy = " << format_double(e.accuracy) << '\n'
      << "true_pos = " << e.true_pos << '\n'
      << "true_neg = " << e.true_neg << '\n'
      << "false_pos = " << e.false_pos << '\n'
      << "false_neg = " << e.false_neg << '\n';
}

std::string trace_row(const TraceRecord& t) {
  std::string row = std::to_string(t.iteration) + ',' + std::to_string(t.reference) + ',' +
                    format_double(t.reference_magnitude) + ',' + format_double(t.softness) + ',' +
                    format_double(t.gamma) + ',' + format_double(t.success_weight) + ',' +
                    format_double(t.charged_weight) + ',' + format_double(t.query_cost) + ',';
  if (t.successor) row += std::to_string(*t.successor);
  row += std::string(",") + flag_text(t.accepted) + ',' + flag_text(t.converged);
  return row;
}

constexpr const char* kTraceColumns =
    "iteration,reference,reference_magnitude,softness,gamma,success_weight,charged_weight,"
    "query_cost,successor,accepted,converged";

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

}  // namespace

Evaluation evaluate(const CircuitSpec& spec, const ParamConfig& params, const Dataset& data,
                    double threshold) {
  if (params.size() != spec.n_params) {
    throw ConfigError("params", "expected " + std::to_string(spec.n_params) + " bits, got " +
                                    std::to_string(params.size()));
  }
  check_dim(spec, data, "dataset");
  Evaluation e;
  e.threshold = threshold;
  for (const auto& p : data.points) {
    const double prob = class_one_probability(spec, params, p.features);
    const int cls = prob > threshold ? 1 : 0;
    e.probs.push_back(prob);
    e.predicted.push_back(cls);
    if (cls == 1) {
      (p.label == 1 ? e.true_pos : e.false_pos) += 1;
    } else {
      (p.label == 0 ? e.true_neg : e.false_neg) += 1;
    }
  }
  e.accuracy = data.points.empty()
                   ? 0.0
                   : static_cast<double>(e.true_pos + e.true_neg) / static_cast<double>(data.points.size());
  return e;
}

double optimize_threshold(std::span<const double> probs, std::span<const int> labels) {
  std::vector<double> sorted(probs.begin(), probs.end());
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  std::vector<double> candidates{0.0};
  for (std::size_t i = 0; i + 1 < sorted.size(); ++i) candidates.push_back(0.5 * (sorted[i] + sorted[i + 1]));
  candidates.push_back(1.0);

  double best_t = candidates.front();
  std::size_t best_hits = 0;
  bool first = true;
  for (double t : candidates) {
    std::size_t hits = 0;
    for (std::size_t i = 0; i < probs.size(); ++i) hits += ((probs[i] > t ? 1 : 0) == labels[i]) ? 1 : 0;
    if (first || hits > best_hits) {
      best_hits = hits;
      best_t = t;
      first = false;
    }
  }
  return best_t;
}

RunReport run_train(const RunConfig& config) {
  config.validate();
  const Dataset train = load_dataset(config.train);
  check_dim(config.circuit, train, "training set");
  std::optional<Dataset> test;
  if (const auto t = config.test_data()) {
    test = load_dataset(*t);
    check_dim(config.circuit, *test, "test set");
  }

  RunReport r;
  r.config = config;
  r.result = config.engine == Engine::kQuantum
                 ? train_quantum(config.circuit, train.points, config.quantum_config())
                 : brute_force(config.circuit, train.points, config.quantum.limits);
  r.found_at = found_at(r.result);
  r.speedup = speedup_report(config.circuit.n_params, train.size(), config.quantum.degree, max_gamma(r.result),
                             r.result.ledger, r.result.ledger);

  double threshold = config.threshold;
  if (config.threshold_mode == ThresholdMode::kOptimized) {
    const Evaluation probe = evaluate(config.circuit, r.result.best_params, train, 0.5);
    threshold = optimize_threshold(probe.probs, train.labels());
  }
  r.train_eval = evaluate(config.circuit, r.result.best_params, train, threshold);
  if (test) r.test_eval = evaluate(config.circuit, r.result.best_params, *test, threshold);
  return r;
}

void write_report(std::ostream& out, const RunReport& r) {
  const TrainResult& res = r.result;
  out << "; fqc run report\n";
  write_config(out, r.config);

  out << "\n[result]\n"
      << "engine = " << to_string(r.config.engine) << '\n'
      << "best_params = " << res.best_params.to_string() << '\n'
      << "best_index = " << res.best_params.index() << '\n'
      << "objective = " << format_double(res.best_objective.value) << '\n'
      << "log_objective = " << format_double(res.best_objective.log_value) << '\n'
      << "converged = " << flag_text(res.converged) << '\n'
      << "degenerate = " << flag_text(res.degenerate) << '\n'
      << "initial_reference = " << res.initial_reference << '\n'
      << "found_at = " << r.found_at << '\n'
      << "threshold = " << format_double(r.train_eval.threshold) << '\n';

  out << "\n[ledger]\n"
      << "oracle_calls_modeled = " << format_double(res.ledger.oracle_calls_modeled) << '\n'
      << "classical_amp_evals = " << res.ledger.classical_amp_evals << '\n'
      << "iterations = " << res.ledger.iterations << '\n'
      << "brute_force_evals = " << res.ledger.brute_force_evals << '\n';

  const SpeedupReport& s = r.speedup;
  out << "\n[speedup]\n"
      << "n_params = " << s.n_params << '\n'
      << "n_points = " << s.n_points << '\n'
      << "degree = " << s.degree << '\n'
      << "gamma = " << format_double(s.gamma) << '\n'
      << "modeled_quantum_cost = " << format_double(s.modeled_quantum_cost) << '\n'
      << "closed_form_cost = " << format_double(s.closed_form_cost) << '\n'
      << "classical_cost = " << format_double(s.classical_cost) << '\n'
      << "ratio = " << format_double(s.ratio) << '\n'
      << "modeled_ratio = " << format_double(s.modeled_ratio) << '\n'
      << "speedup = " << flag_text(s.speedup) << '\n';

  write_eval_section(out, "train_evaluation", r.train_eval);
  if (r.test_eval) write_eval_section(out, "test_evaluation", *r.test_eval);

  out << "\n[trace]\n"
      << "columns = " << kTraceColumns << '\n';
  for (const auto& t : res.trace) out << t.iteration << " = " << trace_row(t) << '\n';
}

void write_trace_csv(std::ostream& out, const TrainResult& result) {
  out << kTraceColumns << '\n';
  for (const auto& t : result.trace) out << trace_row(t) << '\n';
}

void write_points_csv(std::ostream& out, const Dataset& data, const Evaluation& eval) {
  for (std::size_t c = 0; c < data.dim; ++c) out << 'f' << (c + 1) << ',';
  out << "label,p10,predicted\n";
  for (std::size_t i = 0; i < data.points.size(); ++i) {
    for (double v : data.points[i].features) out << format_double(v) << ',';
    out << data.points[i].label << ',' << format_double(eval.probs[i]) << ',' << eval.predicted[i] << '\n';
  }
}

void write_evaluation(std::ostream& out, const Evaluation& eval) {
  write_eval_section(out, "evaluation", eval);
}

std::vector<GridRow> boundary_grid(const CircuitSpec& spec, const ParamConfig& params, double threshold,
                                   std::size_t grid_res) {
  if (spec.data_dim != 1 && spec.data_dim != 2) {
    throw ConfigError("circuit.data_dim",
                      "boundary export supports dimension 1 or 2, got " + std::to_string(spec.data_dim));
  }
  if (grid_res < 2) throw ConfigError("evaluation.grid_res", "must be at least 2");
  if (params.size() != spec.n_params) {
    throw ConfigError("params", "expected " + std::to_string(spec.n_params) + " bits, got " +
                                    std::to_string(params.size()));
  }
  std::vector<double> axis(grid_res);
  for (std::size_t i = 0; i < grid_res; ++i) {
    axis[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(grid_res - 1);
  }
  std::vector<GridRow> rows;
  auto add = [&](std::vector<double> x) {
    GridRow row;
    row.prob = class_one_probability(spec, params, x);
    row.cls = row.prob > threshold ? 1 : 0;
    row.features = std::move(x);
    rows.push_back(std::move(row));
  };
  if (spec.data_dim == 1) {
    for (double x : axis) add({x});
  } else {
    for (double x : axis)
      for (double y : axis) add({x, y});
  }
  return rows;
}

void write_grid_csv(std::ostream& out, std::size_t dim, std::span<const GridRow> rows) {
  for (std::size_t c = 0; c < dim; ++c) out << 'f' << (c + 1) << ',';
  out << "p10,class\n";
  for (const auto& r : rows) {
    for (double v : r.features) out << format_double(v) << ',';
    out << format_double(r.prob) << ',' << r.cls << '\n';
  }
}

std::vector<Cell> parse_cells(const std::string& text) {
  std::vector<Cell> cells;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = std::min(text.find(',', start), text.size());
    const std::string item = trim(text.substr(start, comma - start));
    start = comma + 1;
    if (item.empty()) {
      if (comma == text.size()) break;
      throw ConfigError("--cells", "empty cell in '" + text + "'");
    }
    const std::size_t x = item.find_first_of("xX");
    try {
      std::size_t used_n = 0;
      std::size_t used_k = 0;
      if (x == std::string::npos) throw std::invalid_argument("missing x");
      const std::string n_text = item.substr(0, x);
      const std::string k_text = item.substr(x + 1);
      Cell c;
      c.n_params = std::stoul(n_text, &used_n);
      c.n_points = std::stoul(k_text, &used_k);
      if (used_n != n_text.size() || used_k != k_text.size() || n_text[0] == '-' || k_text[0] == '-') {
        throw std::invalid_argument("trailing text");
      }
      cells.push_back(c);
    } catch (const std::logic_error&) {
      throw ConfigError("--cells", "expected NxK, got '" + item + "'");
    }
  }
  return cells;
}

std::vector<CompareRow> run_compare(const RunConfig& base, std::span<const Cell> cells) {
  std::vector<CompareRow> rows;
  for (const Cell& cell : cells) {
    CompareRow row;
    row.cell = cell;
    row.speedup = speedup_report(cell.n_params, cell.n_points, base.quantum.degree, 0.0, {}, {});
    try {
      RunConfig cfg = base;
      cfg.circuit.n_params = cell.n_params;
      cfg.train.k = cell.n_points;
      cfg.validate();
      const Dataset data = load_dataset(cfg.train);
      check_dim(cfg.circuit, data, "dataset");
      const TrainResult b = brute_force(cfg.circuit, data.points, cfg.quantum.limits);
      const TrainResult q = train_quantum(cfg.circuit, data.points, cfg.quantum_config());
      row.speedup = speedup_report(cell.n_params, data.size(), cfg.quantum.degree, max_gamma(q), q.ledger, b.ledger);
      row.quantum_objective = q.best_objective.value;
      row.brute_objective = b.best_objective.value;
      row.objective_match = std::abs(row.quantum_objective - row.brute_objective) <= 1e-10;
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_compare_csv(std::ostream& out, std::span<const CompareRow> rows) {
  out << "n_params,n_points,status,modeled_quantum_cost,quantum_iterations,classical_evals,"
         "closed_form_cost,classical_cost,ratio,modeled_ratio,speedup,quantum_objective,"
         "brute_objective,objective_match,error\n";
  for (const auto& r : rows) {
    std::string error = r.error;
    std::replace(error.begin(), error.end(), ',', ';');
    std::replace(error.begin(), error.end(), '\n', ' ');
    const SpeedupReport& s = r.speedup;
    out << r.cell.n_params << ',' << r.cell.n_points << ',' << (r.ok ? "ok" : "failed") << ','
        << format_double(s.modeled_quantum_cost) << ',' << s.quantum_iterations << ',' << s.classical_evals << ','
        << format_double(s.closed_form_cost) << ',' << format_double(s.classical_cost) << ','
        << format_double(s.ratio) << ',' << format_double(s.modeled_ratio) << ',' << flag_text(s.speedup) << ','
        << format_double(r.quantum_objective) << ',' << format_double(r.brute_objective) << ','
        << flag_text(r.ok && r.objective_match) << ',' << error << '\n';
  }
}

}  // namespace fqc::app
