#include "qcolor/experiment.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qcolor/rng.hpp"
#include "qcolor/statevector.hpp"

namespace qcolor {

using ordered_json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream stream(s);
  while (std::getline(stream, part, sep)) parts.push_back(part);
  return parts;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double d = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  }
}

long long parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  }
}

std::vector<double> parse_double_list(const std::string& key,
                                      const std::string& value) {
  std::vector<double> out;
  for (const auto& item : split(value, ',')) {
    const auto t = trim(item);
    if (!t.empty()) out.push_back(parse_double(key, t));
  }
  return out;
}

std::vector<int> parse_int_list(const std::string& key,
                                const std::string& value) {
  std::vector<int> out;
  for (const auto& item : split(value, ',')) {
    const auto t = trim(item);
    if (!t.empty()) out.push_back(static_cast<int>(parse_int(key, t)));
  }
  return out;
}

SweepSolverKind sweep_solver_from_name(const std::string& name) {
  if (name == "tabu") return SweepSolverKind::Tabu;
  if (name == "sa" || name == "annealing") return SweepSolverKind::Sa;
  if (name == "qaoa") return SweepSolverKind::Qaoa;
  throw std::invalid_argument("config: unknown sweep solver: " + name);
}

std::string sweep_solver_name(SweepSolverKind s) {
  switch (s) {
    case SweepSolverKind::Tabu:
      return "tabu";
    case SweepSolverKind::Sa:
      return "sa";
    default:
      return "qaoa";
  }
}

void apply_key(ExperimentConfig& cfg, const std::string& key,
               const std::string& value) {
  if (key == "graph.source") {
    if (value.rfind("file:", 0) == 0) {
      cfg.graph_source = "file";
      cfg.graph_file = value.substr(5);
    } else {
      cfg.graph_source = value;
    }
  } else if (key == "graph.file") {
    cfg.graph_source = "file";
    cfg.graph_file = value;
  } else if (key == "graph.er.n") {
    cfg.er_n = static_cast<int>(parse_int(key, value));
  } else if (key == "graph.er.p_percent") {
    cfg.er_p_percent = parse_double(key, value);
  } else if (key == "graph.er.seed") {
    cfg.er_seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "problem.k") {
    cfg.k = static_cast<int>(parse_int(key, value));
  } else if (key == "problem.encoding") {
    cfg.encoding = encoding_from_name(value);
  } else if (key == "problem.C") {
    cfg.weight_C = parse_double(key, value);
  } else if (key == "problem.D") {
    cfg.weight_D = parse_double(key, value);
  } else if (key == "problem.P") {
    cfg.weight_P = parse_double(key, value);
  } else if (key == "qaoa.p") {
    cfg.p = static_cast<int>(parse_int(key, value));
  } else if (key == "qaoa.p_onehot") {
    cfg.p_onehot = static_cast<int>(parse_int(key, value));
  } else if (key == "qaoa.p_binary") {
    cfg.p_binary = static_cast<int>(parse_int(key, value));
  } else if (key == "qaoa.shots") {
    cfg.shots = static_cast<int>(parse_int(key, value));
  } else if (key == "qaoa.gradient") {
    cfg.gradient_method = gradient_method_from_name(value);
  } else if (key == "optimizer.lr") {
    cfg.optimizer.learning_rate = parse_double(key, value);
  } else if (key == "optimizer.momentum") {
    cfg.optimizer.momentum = parse_double(key, value);
  } else if (key == "optimizer.max_iter") {
    cfg.optimizer.max_iterations = static_cast<int>(parse_int(key, value));
  } else if (key == "optimizer.stop_gap") {
    cfg.optimizer.stop_gap = parse_double(key, value);
  } else if (key == "optimizer.seed") {
    cfg.optimizer.seed = static_cast<std::uint64_t>(parse_int(key, value));
  } else if (key == "output.dir") {
    cfg.out_dir = value;
  } else if (key == "sweep.ks") {
    cfg.sweep_ks = parse_int_list(key, value);
  } else if (key == "sweep.connectivities") {
    cfg.sweep_connectivities = parse_double_list(key, value);
  } else if (key == "sweep.p_percents") {
    cfg.sweep_p_percents = parse_double_list(key, value);
  } else if (key == "sweep.n") {
    cfg.sweep_n = static_cast<int>(parse_int(key, value));
  } else if (key == "sweep.trials") {
    cfg.sweep_trials = static_cast<int>(parse_int(key, value));
  } else if (key == "sweep.solver") {
    cfg.sweep_solver = sweep_solver_from_name(value);
  } else if (key == "sweep.budget") {
    cfg.sweep_budget = parse_int(key, value);
  } else if (key == "sweep.sa_sweeps") {
    cfg.sa_sweeps = static_cast<int>(parse_int(key, value));
  } else if (key == "sweep.tabu_max_moves") {
    cfg.tabu_max_moves = parse_int(key, value);
  } else {
    throw std::invalid_argument("config: unknown key: " + key);
  }
}

void validate(const ExperimentConfig& cfg) {
  if (cfg.graph_source != "er" && cfg.graph_source != "file" &&
      cfg.graph_source.rfind("ref-", 0) != 0) {
    throw std::invalid_argument("config: graph.source must be er, file, or a "
                                "ref-* instance name");
  }
  if (cfg.graph_source == "file" && cfg.graph_file.empty()) {
    throw std::invalid_argument("config: graph.file is required");
  }
  if (cfg.er_p_percent < 0.0 || cfg.er_p_percent > 100.0) {
    throw std::invalid_argument("config: graph.er.p_percent in [0,100]");
  }
  if (cfg.k && *cfg.k < 2) throw std::invalid_argument("config: problem.k >= 2");
  if (cfg.p < 1 || (cfg.p_onehot && *cfg.p_onehot < 1) ||
      (cfg.p_binary && *cfg.p_binary < 1)) {
    throw std::invalid_argument("config: qaoa.p >= 1");
  }
  if (cfg.shots < 0) throw std::invalid_argument("config: qaoa.shots >= 0");
  if (cfg.optimizer.max_iterations < 0 || cfg.optimizer.stop_gap < 0 ||
      cfg.optimizer.learning_rate < 0 || cfg.optimizer.momentum < 0 ||
      cfg.optimizer.momentum >= 1.0) {
    throw std::invalid_argument("config: invalid optimizer settings");
  }
  if (cfg.sweep_trials < 0 || cfg.sweep_n < 1 || cfg.sweep_budget < 1) {
    throw std::invalid_argument("config: invalid sweep settings");
  }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig cfg;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto stripped = trim(line.substr(0, line.find('#')));
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config: expected key=value, got: " + stripped);
    }
    apply_key(cfg, trim(stripped.substr(0, eq)), trim(stripped.substr(eq + 1)));
  }
  validate(cfg);
  return cfg;
}

namespace {

void flatten_json(const ordered_json& node, const std::string& prefix,
                  std::vector<std::pair<std::string, std::string>>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten_json(value, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  std::string value;
  if (node.is_string()) {
    value = node.get<std::string>();
  } else if (node.is_array()) {
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (i) value += ',';
      value += node[i].dump();
    }
  } else {
    value = node.dump();
  }
  out.emplace_back(prefix, value);
}

}  // namespace

ExperimentConfig parse_config_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw std::invalid_argument(std::string("config: bad JSON: ") + e.what());
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  flatten_json(doc, "", pairs);
  ExperimentConfig cfg;
  for (const auto& [key, value] : pairs) apply_key(cfg, key, value);
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool looks_json =
      (first != std::string::npos && text[first] == '{') ||
      path.size() > 5 && path.substr(path.size() - 5) == ".json";
  return looks_json ? parse_config_json(text) : parse_config_text(text);
}

ResolvedInstance resolve_graph(const ExperimentConfig& cfg) {
  if (cfg.graph_source == "file") {
    Graph g = read_graph_file(cfg.graph_file);
    return {cfg.graph_file, std::move(g), cfg.k.value_or(3)};
  }
  if (cfg.graph_source == "er") {
    Graph g = generate_er(cfg.er_n, cfg.er_p_percent / 100.0, cfg.er_seed);
    return {"er(n=" + std::to_string(cfg.er_n) + ")", std::move(g),
            cfg.k.value_or(3)};
  }
  auto ref = reference_instance(cfg.graph_source);
  return {ref.name, std::move(ref.graph), cfg.k.value_or(ref.k)};
}

namespace {

ordered_json summary_json_of(const ExperimentConfig& cfg,
                             const ResolvedInstance& inst,
                             const ColoringInstance& coloring, int p,
                             const RunRecord& record, int num_qubits,
                             int per_level_depth, int total_depth) {
  ordered_json j;
  j["schema_version"] = 1;
  j["graph"] = {{"source", inst.source_name},
                {"n", inst.graph.num_nodes()},
                {"m", inst.graph.num_edges()}};
  j["problem"] = {{"k", inst.k},
                  {"encoding", encoding_name(coloring.encoding)},
                  {"C", coloring.weight_C},
                  {"D", coloring.weight_D},
                  {"P", coloring.weight_P}};
  j["qaoa"] = {{"p", p},
               {"shots", cfg.shots},
               {"gradient", gradient_method_name(cfg.gradient_method)}};
  j["optimizer"] = {{"learning_rate", cfg.optimizer.learning_rate},
                    {"momentum", cfg.optimizer.momentum},
                    {"max_iterations", cfg.optimizer.max_iterations},
                    {"stop_gap", cfg.optimizer.stop_gap},
                    {"seed", cfg.optimizer.seed}};
  j["num_qubits"] = num_qubits;
  j["per_level_depth"] = per_level_depth;
  j["total_depth"] = total_depth;
  j["reference_min"] = record.reference_min;
  j["reference_min_is_exact"] = record.reference_min_is_exact;
  j["iterations"] = record.rows.back().iteration;
  j["iterations_to_threshold"] = record.iterations_to_threshold;
  j["reached_threshold"] = record.reached_threshold();
  j["final_energy"] = record.rows.back().energy;
  j["final_gap"] = record.rows.back().gap;
  j["final_prob_valid"] = record.final_prob_valid;
  j["wall_time_ms"] = record.wall_time_ms;
  ordered_json outcomes = ordered_json::array();
  for (const auto& o : record.top_outcomes) {
    outcomes.push_back({{"bitstring", bitstring_of(o.index, num_qubits)},
                        {"probability", o.probability}});
  }
  j["top_outcomes"] = outcomes;
  return j;
}

std::vector<std::pair<std::string, std::string>> csv_metadata(
    const ExperimentConfig& cfg, const ResolvedInstance& inst,
    const ColoringInstance& coloring, int p) {
  std::ostringstream opt;
  opt << "lr=" << cfg.optimizer.learning_rate
      << " momentum=" << cfg.optimizer.momentum
      << " max_iter=" << cfg.optimizer.max_iterations
      << " stop_gap=" << cfg.optimizer.stop_gap;
  std::ostringstream weights;
  weights << "C=" << coloring.weight_C << " D=" << coloring.weight_D
          << " P=" << coloring.weight_P;
  return {{"instance", inst.source_name + " n=" +
                           std::to_string(inst.graph.num_nodes()) + " m=" +
                           std::to_string(inst.graph.num_edges()) +
                           " k=" + std::to_string(inst.k)},
          {"encoding", encoding_name(coloring.encoding)},
          {"weights", weights.str()},
          {"p", std::to_string(p)},
          {"shots", std::to_string(cfg.shots)},
          {"gradient", gradient_method_name(cfg.gradient_method)},
          {"optimizer", opt.str()},
          {"seed", std::to_string(cfg.optimizer.seed)}};
}

SolveArtifacts solve_one(const ExperimentConfig& cfg,
                         const ResolvedInstance& inst, Encoding encoding,
                         int p) {
  ColoringInstance coloring(inst.graph, inst.k, encoding, cfg.weight_C,
                            cfg.weight_D, cfg.weight_P);
  const ZPolynomial cost = encode(coloring);
  const Ansatz ansatz(cost, p);

  OptimizerConfig opt = cfg.optimizer;
  opt.shots = cfg.shots;
  opt.gradient_method = cfg.gradient_method;
  const RunRecord record = optimize(ansatz, opt, &coloring);

  SolveArtifacts artifacts;
  artifacts.record = record;
  artifacts.num_qubits = cost.num_qubits();
  artifacts.per_level_depth = circuit_depth(ansatz.level_circuit(1.0, 1.0));
  const Circuit full = ansatz.build_circuit(record.final_parameters);
  artifacts.total_depth = circuit_depth(full);
  artifacts.circuit_text = dump_circuit(full);
  artifacts.run_csv =
      run_record_csv(record, csv_metadata(cfg, inst, coloring, p));
  artifacts.summary_json =
      summary_json_of(cfg, inst, coloring, p, record, artifacts.num_qubits,
                      artifacts.per_level_depth, artifacts.total_depth)
          .dump(2) +
      "\n";
  artifacts.exit_code = record.reached_threshold() ? 0 : 2;
  return artifacts;
}

}  // namespace

SolveArtifacts run_solve(const ExperimentConfig& cfg) {
  const ResolvedInstance inst = resolve_graph(cfg);
  const int p = cfg.encoding == Encoding::OneHot
                    ? cfg.p_onehot.value_or(cfg.p)
                    : cfg.p_binary.value_or(cfg.p);
  return solve_one(cfg, inst, cfg.encoding, p);
}

void write_solve_artifacts(const SolveArtifacts& artifacts,
                           const std::string& out_dir,
                           const std::string& suffix) {
  std::filesystem::create_directories(out_dir);
  const auto base = std::filesystem::path(out_dir);
  auto write = [&](const std::string& name, const std::string& content) {
    std::ofstream out(base / name);
    if (!out) throw std::runtime_error("cannot write " + (base / name).string());
    out << content;
  };
  write("run" + suffix + ".csv", artifacts.run_csv);
  write("summary" + suffix + ".json", artifacts.summary_json);
  write("circuit" + suffix + ".txt", artifacts.circuit_text);
}

CompareArtifacts run_compare(const ExperimentConfig& cfg) {
  const ResolvedInstance inst = resolve_graph(cfg);
  CompareArtifacts artifacts;
  artifacts.onehot =
      solve_one(cfg, inst, Encoding::OneHot, cfg.p_onehot.value_or(cfg.p));
  artifacts.binary =
      solve_one(cfg, inst, Encoding::Binary, cfg.p_binary.value_or(cfg.p));

  const auto& oh = artifacts.onehot;
  const auto& bin = artifacts.binary;
  ordered_json j;
  j["schema_version"] = 1;
  j["graph"] = {{"source", inst.source_name},
                {"n", inst.graph.num_nodes()},
                {"m", inst.graph.num_edges()}};
  j["k"] = inst.k;
  j["width"] = {{"onehot", oh.num_qubits},
                {"binary", bin.num_qubits},
                {"ratio", static_cast<double>(oh.num_qubits) / bin.num_qubits}};
  j["per_level_depth"] = {{"onehot", oh.per_level_depth},
                          {"binary", bin.per_level_depth}};
  j["total_depth"] = {{"onehot", oh.total_depth}, {"binary", bin.total_depth}};
  j["iterations_to_threshold"] = {
      {"onehot", oh.record.iterations_to_threshold},
      {"binary", bin.record.iterations_to_threshold}};
  j["final_prob_valid"] = {{"onehot", oh.record.final_prob_valid},
                           {"binary", bin.record.final_prob_valid}};
  j["final_gap"] = {{"onehot", oh.record.final_row().gap},
                    {"binary", bin.record.final_row().gap}};
  artifacts.compare_json = j.dump(2) + "\n";

  std::ostringstream table;
  table << "metric                  onehot      binary\n";
  auto line = [&table](const std::string& name, auto a, auto b) {
    table << name;
    for (std::size_t i = name.size(); i < 24; ++i) table << ' ';
    std::ostringstream av, bv;
    av.precision(6);
    bv.precision(6);
    av << a;
    bv << b;
    table << av.str();
    for (std::size_t i = av.str().size(); i < 12; ++i) table << ' ';
    table << bv.str() << '\n';
  };
  line("qubits", oh.num_qubits, bin.num_qubits);
  line("per_level_depth", oh.per_level_depth, bin.per_level_depth);
  line("total_depth", oh.total_depth, bin.total_depth);
  line("iters_to_threshold", oh.record.iterations_to_threshold,
       bin.record.iterations_to_threshold);
  line("final_gap", oh.record.final_row().gap, bin.record.final_row().gap);
  line("final_prob_valid", oh.record.final_prob_valid,
       bin.record.final_prob_valid);
  artifacts.table = table.str();
  artifacts.exit_code =
      (oh.record.reached_threshold() && bin.record.reached_threshold()) ? 0 : 2;
  return artifacts;
}

SweepArtifacts run_sweep(const ExperimentConfig& cfg, int jobs) {
  if (!cfg.sweep_connectivities.empty() && !cfg.sweep_p_percents.empty()) {
    throw std::invalid_argument(
        "config: give sweep.connectivities or sweep.p_percents, not both");
  }
  std::vector<double> ps;
  for (const double c : cfg.sweep_connectivities) ps.push_back(c / cfg.sweep_n);
  for (const double pp : cfg.sweep_p_percents) ps.push_back(pp / 100.0);
  const std::vector<int> ks =
      cfg.sweep_ks.empty() ? std::vector<int>{cfg.k.value_or(3)} : cfg.sweep_ks;

  struct Point {
    int k;
    double p;
  };
  std::vector<Point> points;
  for (const int k : ks) {
    for (const double p : ps) points.push_back({k, p});
  }
  const long long total_runs =
      static_cast<long long>(points.size()) * cfg.sweep_trials;
  if (total_runs > cfg.sweep_budget) {
    throw std::invalid_argument(
        "sweep grid needs " + std::to_string(points.size()) + " points x " +
        std::to_string(cfg.sweep_trials) + " trials = " +
        std::to_string(total_runs) + " runs, over the budget of " +
        std::to_string(cfg.sweep_budget) +
        " (raise sweep.budget or shrink the grid)");
  }
  if (cfg.sweep_solver == SweepSolverKind::Qaoa) {
    for (const auto& pt : points) {
      const int width = num_qubits_for(cfg.encoding, cfg.sweep_n, pt.k);
      if (width > kDiagonalCacheLimit) {
        throw std::invalid_argument(
            "sweep: qaoa point n=" + std::to_string(cfg.sweep_n) +
            " k=" + std::to_string(pt.k) + " needs " + std::to_string(width) +
            " qubits, over the " + std::to_string(kDiagonalCacheLimit) +
            "-qubit sweep limit");
      }
    }
  }

  SweepGrid grid;
  grid.n = cfg.sweep_n;
  grid.trials = cfg.sweep_trials;
  grid.seed = cfg.optimizer.seed;
  grid.sa.sweeps = cfg.sa_sweeps;
  grid.tabu.max_moves = cfg.tabu_max_moves;
  grid.solver = cfg.sweep_solver == SweepSolverKind::Sa ? BaselineSolver::Sa
                                                        : BaselineSolver::Tabu;

  auto qaoa_point = [&cfg](int k, double p, int trials,
                           std::uint64_t seed) -> SweepRow {
    SweepRow row;
    row.k = k;
    row.n = cfg.sweep_n;
    row.p = p;
    row.trials = trials;
    double connectivity_total = 0.0, conflict_total = 0.0, time_total = 0.0;
    for (int trial = 0; trial < trials; ++trial) {
      const std::uint64_t trial_seed = Rng::mix(Rng::mix(seed, k), trial);
      const Graph g = generate_er(cfg.sweep_n, p, trial_seed);
      connectivity_total += average_connectivity(g);
      ColoringInstance inst(g, k, cfg.encoding, cfg.weight_C, cfg.weight_D,
                            cfg.weight_P);
      const Ansatz ansatz(encode(inst), cfg.p);
      OptimizerConfig opt = cfg.optimizer;
      opt.shots = cfg.shots;
      opt.gradient_method = cfg.gradient_method;
      opt.seed = Rng::mix(trial_seed, 7);
      const RunRecord record = optimize(ansatz, opt, &inst);
      time_total += record.wall_time_ms;
      if (record.reached_threshold()) ++row.successes;
      // Decode the most probable outcome into coloring errors.
      const auto& top = record.top_outcomes.front();
      const ColorDecoder dec(cfg.encoding, g.num_nodes(), k);
      conflict_total +=
          validate_coloring(g, dec.decode(top.index), k).total_errors();
    }
    row.connectivity = trials ? connectivity_total / trials : 0.0;
    row.mean_conflicts = trials ? conflict_total / trials : 0.0;
    row.mean_time_ms = trials ? time_total / trials : 0.0;
    return row;
  };

  std::vector<SweepRow> rows(points.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= points.size()) return;
      const auto& pt = points[i];
      rows[i] = cfg.sweep_solver == SweepSolverKind::Qaoa
                    ? qaoa_point(pt.k, pt.p, cfg.sweep_trials, grid.seed)
                    : sweep_point(pt.k, cfg.sweep_n, pt.p, cfg.sweep_trials,
                                  grid);
    }
  };
  const int worker_count = std::max(1, std::min<int>(jobs, points.size()));
  std::vector<std::thread> pool;
  for (int w = 1; w < worker_count; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepArtifacts artifacts;
  artifacts.points = static_cast<int>(points.size());
  artifacts.csv = sweep_csv(rows);
  return artifacts;
}

}  // namespace qcolor
