#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcolor/baselines.hpp"
#include "qcolor/encodings.hpp"
#include "qcolor/graph.hpp"
#include "qcolor/qaoa.hpp"

namespace qcolor {

enum class SweepSolverKind { Tabu, Sa, Qaoa };

// One experiment description. Parsed from flat "section.key=value" text
// (a '#' starts a comment) or from the equivalent nested JSON; unknown
// keys are rejected, never dropped.
struct ExperimentConfig {
  // graph source: exactly one of reference name / file / er
  std::string graph_source = "er";  // "ref-a" | "ref-b" | "ref-c" | "file" | "er"
  std::string graph_file;
  int er_n = 10;
  double er_p_percent = 20.0;  // the CLI speaks percent, internals use fractions
  std::uint64_t er_seed = 1;

  std::optional<int> k;  // defaults to the reference instance's color count
  Encoding encoding = Encoding::Binary;
  // unset weights resolve to the normalized (violation-count) defaults
  std::optional<double> weight_C;
  std::optional<double> weight_D;
  std::optional<double> weight_P;

  int p = 1;
  std::optional<int> p_onehot;  // per-encoding overrides for compare
  std::optional<int> p_binary;
  int shots = 0;
  GradientMethod gradient_method = GradientMethod::ParameterShift;

  OptimizerConfig optimizer;

  std::string out_dir = ".";

  // sweep grid
  std::vector<int> sweep_ks;
  std::vector<double> sweep_connectivities;
  std::vector<double> sweep_p_percents;
  int sweep_n = 30;
  int sweep_trials = 20;
  SweepSolverKind sweep_solver = SweepSolverKind::Tabu;
  long long sweep_budget = 10000;  // max points * trials before refusing
  int sa_sweeps = 1000;
  long long tabu_max_moves = 20000;
};

ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig parse_config_json(const std::string& text);
// Dispatches on a leading '{' (after whitespace) or a .json suffix.
ExperimentConfig load_config_file(const std::string& path);

// Materialized instance: graph resolved from the configured source.
struct ResolvedInstance {
  std::string source_name;
  Graph graph;
  int k;
};
ResolvedInstance resolve_graph(const ExperimentConfig& cfg);

struct SolveArtifacts {
  RunRecord record;
  std::string run_csv;
  std::string summary_json;   // pretty-printed, schema_version 1
  std::string circuit_text;
  int num_qubits = 0;
  int per_level_depth = 0;
  int total_depth = 0;
  int exit_code = 0;  // 0 reached stop_gap, 2 otherwise
};

SolveArtifacts run_solve(const ExperimentConfig& cfg);
// Writes run.csv, summary.json, circuit.txt under cfg.out_dir (created on
// demand); file names take an optional suffix like "_binary".
void write_solve_artifacts(const SolveArtifacts& artifacts,
                           const std::string& out_dir,
                           const std::string& suffix = "");

struct CompareArtifacts {
  SolveArtifacts onehot;
  SolveArtifacts binary;
  std::string compare_json;
  std::string table;  // human-readable side-by-side summary
  int exit_code = 0;
};

// Both encodings on the same graph with matched optimizer seeds.
CompareArtifacts run_compare(const ExperimentConfig& cfg);

struct SweepArtifacts {
  std::string csv;
  int points = 0;
};

SweepArtifacts run_sweep(const ExperimentConfig& cfg, int jobs = 1);

}  // namespace qcolor
