#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qcolor/experiment.hpp"
#include "qcolor/graph.hpp"
#include "qcolor/verify.hpp"

namespace {

struct CommonFlags {
  std::string config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

qcolor::ExperimentConfig load_with_overrides(const CommonFlags& flags) {
  auto cfg = qcolor::load_config_file(flags.config_path);
  if (flags.out_dir) cfg.out_dir = *flags.out_dir;
  if (flags.seed) cfg.optimizer.seed = *flags.seed;
  return cfg;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::filesystem::create_directories(path.parent_path().empty()
                                          ? "."
                                          : path.parent_path().string());
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qcolor: QAOA and classical solvers for graph k-coloring"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* solve = app.add_subcommand(
      "solve", "run one QAOA optimization and write run.csv / summary.json");
  solve->add_option("--config", flags.config_path, "config file")->required();
  solve->add_option("--out", flags.out_dir, "output directory override");
  solve->add_option("--seed", flags.seed, "optimizer seed override");

  auto* compare = app.add_subcommand(
      "compare", "run both encodings on the same graph with matched seeds");
  compare->add_option("--config", flags.config_path, "config file")->required();
  compare->add_option("--out", flags.out_dir, "output directory override");
  compare->add_option("--seed", flags.seed, "optimizer seed override");

  auto* sweep = app.add_subcommand(
      "sweep", "success-rate grid over (n, k, p) for a chosen solver");
  sweep->add_option("--config", flags.config_path, "config file")->required();
  sweep->add_option("--out", flags.out_dir, "output directory override");
  sweep->add_option("--seed", flags.seed, "base seed override");
  sweep->add_option("--jobs", flags.jobs, "worker pool size")
      ->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand(
      "verify", "run the fast invariant suite and print a pass/fail table");

  int gen_n = 10;
  double gen_p_percent = 20.0;
  std::uint64_t gen_seed = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("gen-graph", "write a random ER graph file");
  gen->add_option("--n", gen_n, "node count")->required();
  gen->add_option("--p-percent", gen_p_percent, "edge probability in percent")
      ->required();
  gen->add_option("--seed", gen_seed, "generator seed");
  gen->add_option("--out", gen_out, "output path")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) {
      const auto cfg = load_with_overrides(flags);
      const auto artifacts = qcolor::run_solve(cfg);
      qcolor::write_solve_artifacts(artifacts, cfg.out_dir);
      std::cout << "qubits=" << artifacts.num_qubits
                << " iterations=" << artifacts.record.final_row().iteration
                << " final_gap=" << artifacts.record.final_row().gap
                << " prob_valid=" << artifacts.record.final_prob_valid << '\n'
                << "artifacts in " << cfg.out_dir << '\n';
      return artifacts.exit_code;
    }
    if (compare->parsed()) {
      const auto cfg = load_with_overrides(flags);
      const auto artifacts = qcolor::run_compare(cfg);
      qcolor::write_solve_artifacts(artifacts.onehot, cfg.out_dir, "_onehot");
      qcolor::write_solve_artifacts(artifacts.binary, cfg.out_dir, "_binary");
      write_text(std::filesystem::path(cfg.out_dir) / "compare.json",
                 artifacts.compare_json);
      std::cout << artifacts.table;
      return artifacts.exit_code;
    }
    if (sweep->parsed()) {
      const auto cfg = load_with_overrides(flags);
      const auto artifacts = qcolor::run_sweep(cfg, flags.jobs);
      write_text(std::filesystem::path(cfg.out_dir) / "sweep.csv",
                 artifacts.csv);
      std::cout << artifacts.csv;
      return 0;
    }
    if (verify->parsed()) {
      const auto checks = qcolor::verify_suite();
      std::cout << qcolor::verify_table(checks);
      return qcolor::all_passed(checks) ? 0 : 2;
    }
    if (gen->parsed()) {
      if (gen_p_percent < 0.0 || gen_p_percent > 100.0) {
        throw std::invalid_argument("--p-percent must be in [0, 100]");
      }
      const auto g = qcolor::generate_er(gen_n, gen_p_percent / 100.0, gen_seed);
      qcolor::write_graph_file(gen_out, g);
      std::cout << "wrote " << gen_out << ": n=" << g.num_nodes()
                << " m=" << g.num_edges()
                << " connectivity=" << qcolor::average_connectivity(g) << '\n';
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
