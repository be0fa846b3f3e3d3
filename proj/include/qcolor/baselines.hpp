#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qcolor/encodings.hpp"
#include "qcolor/graph.hpp"

namespace qcolor {

struct TabuConfig {
  int tabu_tenure = 7;         // plus a random component in [0, 3] per move
  long long max_moves = 20000;
  std::uint64_t seed = 0;
  double time_budget_s = 0.0;  // 0 = no wall-clock cap
};

struct TabuResult {
  std::vector<int> assignment;  // always a full assignment
  int conflict_count = 0;
  long long moves_used = 0;
  double elapsed_ms = 0.0;
};

// TabuCol-style search: random full start; a move recolors one conflicted
// node; (node, old color) goes tabu for tenure moves; aspiration accepts
// any move reaching a new global best. Returns the best seen.
TabuResult tabu_color(const Graph& g, int k, const TabuConfig& cfg);

struct SaConfig {
  int sweeps = 1000;
  double beta_initial = 0.1;  // inverse temperature, geometric schedule
  double beta_final = 10.0;
  std::uint64_t seed = 0;
};

struct SaResult {
  std::vector<int> bits;
  double energy = 0.0;  // includes the QUBO offset
};

// Single-spin-flip Metropolis sweeps under a geometric inverse-temperature
// schedule; returns the best-seen bitstring and its energy.
SaResult simulated_annealing(const Qubo& q, const SaConfig& cfg);

enum class BaselineSolver { Tabu, Sa };

BaselineSolver baseline_solver_from_name(const std::string& name);
std::string baseline_solver_name(BaselineSolver s);

struct SweepRow {
  int k = 0;
  int n = 0;
  double p = 0.0;
  double connectivity = 0.0;  // empirical mean degree over the trials
  int trials = 0;
  int successes = 0;          // runs ending with zero coloring errors
  double mean_conflicts = 0.0;
  double mean_time_ms = 0.0;
};

struct SweepGrid {
  std::vector<int> ks;
  std::vector<double> connectivities;  // p = c / n per point
  int n = 30;
  int trials = 20;
  BaselineSolver solver = BaselineSolver::Tabu;
  std::uint64_t seed = 0;
  TabuConfig tabu;  // per-trial seeds are derived
  SaConfig sa;
};

// One ER coloring attempt; shared by the sweep and the CLI.
SweepRow sweep_point(int k, int n, double p, int trials,
                     const SweepGrid& grid);

// Success-rate table over the (k, connectivity) grid.
std::vector<SweepRow> threshold_sweep(const SweepGrid& grid);

// Header "k,n,p,connectivity,volume,trials,successes,mean_conflicts,mean_time_ms".
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace qcolor
