#include "qcolor/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

#include "qcolor/rng.hpp"

namespace qcolor {

TabuResult tabu_color(const Graph& g, int k, const TabuConfig& cfg) {
  if (k < 1) throw std::invalid_argument("tabu_color: k >= 1");
  if (cfg.tabu_tenure < 1) throw std::invalid_argument("tenure >= 1");
  const auto t0 = std::chrono::steady_clock::now();
  const int n = g.num_nodes();
  const auto adj = g.adjacency_lists();
  Rng rng(cfg.seed);

  std::vector<int> colors(n);
  for (int v = 0; v < n; ++v) colors[v] = rng.uniform_int(0, k - 1);

  // neighbors_with[v][c]: neighbors of v currently colored c.
  std::vector<std::vector<int>> neighbors_with(n, std::vector<int>(k, 0));
  for (const auto& [u, v] : g.edges()) {
    ++neighbors_with[u][colors[v]];
    ++neighbors_with[v][colors[u]];
  }
  auto conflicts_of = [&](const std::vector<int>& a) {
    int c = 0;
    for (const auto& [u, v] : g.edges()) c += a[u] == a[v];
    return c;
  };
  int conflicts = conflicts_of(colors);
  std::vector<int> best_colors = colors;
  int best_conflicts = conflicts;

  // tabu_until[v][c]: first move index at which recoloring v to c is free.
  std::vector<std::vector<long long>> tabu_until(n, std::vector<long long>(k, 0));

  long long move = 0;
  for (; move < cfg.max_moves && best_conflicts > 0; ++move) {
    if (cfg.time_budget_s > 0.0) {
      const double sec = std::chrono::duration<double>(
                             std::chrono::steady_clock::now() - t0)
                             .count();
      if (sec > cfg.time_budget_s) break;
    }
    int chosen_v = -1, chosen_c = -1;
    int chosen_delta = 0;
    int ties = 0;
    for (int v = 0; v < n; ++v) {
      if (neighbors_with[v][colors[v]] == 0) continue;  // not conflicted
      for (int c = 0; c < k; ++c) {
        if (c == colors[v]) continue;
        const int delta = neighbors_with[v][c] - neighbors_with[v][colors[v]];
        const bool tabu = tabu_until[v][c] > move;
        const bool aspiration = conflicts + delta < best_conflicts;
        if (tabu && !aspiration) continue;
        if (chosen_v < 0 || delta < chosen_delta) {
          chosen_v = v;
          chosen_c = c;
          chosen_delta = delta;
          ties = 1;
        } else if (delta == chosen_delta) {
          // Reservoir choice among equal moves keeps the walk unbiased.
          if (rng.uniform_below(++ties) == 0) {
            chosen_v = v;
            chosen_c = c;
          }
        }
      }
    }
    if (chosen_v < 0) {
      // Everything useful is tabu: kick a random conflicted node.
      std::vector<int> conflicted;
      for (int v = 0; v < n; ++v) {
        if (neighbors_with[v][colors[v]] > 0) conflicted.push_back(v);
      }
      if (conflicted.empty()) break;
      chosen_v = conflicted[rng.uniform_below(conflicted.size())];
      chosen_c = (colors[chosen_v] + 1 + rng.uniform_int(0, k - 2)) % k;
      chosen_delta = neighbors_with[chosen_v][chosen_c] -
                     neighbors_with[chosen_v][colors[chosen_v]];
    }
    const int old_color = colors[chosen_v];
    tabu_until[chosen_v][old_color] =
        move + cfg.tabu_tenure + rng.uniform_int(0, 3);
    colors[chosen_v] = chosen_c;
    conflicts += chosen_delta;
    for (int u : adj[chosen_v]) {
      --neighbors_with[u][old_color];
      ++neighbors_with[u][chosen_c];
    }
    if (conflicts < best_conflicts) {
      best_conflicts = conflicts;
      best_colors = colors;
    }
  }

  TabuResult result;
  result.assignment = std::move(best_colors);
  result.conflict_count = best_conflicts;
  result.moves_used = move;
  result.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return result;
}

SaResult simulated_annealing(const Qubo& q, const SaConfig& cfg) {
  if (!(cfg.beta_initial > 0.0) || !(cfg.beta_final > cfg.beta_initial)) {
    throw std::invalid_argument("need 0 < beta_initial < beta_final");
  }
  if (cfg.sweeps < 1) throw std::invalid_argument("sweeps >= 1");
  const int n = q.n;
  Rng rng(cfg.seed);
  std::vector<int> x(n);
  for (int i = 0; i < n; ++i) x[i] = static_cast<int>(rng.uniform_below(2));
  double energy = q.value(x);
  std::vector<int> best = x;
  double best_energy = energy;

  const double ratio = cfg.beta_final / cfg.beta_initial;
  for (int sweep = 0; sweep < cfg.sweeps; ++sweep) {
    const double frac =
        cfg.sweeps == 1 ? 1.0 : static_cast<double>(sweep) / (cfg.sweeps - 1);
    const double beta = cfg.beta_initial * std::pow(ratio, frac);
    for (int i = 0; i < n; ++i) {
      // Flip delta for symmetric Q: (1-2x_i) * (Q_ii + 2 sum_{j!=i} Q_ij x_j).
      double field = q.at(i, i);
      for (int j = 0; j < n; ++j) {
        if (j != i && x[j]) field += 2.0 * q.at(i, j);
      }
      const double delta = (1 - 2 * x[i]) * field;
      if (delta <= 0.0 || rng.uniform01() < std::exp(-beta * delta)) {
        x[i] ^= 1;
        energy += delta;
        if (energy < best_energy) {
          best_energy = energy;
          best = x;
        }
      }
    }
  }
  return {std::move(best), best_energy};
}

BaselineSolver baseline_solver_from_name(const std::string& name) {
  if (name == "tabu") return BaselineSolver::Tabu;
  if (name == "sa" || name == "annealing") return BaselineSolver::Sa;
  throw std::invalid_argument("unknown baseline solver: " + name);
}

std::string baseline_solver_name(BaselineSolver s) {
  return s == BaselineSolver::Tabu ? "tabu" : "sa";
}

SweepRow sweep_point(int k, int n, double p, int trials,
                     const SweepGrid& grid) {
  SweepRow row;
  row.k = k;
  row.n = n;
  row.p = p;
  row.trials = trials;
  double connectivity_total = 0.0;
  double conflict_total = 0.0;
  double time_total = 0.0;
  std::uint64_t p_bits = 0;
  std::memcpy(&p_bits, &p, sizeof(p_bits));
  const std::uint64_t point_seed = Rng::mix(
      Rng::mix(grid.seed, p_bits),
      (static_cast<std::uint64_t>(k) << 32) | static_cast<std::uint32_t>(n));
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t trial_seed = Rng::mix(point_seed, trial);
    const Graph g = generate_er(n, p, trial_seed);
    connectivity_total += average_connectivity(g);
    int errors = 0;
    const auto t0 = std::chrono::steady_clock::now();
    if (grid.solver == BaselineSolver::Tabu) {
      TabuConfig cfg = grid.tabu;
      cfg.seed = Rng::mix(trial_seed, 1);
      const auto result = tabu_color(g, k, cfg);
      errors = validate_coloring(g, result.assignment, k).total_errors();
    } else {
      const ColoringInstance inst(g, k, Encoding::OneHot);
      const auto qubo = to_qubo(encode_onehot(inst));
      SaConfig cfg = grid.sa;
      cfg.seed = Rng::mix(trial_seed, 2);
      const auto result = simulated_annealing(qubo, cfg);
      // Read the one-hot blocks back as a coloring.
      std::uint64_t index = 0;
      for (int b = 0; b < qubo.n; ++b) {
        index = (index << 1) | static_cast<unsigned>(result.bits[b]);
      }
      const ColorDecoder dec(Encoding::OneHot, n, k);
      errors = validate_coloring(g, dec.decode(index), k).total_errors();
    }
    time_total += std::chrono::duration<double, std::milli>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
    if (errors == 0) ++row.successes;
    conflict_total += errors;
  }
  row.connectivity = trials > 0 ? connectivity_total / trials : 0.0;
  row.mean_conflicts = trials > 0 ? conflict_total / trials : 0.0;
  row.mean_time_ms = trials > 0 ? time_total / trials : 0.0;
  return row;
}

std::vector<SweepRow> threshold_sweep(const SweepGrid& grid) {
  std::vector<SweepRow> rows;
  for (const int k : grid.ks) {
    for (const double c : grid.connectivities) {
      rows.push_back(sweep_point(k, grid.n, c / grid.n, grid.trials, grid));
    }
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out.precision(12);
  out << "k,n,p,connectivity,volume,trials,successes,mean_conflicts,"
         "mean_time_ms\n";
  for (const auto& r : rows) {
    out << r.k << ',' << r.n << ',' << r.p << ',' << r.connectivity << ','
        << problem_volume(r.n, r.k, r.p) << ',' << r.trials << ','
        << r.successes << ',' << r.mean_conflicts << ',' << r.mean_time_ms
        << '\n';
  }
  return out.str();
}

}  // namespace qcolor
