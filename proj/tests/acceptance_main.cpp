// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <future>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qcolor/baselines.hpp"
#include "qcolor/encodings.hpp"
#include "qcolor/graph.hpp"
#include "qcolor/qaoa.hpp"
#include "qcolor/rng.hpp"
#include "qcolor/statevector.hpp"
#include "test_helpers.hpp"

using namespace qcolor;
namespace th = qcolor::testing;

namespace {

struct CriterionResult {
  bool pass = false;
  std::string detail;
};

ColoringInstance binary_instance(const Graph& g, int k) {
  return ColoringInstance(g, k, Encoding::Binary);  // default weights
}

// Criterion 1: encoding correctness on every connected graph with n <= 5,
// k in {2,3,4}: (a) one-hot diagonal equals the direct quadratic cost,
// exhaustively where n*k <= 16, exactly; (b) binary zero-eigenvalue
// bitstrings decode bijectively onto the proper colorings and every other
// eigenvalue is >= 1 at unit weights.
CriterionResult criterion_encoding_correctness() {
  long long onehot_checked = 0, binary_checked = 0;
  for (int n = 2; n <= 5; ++n) {
    const auto graphs = th::enumerate_graphs(n, /*connected_only=*/true);
    for (const auto& g : graphs) {
      for (int k = 2; k <= 4; ++k) {
        if (n * k <= 16) {
          ColoringInstance inst{g, k, Encoding::OneHot, 1.0, 1.0, 1.0};
          const auto diag = encode_onehot(inst).full_diagonal();
          for (std::uint64_t x = 0; x < diag.size(); ++x) {
            if (diag[x] != static_cast<double>(th::onehot_cost_direct(g, k, x))) {
              return {false, "one-hot mismatch at n=" + std::to_string(n) +
                                 " k=" + std::to_string(k)};
            }
          }
          ++onehot_checked;
        }
        const auto h = encode_binary(binary_instance(g, k));
        const ColorDecoder dec(Encoding::Binary, n, k);
        const auto diag = h.full_diagonal();
        long long zeros = 0;
        for (std::uint64_t x = 0; x < diag.size(); ++x) {
          // Default weights price each violation at 1, so the eigenvalue
          // must equal the violation count exactly.
          const auto v = th::binary_violations(g, k, x);
          if (diag[x] != static_cast<double>(v.conflicts + v.invalid_nodes)) {
            return {false, "binary eigenvalue is not the violation count"};
          }
          if (diag[x] == 0.0) {
            ++zeros;
            if (!dec.is_proper_coloring(x, g)) {
              return {false, "binary zero state is not a proper coloring"};
            }
          } else if (diag[x] < 1.0) {
            return {false, "binary nonzero eigenvalue below 1"};
          }
        }
        if (zeros != count_proper_colorings(g, k)) {
          return {false, "binary zero-state count mismatch"};
        }
        ++binary_checked;
      }
    }
  }
  return {true, std::to_string(onehot_checked) + " one-hot and " +
                    std::to_string(binary_checked) +
                    " binary instances, exhaustive"};
}

// Criterion 2: reported widths for the three reference instances are
// (12 vs 8), (20 vs 10), (24 vs 12).
CriterionResult criterion_widths() {
  const int expected_onehot[] = {12, 20, 24};
  const int expected_binary[] = {8, 10, 12};
  const std::string names[] = {"ref-a", "ref-b", "ref-c"};
  std::ostringstream detail;
  for (int i = 0; i < 3; ++i) {
    const auto ref = reference_instance(names[i]);
    ColoringInstance onehot{ref.graph, ref.k, Encoding::OneHot, 1, 1, 1};
    ColoringInstance binary{ref.graph, ref.k, Encoding::Binary, 1, 1, 1};
    const int w_onehot = encode_onehot(onehot).num_qubits();
    const int w_binary = encode_binary(binary).num_qubits();
    if (w_onehot != expected_onehot[i] || w_binary != expected_binary[i]) {
      return {false, names[i] + " widths " + std::to_string(w_onehot) +
                         " vs " + std::to_string(w_binary)};
    }
    detail << names[i] << "=" << w_onehot << "/" << w_binary << " ";
  }
  return {true, detail.str()};
}

// Criterion 3: >= 200 random (polynomial, angle) pairs on <= 4 qubits match
// the exact diagonal exponential within 1e-10; the weight-4 gadget is
// exactly 6 CNOTs + 1 RZ.
CriterionResult criterion_synthesis() {
  Rng rng(1001);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const auto h = th::random_zpoly(n, rng.uniform_int(1, 5), rng);
    const double angle = 2.0 * std::numbers::pi * (rng.uniform01() - 0.5);
    worst = std::max(worst, th::synthesis_error(h, angle));
  }
  ZPolynomial weight4(4);
  weight4.add_term({0, 1, 2, 3}, 1.0);
  const Circuit gadget = synthesize_phase_circuit(weight4, 0.3);
  int cnots = 0, rzs = 0;
  for (const auto& g : gadget.gates) {
    cnots += g.kind == GateKind::CNOT;
    rzs += g.kind == GateKind::RZ;
  }
  if (cnots != 6 || rzs != 1 || gadget.gate_count() != 7) {
    return {false, "weight-4 gadget has the wrong gate counts"};
  }
  std::ostringstream detail;
  detail << "200 pairs, max entry error " << worst;
  return {worst <= 1e-10, detail.str()};
}

// Criterion 4: parameter-shift vs central finite differences within 1e-5
// over >= 100 random points on instances up to 8 qubits, p <= 3.
CriterionResult criterion_gradients() {
  Rng rng(2002);
  OptimizerConfig shift_cfg, fd_cfg;
  shift_cfg.gradient_method = GradientMethod::ParameterShift;
  fd_cfg.gradient_method = GradientMethod::FiniteDifference;
  double worst = 0.0;
  int points = 0;
  while (points < 100) {
    const int pick = rng.uniform_int(0, 3);
    Encoding encoding = pick == 0 ? Encoding::OneHot : Encoding::Binary;
    int n, k;
    switch (pick) {
      case 0:
        n = rng.uniform_int(2, 4);
        k = 2;
        break;
      case 1:
        n = rng.uniform_int(2, 4);
        k = rng.uniform_int(3, 4);
        break;
      case 2:
        n = rng.uniform_int(2, 8);
        k = 2;
        break;
      default:
        n = 2;
        k = rng.uniform_int(5, 8);
    }
    const Graph g = generate_er(n, 0.7, 3000 + points);
    ColoringInstance inst{g, k, encoding, 1.0, 1.0, 1.0};
    if (inst.num_qubits() > 8) continue;
    const int p = rng.uniform_int(1, 3);
    const Ansatz ansatz(encode(inst), p);
    ParameterSet params = ParameterSet::zeros(p);
    for (auto& b : params.beta) {
      b = std::numbers::pi * (2 * rng.uniform01() - 1);
    }
    for (auto& gm : params.gamma) {
      gm = std::numbers::pi * (2 * rng.uniform01() - 1);
    }
    const auto shift = gradient(ansatz, params, shift_cfg);
    const auto fd = gradient(ansatz, params, fd_cfg);
    for (std::size_t j = 0; j < shift.size(); ++j) {
      worst = std::max(worst, std::abs(shift[j] - fd[j]));
    }
    ++points;
  }
  std::ostringstream detail;
  detail << points << " points, max component difference " << worst;
  return {worst <= 1e-5, detail.str()};
}

std::vector<RunRecord> run_seeds(const Ansatz& ansatz,
                                 const ColoringInstance& inst,
                                 OptimizerConfig cfg,
                                 const std::vector<std::uint64_t>& seeds) {
  std::vector<std::future<RunRecord>> futures;
  for (const auto seed : seeds) {
    OptimizerConfig seeded = cfg;
    seeded.seed = seed;
    futures.push_back(std::async(std::launch::async, [&ansatz, &inst, seeded] {
      return optimize(ansatz, seeded, &inst);
    }));
  }
  std::vector<RunRecord> records;
  for (auto& f : futures) records.push_back(f.get());
  return records;
}

// Criterion 5: the finite-shot estimator passes a 5-sigma unbiasedness
// Z-test (1000 repetitions x 1000 shots on a fixed 6-qubit instance), and
// SGD at 150 shots on ref-a reaches gap <= 0.75 for >= 2 of 5 seeds within
// 500 iterations.
CriterionResult criterion_estimator() {
  const Graph triangle(3, {{0, 1}, {1, 2}, {0, 2}});
  const auto inst6 = binary_instance(triangle, 4);
  const Ansatz fixed(encode_binary(inst6), 1);
  const ParameterSet params{{0.35}, {0.45}};
  const double exact = exact_expectation(fixed, params);
  const int reps = 1000, shots = 1000;
  double sum = 0.0, sum_sq = 0.0;
  for (int r = 0; r < reps; ++r) {
    const double est =
        estimate_expectation(fixed, params, shots, Rng::mix(5005, r));
    sum += est;
    sum_sq += est * est;
  }
  const double mean = sum / reps;
  const double var = (sum_sq - reps * mean * mean) / (reps - 1);
  const double z = (mean - exact) / std::sqrt(var / reps);
  if (std::abs(z) > 5.0) {
    return {false, "unbiasedness Z = " + std::to_string(z)};
  }

  const auto ref = reference_instance("ref-a");
  const auto inst = binary_instance(ref.graph, ref.k);
  const Ansatz ansatz(encode_binary(inst), 6);
  OptimizerConfig cfg;
  cfg.shots = 150;
  cfg.gradient_method = GradientMethod::ParameterShift;
  cfg.max_iterations = 500;
  cfg.stop_gap = 0.75;
  const auto records = run_seeds(ansatz, inst, cfg, {1, 2, 3, 4, 5});
  int reached = 0;
  for (const auto& r : records) reached += r.reached_threshold();
  std::ostringstream detail;
  detail << "Z = " << z << "; SGD(150 shots) reached gap<=0.75 in " << reached
         << "/5 seeds";
  return {reached >= 2, detail.str()};
}

// Criterion 6: binary p=6 on ref-a reaches prob_valid >= 0.5 for the best
// of 5 seeds within 500 iterations, and reaches the stop gap in fewer
// iterations than one-hot p=10 for the median seed (matched seeds).
CriterionResult criterion_convergence() {
  const auto ref = reference_instance("ref-a");
  const std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};

  // Run past the threshold (stop_gap 0) so the prob_valid trajectory is
  // visible; threshold crossings are read off the recorded gaps.
  OptimizerConfig cfg;
  cfg.gradient_method = GradientMethod::FiniteDifference;
  cfg.max_iterations = 500;
  cfg.stop_gap = 0.0;

  const auto binary_inst = binary_instance(ref.graph, ref.k);
  const Ansatz binary(encode_binary(binary_inst), 6);
  const auto binary_runs = run_seeds(binary, binary_inst, cfg, seeds);

  OptimizerConfig onehot_cfg = cfg;
  onehot_cfg.stop_gap = 0.75;  // may stop at the crossing; that is the metric
  const ColoringInstance onehot_inst(ref.graph, ref.k, Encoding::OneHot);
  const Ansatz onehot(encode_onehot(onehot_inst), 10);
  const auto onehot_runs = run_seeds(onehot, onehot_inst, onehot_cfg, seeds);

  double best_prob_valid = 0.0;
  for (const auto& run : binary_runs) {
    for (const auto& row : run.rows) {
      best_prob_valid = std::max(best_prob_valid, row.prob_valid);
    }
  }

  auto median_crossing = [](const std::vector<RunRecord>& runs) {
    std::vector<double> its;
    for (const auto& r : runs) {
      double cross = std::numeric_limits<double>::infinity();
      for (const auto& row : r.rows) {
        if (row.gap <= 0.75) {
          cross = row.iteration;
          break;
        }
      }
      its.push_back(cross);
    }
    std::sort(its.begin(), its.end());
    return its[its.size() / 2];
  };
  const double bin_median = median_crossing(binary_runs);
  const double oh_median = median_crossing(onehot_runs);

  std::ostringstream detail;
  detail << "best prob_valid " << best_prob_valid << "; median iters binary "
         << bin_median << " vs one-hot " << oh_median;
  const bool pass = best_prob_valid >= 0.5 && bin_median < oh_median;
  return {pass, detail.str()};
}

// Criterion 7: Tabu success on ER(n=30, k=3) is >= 0.9 at c=2 and <= 0.1 at
// c=10 over 50 trials each.
CriterionResult criterion_baseline() {
  SweepGrid grid;
  grid.ks = {3};
  grid.connectivities = {2.0, 10.0};
  grid.n = 30;
  grid.trials = 50;
  grid.solver = BaselineSolver::Tabu;
  grid.seed = 77;
  const auto rows = threshold_sweep(grid);
  const double low = static_cast<double>(rows[0].successes) / rows[0].trials;
  const double high = static_cast<double>(rows[1].successes) / rows[1].trials;
  std::ostringstream detail;
  detail << "success " << low << " at c=2, " << high << " at c=10";
  return {low >= 0.9 && high <= 0.1, detail.str()};
}

// Criterion 8: uniform-superposition prob_valid equals
// (#proper colorings) / 2^N on all graphs with n <= 4, k in {2, 4}.
CriterionResult criterion_prob_valid_oracle() {
  long long cases = 0;
  for (int n = 1; n <= 4; ++n) {
    for (const auto& g : th::enumerate_graphs(n, false)) {
      for (const int k : {2, 4}) {
        const auto inst = binary_instance(g, k);
        const int width = inst.num_qubits();
        const double pv = prob_valid(Statevector::plus_state(width), inst);
        const double expected =
            static_cast<double>(count_proper_colorings(g, k)) /
            static_cast<double>(1ULL << width);
        if (std::abs(pv - expected) > 1e-12) {
          return {false, "mismatch at n=" + std::to_string(n) +
                             " k=" + std::to_string(k)};
        }
        ++cases;
      }
    }
  }
  return {true, std::to_string(cases) + " cases, exact to 1e-12"};
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    CriterionResult (*run)();
  };
  const std::vector<Criterion> criteria = {
      {"encoding correctness", criterion_encoding_correctness},
      {"width claim", criterion_widths},
      {"synthesis correctness", criterion_synthesis},
      {"gradient correctness", criterion_gradients},
      {"estimator soundness", criterion_estimator},
      {"end-to-end convergence", criterion_convergence},
      {"baseline phenomenology", criterion_baseline},
      {"prob_valid oracle", criterion_prob_valid_oracle},
  };

  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    const auto result = criteria[i].run();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    std::cout << (result.pass ? "PASS" : "FAIL") << "  criterion " << i + 1
              << ": " << criteria[i].name << " — " << result.detail << "  ["
              << seconds << " s]" << std::endl;
    failures += !result.pass;
  }
  return failures;
}
