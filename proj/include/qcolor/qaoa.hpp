#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qcolor/encodings.hpp"
#include "qcolor/statevector.hpp"
#include "qcolor/zpoly.hpp"

namespace qcolor {

// Full diagonals (and exact minima) are cached up to this register size;
// larger runs fall back to per-term evaluation and sampled minima.
inline constexpr int kDiagonalCacheLimit = 24;

// The 2p angles: beta drives the cost phases, gamma the mixer.
struct ParameterSet {
  std::vector<double> beta;
  std::vector<double> gamma;

  int p() const { return static_cast<int>(beta.size()); }
  static ParameterSet zeros(int p) {
    return {std::vector<double>(p, 0.0), std::vector<double>(p, 0.0)};
  }
};

enum class GradientMethod { ParameterShift, FiniteDifference };

std::string gradient_method_name(GradientMethod m);
GradientMethod gradient_method_from_name(const std::string& name);

struct OptimizerConfig {
  double learning_rate = 0.05;
  double momentum = 0.9;
  int max_iterations = 500;
  int shots = 0;  // 0 = exact expectations
  GradientMethod gradient_method = GradientMethod::ParameterShift;
  std::uint64_t seed = 0;
  double stop_gap = 0.75;
};

// Level-p QAOA over a diagonal cost polynomial with the transverse-field
// mixer (RX on every qubit). State preparation is
//   |+>^N, then for i = 1..p: exp(-i*beta_i*H_c) followed by RX(2*gamma_i)
// on every qubit.
class Ansatz {
 public:
  Ansatz(ZPolynomial cost, int p,
         int diagonal_cache_limit = kDiagonalCacheLimit);

  int p() const { return p_; }
  int num_qubits() const { return cost_.num_qubits(); }
  const ZPolynomial& cost() const { return cost_; }
  const std::vector<double>* diagonal() const {
    return diagonal_.empty() ? nullptr : &diagonal_;
  }
  std::optional<double> exact_min() const { return exact_min_; }
  // Per-term (mask, coefficient) pairs in canonical order.
  const std::vector<std::pair<std::uint64_t, double>>& term_masks() const {
    return term_masks_;
  }

  // Extra rotation spliced into one elementary gate of one level; the
  // mechanism behind per-gate parameter shifts.
  struct GateShift {
    int level = 0;     // 0-based
    bool on_cost = true;
    int item = 0;      // term index (cost) or qubit (mixer)
    double delta = 0.0;
  };

  Statevector prepare(const ParameterSet& params,
                      const GateShift* shift = nullptr) const;
  // Gate-path equivalent (H layer, then synthesized cost + mixer layers).
  Circuit build_circuit(const ParameterSet& params) const;
  Circuit level_circuit(double beta, double gamma) const;

  double eval_state(const Statevector& s) const;  // expectation of the cost
  double eval_index(std::uint64_t basis_index) const;

 private:
  ZPolynomial cost_;
  int p_;
  std::vector<double> diagonal_;
  std::optional<double> exact_min_;
  std::vector<std::pair<std::uint64_t, double>> term_masks_;
};

double exact_expectation(const Ansatz& a, const ParameterSet& params);
// Mean of the cost eigenvalue over finite samples; unbiased estimator of
// exact_expectation. shots must be >= 1.
double estimate_expectation(const Ansatz& a, const ParameterSet& params,
                            int shots, std::uint64_t seed);

// d<H>/d(theta_j) for all 2p parameters, beta first. ParameterShift sums
// exact per-gate shift contributions (estimated expectations when
// cfg.shots > 0, a fresh derived seed per evaluation); FiniteDifference is
// central differencing with step 1e-5 on exact expectations and rejects
// cfg.shots > 0.
std::vector<double> gradient(const Ansatz& a, const ParameterSet& params,
                             const OptimizerConfig& cfg);

// Fraction of |amp|^2 mass on bitstrings decoding to complete proper
// colorings of the instance.
double prob_valid(const Statevector& s, const ColoringInstance& inst);

struct IterationRow {
  int iteration = 0;
  double energy = 0.0;
  double gap = 0.0;
  double grad_norm = 0.0;
  double prob_valid = 0.0;
  double elapsed_ms = 0.0;
};

struct Outcome {
  std::uint64_t index = 0;
  double probability = 0.0;
};

struct RunRecord {
  std::vector<IterationRow> rows;
  ParameterSet final_parameters;
  std::vector<Outcome> top_outcomes;  // top 16 by probability
  double reference_min = 0.0;
  bool reference_min_is_exact = true;  // false: best sampled value, flagged
  int iterations_to_threshold = -1;    // -1: never reached stop_gap
  double final_prob_valid = 0.0;
  double wall_time_ms = 0.0;

  const IterationRow& final_row() const { return rows.back(); }
  bool reached_threshold() const { return iterations_to_threshold >= 0; }
};

// Nesterov accelerated gradient: v <- mu*v - eta*grad(theta + mu*v),
// theta <- theta + v. Initial angles uniform in [0, 0.1) from cfg.seed.
// Stops at max_iterations or when the recorded gap <= cfg.stop_gap.
// When inst is given, per-iteration prob_valid is recorded.
RunRecord optimize(const Ansatz& a, const OptimizerConfig& cfg,
                   const ColoringInstance* inst = nullptr);

// CSV: '#'-prefixed metadata lines, a header row, one row per iteration.
std::string run_record_csv(
    const RunRecord& record,
    const std::vector<std::pair<std::string, std::string>>& metadata);

}  // namespace qcolor
