#include "qcolor/qaoa.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qcolor/rng.hpp"

namespace qcolor {

namespace {

// 1e-5 keeps the h^2 truncation under 1e-6 on the steepest 8-qubit
// instances while staying far above double-precision roundoff.
constexpr double kFiniteDifferenceStep = 1e-5;

void check_params(const Ansatz& a, const ParameterSet& params) {
  if (params.p() != a.p() ||
      static_cast<int>(params.gamma.size()) != a.p()) {
    throw std::invalid_argument("parameter count does not match ansatz level");
  }
  for (double b : params.beta) {
    if (!std::isfinite(b)) throw std::invalid_argument("non-finite beta");
  }
  for (double g : params.gamma) {
    if (!std::isfinite(g)) throw std::invalid_argument("non-finite gamma");
  }
}

}  // namespace

std::string gradient_method_name(GradientMethod m) {
  return m == GradientMethod::ParameterShift ? "parameter_shift"
                                             : "finite_difference";
}

GradientMethod gradient_method_from_name(const std::string& name) {
  if (name == "parameter_shift" || name == "parameter-shift" || name == "shift") {
    return GradientMethod::ParameterShift;
  }
  if (name == "finite_difference" || name == "finite-difference" || name == "fd") {
    return GradientMethod::FiniteDifference;
  }
  throw std::invalid_argument("unknown gradient method: " + name);
}

Ansatz::Ansatz(ZPolynomial cost, int p, int diagonal_cache_limit)
    : cost_(std::move(cost)), p_(p) {
  if (p < 1) throw std::invalid_argument("ansatz level p must be >= 1");
  if (cost_.num_qubits() < 1) {
    throw std::invalid_argument("cost polynomial needs at least one qubit");
  }
  term_masks_.reserve(cost_.terms().size());
  for (const auto& [qubits, coeff] : cost_.terms()) {
    term_masks_.emplace_back(cost_.term_mask(qubits), coeff);
  }
  if (cost_.num_qubits() <= diagonal_cache_limit) {
    diagonal_ = cost_.full_diagonal();
    exact_min_ = *std::min_element(diagonal_.begin(), diagonal_.end());
  }
}

Statevector Ansatz::prepare(const ParameterSet& params,
                            const GateShift* shift) const {
  check_params(*this, params);
  Statevector s = Statevector::plus_state(num_qubits());
  for (int level = 0; level < p_; ++level) {
    if (!diagonal_.empty()) {
      s.apply_diagonal_phase(diagonal_, params.beta[level]);
    } else {
      s.apply_diagonal_phase(cost_, params.beta[level]);
    }
    if (shift && shift->on_cost && shift->level == level) {
      const auto& [mask, coeff] = term_masks_[shift->item];
      s.apply_term_phase(mask, shift->delta * coeff);
    }
    for (int q = 0; q < num_qubits(); ++q) {
      s.apply_rx(2.0 * params.gamma[level], q);
    }
    if (shift && !shift->on_cost && shift->level == level) {
      s.apply_rx(2.0 * shift->delta, shift->item);
    }
  }
  return s;
}

Circuit Ansatz::level_circuit(double beta, double gamma) const {
  Circuit c = synthesize_phase_circuit(cost_, beta);
  for (int q = 0; q < num_qubits(); ++q) {
    c.gates.push_back(Gate::rx(2.0 * gamma, q));
  }
  return c;
}

Circuit Ansatz::build_circuit(const ParameterSet& params) const {
  check_params(*this, params);
  Circuit c;
  c.num_qubits = num_qubits();
  for (int q = 0; q < num_qubits(); ++q) c.gates.push_back(Gate::h(q));
  for (int level = 0; level < p_; ++level) {
    c.append(level_circuit(params.beta[level], params.gamma[level]));
  }
  return c;
}

double Ansatz::eval_state(const Statevector& s) const {
  return diagonal_.empty() ? expectation(s, cost_)
                           : expectation(s, diagonal_);
}

double Ansatz::eval_index(std::uint64_t basis_index) const {
  return diagonal_.empty() ? cost_.eval_diagonal(basis_index)
                           : diagonal_[basis_index];
}

double exact_expectation(const Ansatz& a, const ParameterSet& params) {
  return a.eval_state(a.prepare(params));
}

double estimate_expectation(const Ansatz& a, const ParameterSet& params,
                            int shots, std::uint64_t seed) {
  if (shots < 1) {
    throw std::invalid_argument(
        "estimate_expectation needs shots >= 1 (use exact_expectation)");
  }
  const Statevector s = a.prepare(params);
  const auto draws = s.sample(shots, seed);
  double total = 0.0;
  for (const auto x : draws) total += a.eval_index(x);
  return total / shots;
}

namespace {

// One expectation evaluation, exact or sampled, with an optional per-gate
// shift; sampled evaluations burn one derived seed each.
class Evaluator {
 public:
  Evaluator(const Ansatz& a, const OptimizerConfig& cfg)
      : ansatz_(a), shots_(cfg.shots), base_seed_(cfg.seed) {}

  double operator()(const ParameterSet& params,
                    const Ansatz::GateShift* shift = nullptr) {
    const Statevector s = ansatz_.prepare(params, shift);
    if (shots_ <= 0) return ansatz_.eval_state(s);
    const auto draws = s.sample(shots_, Rng::mix(base_seed_, counter_++));
    double total = 0.0;
    for (const auto x : draws) total += ansatz_.eval_index(x);
    return total / shots_;
  }

 private:
  const Ansatz& ansatz_;
  int shots_;
  std::uint64_t base_seed_;
  std::uint64_t counter_ = 0;
};

std::vector<double> parameter_shift_gradient(const Ansatz& a,
                                             const ParameterSet& params,
                                             Evaluator& eval) {
  const int p = a.p();
  std::vector<double> grad(2 * p, 0.0);
  // Cost angles: each term exp(-i*beta*c*Z_S) is exp(-i*(2c)*beta*Z_S/2);
  // shifting that gate's phase argument by +/- pi/2 means shifting beta by
  // +/- pi/(4c) on the single gate, with an outer factor of c.
  for (int level = 0; level < p; ++level) {
    double total = 0.0;
    for (int t = 0; t < static_cast<int>(a.term_masks().size()); ++t) {
      const double coeff = a.term_masks()[t].second;
      const double delta = std::numbers::pi / (4.0 * coeff);
      Ansatz::GateShift plus{level, true, t, delta};
      Ansatz::GateShift minus{level, true, t, -delta};
      total += coeff * (eval(params, &plus) - eval(params, &minus));
    }
    grad[level] = total;
  }
  // Mixer angles: RX(2*gamma) per qubit has multiplier 2, so the per-gate
  // shift is +/- pi/4 with unit outer factor.
  for (int level = 0; level < p; ++level) {
    double total = 0.0;
    for (int q = 0; q < a.num_qubits(); ++q) {
      Ansatz::GateShift plus{level, false, q, std::numbers::pi / 4.0};
      Ansatz::GateShift minus{level, false, q, -std::numbers::pi / 4.0};
      total += eval(params, &plus) - eval(params, &minus);
    }
    grad[p + level] = total;
  }
  return grad;
}

std::vector<double> finite_difference_gradient(const Ansatz& a,
                                               const ParameterSet& params,
                                               Evaluator& eval) {
  const int p = a.p();
  std::vector<double> grad(2 * p, 0.0);
  const double h = kFiniteDifferenceStep;
  for (int j = 0; j < 2 * p; ++j) {
    ParameterSet up = params;
    ParameterSet down = params;
    double& u = j < p ? up.beta[j] : up.gamma[j - p];
    double& d = j < p ? down.beta[j] : down.gamma[j - p];
    u += h;
    d -= h;
    grad[j] = (eval(up) - eval(down)) / (2.0 * h);
  }
  return grad;
}

}  // namespace

std::vector<double> gradient(const Ansatz& a, const ParameterSet& params,
                             const OptimizerConfig& cfg) {
  check_params(a, params);
  Evaluator eval(a, cfg);
  if (cfg.gradient_method == GradientMethod::FiniteDifference) {
    if (cfg.shots > 0) {
      throw std::invalid_argument(
          "finite-difference gradients require exact expectations (shots=0)");
    }
    return finite_difference_gradient(a, params, eval);
  }
  return parameter_shift_gradient(a, params, eval);
}

double prob_valid(const Statevector& s, const ColoringInstance& inst) {
  if (s.num_qubits() != inst.num_qubits()) {
    throw std::invalid_argument("state width does not match instance");
  }
  const ColorDecoder dec(inst.encoding, inst.graph.num_nodes(), inst.k);
  double total = 0.0;
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    if (dec.is_proper_coloring(x, inst.graph)) total += s.probability(x);
  }
  return total;
}

namespace {

std::vector<Outcome> top_outcomes(const Statevector& s, int count) {
  std::vector<Outcome> all;
  all.reserve(s.dim());
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    all.push_back({x, s.probability(x)});
  }
  const auto by_prob = [](const Outcome& a, const Outcome& b) {
    if (a.probability != b.probability) return a.probability > b.probability;
    return a.index < b.index;
  };
  const std::size_t keep = std::min<std::size_t>(count, all.size());
  std::partial_sort(all.begin(), all.begin() + keep, all.end(), by_prob);
  all.resize(keep);
  return all;
}

}  // namespace

RunRecord optimize(const Ansatz& a, const OptimizerConfig& cfg,
                   const ColoringInstance* inst) {
  if (cfg.learning_rate < 0 || cfg.momentum < 0 || cfg.momentum >= 1.0) {
    throw std::invalid_argument("invalid optimizer hyperparameters");
  }
  if (cfg.stop_gap < 0) throw std::invalid_argument("stop_gap must be >= 0");
  const auto t0 = std::chrono::steady_clock::now();
  auto elapsed_ms = [&t0] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  const int p = a.p();
  Rng init_rng(cfg.seed);
  ParameterSet params = ParameterSet::zeros(p);
  for (int i = 0; i < p; ++i) params.beta[i] = 0.1 * init_rng.uniform01();
  for (int i = 0; i < p; ++i) params.gamma[i] = 0.1 * init_rng.uniform01();

  // Validity mask for the per-iteration prob_valid column.
  std::vector<char> valid_mask;
  if (inst && a.diagonal()) {
    const ColorDecoder dec(inst->encoding, inst->graph.num_nodes(), inst->k);
    valid_mask.resize(std::size_t{1} << a.num_qubits());
    for (std::uint64_t x = 0; x < valid_mask.size(); ++x) {
      valid_mask[x] = dec.is_proper_coloring(x, inst->graph);
    }
  }

  RunRecord record;
  record.reference_min_is_exact = a.exact_min().has_value();
  double reference_min = a.exact_min().value_or(
      std::numeric_limits<double>::infinity());

  Statevector state = a.prepare(params);
  auto observe = [&](int iteration, double grad_norm) {
    IterationRow row;
    row.iteration = iteration;
    row.energy = a.eval_state(state);
    if (!record.reference_min_is_exact) {
      // No brute-force minimum available: track the best sampled value.
      const auto draws = state.sample(1024, Rng::mix(cfg.seed, 0xb5ULL + iteration));
      for (const auto x : draws) {
        reference_min = std::min(reference_min, a.eval_index(x));
      }
    }
    row.gap = row.energy - reference_min;
    row.grad_norm = grad_norm;
    if (!valid_mask.empty()) {
      double pv = 0.0;
      for (std::uint64_t x = 0; x < valid_mask.size(); ++x) {
        if (valid_mask[x]) pv += state.probability(x);
      }
      row.prob_valid = pv;
    } else if (inst) {
      row.prob_valid = prob_valid(state, *inst);
    } else {
      row.prob_valid = std::numeric_limits<double>::quiet_NaN();
    }
    row.elapsed_ms = elapsed_ms();
    record.rows.push_back(row);
    return row.gap <= cfg.stop_gap;
  };

  bool reached = observe(0, 0.0);
  std::vector<double> velocity(2 * p, 0.0);
  for (int iter = 1; iter <= cfg.max_iterations && !reached; ++iter) {
    OptimizerConfig iter_cfg = cfg;
    iter_cfg.seed = Rng::mix(cfg.seed, iter);  // fresh sampling seeds per step
    ParameterSet lookahead = params;
    for (int i = 0; i < p; ++i) {
      lookahead.beta[i] += cfg.momentum * velocity[i];
      lookahead.gamma[i] += cfg.momentum * velocity[p + i];
    }
    const auto grad = gradient(a, lookahead, iter_cfg);
    double norm_sq = 0.0;
    for (int j = 0; j < 2 * p; ++j) {
      velocity[j] = cfg.momentum * velocity[j] - cfg.learning_rate * grad[j];
      norm_sq += grad[j] * grad[j];
    }
    for (int i = 0; i < p; ++i) {
      params.beta[i] += velocity[i];
      params.gamma[i] += velocity[p + i];
    }
    state = a.prepare(params);
    reached = observe(iter, std::sqrt(norm_sq));
  }

  record.final_parameters = params;
  record.top_outcomes = top_outcomes(state, 16);
  record.reference_min = reference_min;
  record.final_prob_valid = record.rows.back().prob_valid;
  for (const auto& row : record.rows) {
    if (row.gap <= cfg.stop_gap) {
      record.iterations_to_threshold = row.iteration;
      break;
    }
  }
  record.wall_time_ms = elapsed_ms();
  return record;
}

std::string run_record_csv(
    const RunRecord& record,
    const std::vector<std::pair<std::string, std::string>>& metadata) {
  std::ostringstream out;
  out.precision(12);
  for (const auto& [key, value] : metadata) {
    out << "# " << key << '=' << value << '\n';
  }
  out << "iter,energy,gap,grad_norm,prob_valid,elapsed_ms\n";
  for (const auto& row : record.rows) {
    out << row.iteration << ',' << row.energy << ',' << row.gap << ','
        << row.grad_norm << ',' << row.prob_valid << ',' << row.elapsed_ms
        << '\n';
  }
  return out.str();
}

}  // namespace qcolor
