#include "qcolor/verify.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "qcolor/encodings.hpp"
#include "qcolor/graph.hpp"
#include "qcolor/qaoa.hpp"
#include "qcolor/rng.hpp"
#include "qcolor/statevector.hpp"

namespace qcolor {

namespace {

std::vector<Graph> all_graphs(int n) {
  std::vector<std::pair<int, int>> candidates;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) candidates.emplace_back(u, v);
  }
  std::vector<Graph> graphs;
  for (std::uint64_t mask = 0; mask < (1ULL << candidates.size()); ++mask) {
    Graph g(n);
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if ((mask >> i) & 1ULL) {
        g.add_edge(candidates[i].first, candidates[i].second);
      }
    }
    graphs.push_back(std::move(g));
  }
  return graphs;
}

ZPolynomial random_poly(int num_qubits, int num_terms, Rng& rng) {
  ZPolynomial h(num_qubits, 2.0 * rng.uniform01() - 1.0);
  for (int t = 0; t < num_terms; ++t) {
    const int w = rng.uniform_int(1, num_qubits);
    std::vector<int> qubits;
    while (static_cast<int>(qubits.size()) < w) {
      const int q = rng.uniform_int(0, num_qubits - 1);
      bool fresh = true;
      for (int existing : qubits) fresh = fresh && existing != q;
      if (fresh) qubits.push_back(q);
    }
    h.add_term(std::move(qubits), 2.0 * rng.uniform01() - 1.0);
  }
  return h;
}

VerifyCheck check_ground_state_correspondence() {
  VerifyCheck check{"binary ground states = proper colorings (n <= 4)", true, ""};
  long long graphs_checked = 0;
  for (int n = 2; n <= 4 && check.passed; ++n) {
    for (const auto& g : all_graphs(n)) {
      for (int k = 2; k <= 4; ++k) {
        ColoringInstance inst{g, k, Encoding::Binary, 1.0, 1.0, 1.0};
        const auto diag = encode_binary(inst).full_diagonal();
        const ColorDecoder dec(Encoding::Binary, n, k);
        long long zeros = 0;
        for (std::uint64_t x = 0; x < diag.size(); ++x) {
          const bool proper = dec.is_proper_coloring(x, g);
          const bool zero = diag[x] == 0.0;
          if (zero != proper || (!zero && diag[x] < 1.0)) {
            check.passed = false;
            break;
          }
          zeros += zero;
        }
        if (zeros != count_proper_colorings(g, k)) check.passed = false;
        if (!check.passed) break;
      }
      ++graphs_checked;
      if (!check.passed) break;
    }
  }
  check.detail = std::to_string(graphs_checked) + " graphs, k in {2,3,4}";
  return check;
}

VerifyCheck check_onehot_diagonal() {
  VerifyCheck check{"one-hot diagonal matches the quadratic cost", true, ""};
  Rng rng(41);
  int cases = 0;
  for (int trial = 0; trial < 8 && check.passed; ++trial) {
    const int n = rng.uniform_int(2, 4);
    const int k = rng.uniform_int(2, 3);
    if (n * k > 12) continue;
    const Graph g = generate_er(n, 0.5, 300 + trial);
    ColoringInstance inst{g, k, Encoding::OneHot, 1.0, 1.0, 1.0};
    const auto h = encode_onehot(inst);
    const int width = h.num_qubits();
    for (std::uint64_t x = 0; x < (1ULL << width); ++x) {
      long long direct = 0;
      auto bit = [&](int v, int i) -> long long {
        return (x >> (width - 1 - (v * k + i))) & 1ULL;
      };
      for (int v = 0; v < n; ++v) {
        long long s = 0;
        for (int i = 0; i < k; ++i) s += bit(v, i);
        direct += (1 - s) * (1 - s);
      }
      for (const auto& [u, v] : g.edges()) {
        for (int i = 0; i < k; ++i) direct += bit(u, i) * bit(v, i);
      }
      if (h.eval_diagonal(x) != static_cast<double>(direct)) {
        check.passed = false;
        break;
      }
    }
    ++cases;
  }
  check.detail = std::to_string(cases) + " random instances, exhaustive";
  return check;
}

VerifyCheck check_synthesis() {
  VerifyCheck check{"phase synthesis matches the diagonal exponential", true, ""};
  Rng rng(43);
  double worst = 0.0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const auto h = random_poly(n, rng.uniform_int(1, 4), rng);
    const double angle = 4.0 * rng.uniform01() - 2.0;
    const Circuit c = synthesize_phase_circuit(h, angle);
    const auto diag = h.full_diagonal();
    for (std::uint64_t col = 0; col < diag.size(); ++col) {
      Statevector s = Statevector::basis_state(n, col);
      s.apply_circuit(c);
      for (std::uint64_t row = 0; row < diag.size(); ++row) {
        const std::complex<double> want =
            row == col ? std::polar(1.0, -angle * (diag[col] - h.constant()))
                       : std::complex<double>{0.0, 0.0};
        worst = std::max(worst, std::abs(s.amp(row) - want));
      }
    }
  }
  check.passed = worst < 1e-10;
  std::ostringstream detail;
  detail << "max entry error " << worst;
  check.detail = detail.str();
  return check;
}

VerifyCheck check_fast_path() {
  VerifyCheck check{"diagonal fast path matches the gate path", true, ""};
  Rng rng(47);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 6;
    const auto h = random_poly(n, 6, rng);
    const double angle = 2.0 * rng.uniform01() - 1.0;
    Statevector fast = Statevector::plus_state(n);
    fast.apply_diagonal_phase(h, angle);
    Statevector gates = Statevector::plus_state(n);
    gates.apply_circuit(synthesize_phase_circuit(h, angle));
    // The gate path drops the constant; align that global phase.
    const auto phase = std::polar(1.0, -angle * h.constant());
    for (std::uint64_t x = 0; x < fast.dim(); ++x) {
      worst = std::max(worst, std::abs(fast.amp(x) - phase * gates.amp(x)));
    }
  }
  check.passed = worst < 1e-9;
  std::ostringstream detail;
  detail << "max amplitude error " << worst;
  check.detail = detail.str();
  return check;
}

VerifyCheck check_gradients() {
  VerifyCheck check{"parameter-shift matches finite differences", true, ""};
  Rng rng(53);
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = generate_er(3, 0.7, 500 + trial);
    const int k = trial % 2 ? 3 : 4;
    ColoringInstance inst{g, k, Encoding::Binary, 1.0, 1.0, 1.0};
    const Ansatz ansatz(encode_binary(inst), 2);
    ParameterSet params = ParameterSet::zeros(2);
    for (auto& b : params.beta) b = 2.0 * rng.uniform01() - 1.0;
    for (auto& gm : params.gamma) gm = 2.0 * rng.uniform01() - 1.0;
    OptimizerConfig cfg;
    cfg.gradient_method = GradientMethod::ParameterShift;
    const auto shift = gradient(ansatz, params, cfg);
    cfg.gradient_method = GradientMethod::FiniteDifference;
    const auto fd = gradient(ansatz, params, cfg);
    for (std::size_t j = 0; j < shift.size(); ++j) {
      worst = std::max(worst, std::abs(shift[j] - fd[j]));
    }
  }
  check.passed = worst < 1e-5;
  std::ostringstream detail;
  detail << "max component difference " << worst;
  check.detail = detail.str();
  return check;
}

VerifyCheck check_prob_valid() {
  VerifyCheck check{"uniform-state prob_valid = proper colorings / 2^N", true, ""};
  for (int n = 2; n <= 3 && check.passed; ++n) {
    for (const auto& g : all_graphs(n)) {
      for (const int k : {2, 4}) {
        ColoringInstance inst{g, k, Encoding::Binary, 1.0, 1.0, 1.0};
        const int width = inst.num_qubits();
        const double pv =
            prob_valid(Statevector::plus_state(width), inst);
        const double expected =
            static_cast<double>(count_proper_colorings(g, k)) /
            static_cast<double>(1ULL << width);
        if (std::abs(pv - expected) > 1e-12) {
          check.passed = false;
          break;
        }
      }
      if (!check.passed) break;
    }
  }
  check.detail = "all graphs n <= 3, k in {2,4}";
  return check;
}

}  // namespace

std::vector<VerifyCheck> verify_suite() {
  return {check_ground_state_correspondence(), check_onehot_diagonal(),
          check_synthesis(),      check_fast_path(),
          check_gradients(),      check_prob_valid()};
}

bool all_passed(const std::vector<VerifyCheck>& checks) {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

std::string verify_table(const std::vector<VerifyCheck>& checks) {
  std::ostringstream out;
  for (const auto& c : checks) {
    out << (c.passed ? "PASS  " : "FAIL  ") << c.name;
    if (!c.detail.empty()) out << "  (" << c.detail << ")";
    out << '\n';
  }
  return out.str();
}

}  // namespace qcolor
