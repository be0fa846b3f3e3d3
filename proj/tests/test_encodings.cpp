#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "qcolor/encodings.hpp"
#include "qcolor/graph.hpp"
#include "test_helpers.hpp"

using namespace qcolor;

namespace {

ColoringInstance make_inst(const Graph& g, int k, Encoding e) {
  return ColoringInstance{g, k, e, 1.0, 1.0, 1.0};
}

}  // namespace

TEST_CASE("qubit budgets") {
  REQUIRE(bits_per_node(Encoding::OneHot, 3) == 3);
  REQUIRE(bits_per_node(Encoding::Binary, 3) == 2);
  REQUIRE(bits_per_node(Encoding::Binary, 4) == 2);
  REQUIRE(bits_per_node(Encoding::Binary, 5) == 3);
  REQUIRE(bits_per_node(Encoding::Binary, 2) == 1);
  REQUIRE_THROWS(bits_per_node(Encoding::Binary, 1));

  const auto a = reference_instance("ref-a");
  REQUIRE(num_qubits_for(Encoding::OneHot, a.graph.num_nodes(), a.k) == 12);
  REQUIRE(num_qubits_for(Encoding::Binary, a.graph.num_nodes(), a.k) == 8);
}

TEST_CASE("qubit-count law: binary width never exceeds one-hot width") {
  for (int k = 2; k <= 16; ++k) {
    REQUIRE(bits_per_node(Encoding::Binary, k) <= bits_per_node(Encoding::OneHot, k));
  }
  // The ratio grows with k.
  REQUIRE(bits_per_node(Encoding::OneHot, 16) / bits_per_node(Encoding::Binary, 16) == 4);
}

TEST_CASE("one-hot encoder matches the quadratic cost on a single node") {
  const Graph one(1);
  const auto h = encode_onehot(make_inst(one, 2, Encoding::OneHot));
  REQUIRE(h.num_qubits() == 2);
  // (x1, x2): 00 -> 1, 01 -> 0, 10 -> 0, 11 -> 1
  REQUIRE(h.eval_diagonal(0b00) == 1.0);
  REQUIRE(h.eval_diagonal(0b01) == 0.0);
  REQUIRE(h.eval_diagonal(0b10) == 0.0);
  REQUIRE(h.eval_diagonal(0b11) == 1.0);
}

TEST_CASE("one-hot diagonal equals direct evaluation, exhaustively") {
  Rng rng(3);
  for (int trial = 0; trial < 6; ++trial) {
    const int n = rng.uniform_int(2, 4);
    const int k = rng.uniform_int(2, 3);
    if (n * k > 12) continue;
    const Graph g = generate_er(n, 0.5, 100 + trial);
    const auto h = encode_onehot(make_inst(g, k, Encoding::OneHot));
    for (std::uint64_t x = 0; x < (1ULL << (n * k)); ++x) {
      REQUIRE(h.eval_diagonal(x) ==
              static_cast<double>(testing::onehot_cost_direct(g, k, x)));
    }
  }
}

TEST_CASE("proper colorings sit at the one-hot global minimum of zero") {
  const auto ref = reference_instance("ref-a");
  const auto h = encode_onehot(make_inst(ref.graph, ref.k, Encoding::OneHot));
  const ColorDecoder dec(Encoding::OneHot, ref.graph.num_nodes(), ref.k);
  const auto index = dec.encode({0, 1, 2, 1});  // proper for the diamond
  REQUIRE(h.eval_diagonal(index) == 0.0);
  const auto diag = h.full_diagonal();
  for (const double value : diag) REQUIRE(value >= 0.0);
}

TEST_CASE("binary single edge k=4 matches the four-term expansion") {
  const Graph edge(2, {{0, 1}});
  const auto h = encode_binary(make_inst(edge, 4, Encoding::Binary));
  REQUIRE(h.num_qubits() == 4);
  // Qubits: node 0 -> {0,1}, node 1 -> {2,3}.
  REQUIRE(h.constant() == 4.0);
  REQUIRE(h.num_terms() == 3);
  REQUIRE(h.terms().at({0, 2}) == 4.0);  // Z_{v,1} Z_{w,1}
  REQUIRE(h.terms().at({1, 3}) == 4.0);  // Z_{v,2} Z_{w,2}
  REQUIRE(h.terms().at({0, 1, 2, 3}) == 4.0);
  // Whole polynomial, constant included, against the direct cost.
  for (std::uint64_t x = 0; x < 16; ++x) {
    REQUIRE(h.eval_diagonal(x) ==
            static_cast<double>(testing::binary_cost_direct(edge, 4, x)));
  }
}

TEST_CASE("binary k=3 penalty gives 4 on the disallowed code") {
  const Graph one(1);
  const auto h = encode_binary(make_inst(one, 3, Encoding::Binary));
  REQUIRE(h.num_qubits() == 2);
  REQUIRE(h.eval_diagonal(0b11) == 4.0);  // code 3 is disallowed
  REQUIRE(h.eval_diagonal(0b00) == 0.0);
  REQUIRE(h.eval_diagonal(0b01) == 0.0);
  REQUIRE(h.eval_diagonal(0b10) == 0.0);
}

TEST_CASE("binary encoder rejects k < 2") {
  const Graph one(1);
  REQUIRE_THROWS(encode_binary(make_inst(one, 1, Encoding::Binary)));
}

TEST_CASE("binary width for ref-a is 8 qubits") {
  const auto ref = reference_instance("ref-a");
  const auto h = encode_binary(make_inst(ref.graph, ref.k, Encoding::Binary));
  REQUIRE(h.num_qubits() == 8);
}

TEST_CASE("binary diagonal equals direct evaluation for several k") {
  Rng rng(17);
  for (const int k : {2, 3, 4, 5, 6, 8}) {
    const int n = 3;
    const Graph g = generate_er(n, 0.6, 40 + k);
    const auto h = encode_binary(make_inst(g, k, Encoding::Binary));
    const int width = h.num_qubits();
    for (std::uint64_t x = 0; x < (1ULL << width); ++x) {
      REQUIRE(h.eval_diagonal(x) ==
              static_cast<double>(testing::binary_cost_direct(g, k, x)));
    }
  }
}

TEST_CASE("ground-state correspondence on all graphs up to 4 nodes") {
  for (int n = 2; n <= 4; ++n) {
    for (const auto& g : testing::enumerate_graphs(n, false)) {
      for (int k = 2; k <= 4; ++k) {
        const auto h = encode_binary(make_inst(g, k, Encoding::Binary));
        const ColorDecoder dec(Encoding::Binary, n, k);
        const auto diag = h.full_diagonal();
        long long zero_states = 0;
        for (std::uint64_t x = 0; x < diag.size(); ++x) {
          if (diag[x] == 0.0) {
            ++zero_states;
            REQUIRE(dec.is_proper_coloring(x, g));
          } else {
            REQUIRE(diag[x] >= 1.0);  // min(D, P) with unit weights
          }
        }
        REQUIRE(zero_states == count_proper_colorings(g, k));
      }
    }
  }
}

TEST_CASE("default weights price every violation at exactly one") {
  REQUIRE(normalized_weight_D(Encoding::OneHot, 3) == 1.0);
  REQUIRE(normalized_weight_D(Encoding::Binary, 3) == 0.0625);
  REQUIRE(normalized_weight_P(Encoding::Binary, 3) == 0.25);
  REQUIRE(normalized_weight_D(Encoding::Binary, 5) == 1.0 / 64.0);

  for (int k = 2; k <= 5; ++k) {
    const Graph g = generate_er(3, 0.7, 60 + k);
    const ColoringInstance inst(g, k, Encoding::Binary);
    const auto diag = encode_binary(inst).full_diagonal();
    for (std::uint64_t x = 0; x < diag.size(); ++x) {
      const auto v = testing::binary_violations(g, k, x);
      REQUIRE(diag[x] ==
              static_cast<double>(v.conflicts + v.invalid_nodes));
    }
  }
}

TEST_CASE("encoding the same instance twice gives identical term maps") {
  const auto ref = reference_instance("ref-b");
  const auto inst = make_inst(ref.graph, ref.k, Encoding::Binary);
  REQUIRE(encode_binary(inst) == encode_binary(inst));
  const auto oh = make_inst(ref.graph, ref.k, Encoding::OneHot);
  REQUIRE(encode_onehot(oh) == encode_onehot(oh));
}

TEST_CASE("power-of-two k has no single-node penalty terms") {
  const auto ref = reference_instance("ref-c");
  for (const int k : {2, 4, 8}) {
    const auto h = encode_binary(make_inst(ref.graph, k, Encoding::Binary));
    const int m = bits_per_node(Encoding::Binary, k);
    for (const auto& [qubits, coeff] : h.terms()) {
      std::set<int> nodes;
      for (int q : qubits) nodes.insert(q / m);
      REQUIRE(nodes.size() >= 2);
    }
  }
}

TEST_CASE("decoder round trips and flags invalid blocks") {
  const ColorDecoder onehot(Encoding::OneHot, 2, 3);
  const auto idx = onehot.encode({2, 0});
  REQUIRE(onehot.decode(idx) == std::vector<int>{2, 0});
  // All-zero block and two-hot block are missing.
  REQUIRE(onehot.node_color(0, 0) == kNoColor);
  REQUIRE(onehot.node_color(0b110000, 0) == kNoColor);

  const ColorDecoder binary(Encoding::Binary, 2, 3);
  REQUIRE(binary.decode(binary.encode({1, 2})) == std::vector<int>{1, 2});
  REQUIRE(binary.node_color(0b1100, 0) == kNoColor);  // code 3 >= k
  REQUIRE_THROWS(binary.encode({3, 0}));
}

TEST_CASE("weights must be positive") {
  const Graph one(1);
  auto inst = make_inst(one, 3, Encoding::Binary);
  inst.weight_P = 0.0;
  REQUIRE_THROWS(encode_binary(inst));
  auto oh = make_inst(one, 3, Encoding::OneHot);
  oh.weight_C = -1.0;
  REQUIRE_THROWS(encode_onehot(oh));
}
