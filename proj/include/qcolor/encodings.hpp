#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qcolor/graph.hpp"
#include "qcolor/zpoly.hpp"

namespace qcolor {

enum class Encoding { OneHot, Binary };

std::string encoding_name(Encoding e);
Encoding encoding_from_name(const std::string& name);

// OneHot: k bits per node. Binary: ceil(log2 k) bits per node.
int bits_per_node(Encoding e, int k);
int num_qubits_for(Encoding e, int n, int k);

// Default weights normalize the spectrum to violation counts: each
// same-color edge and each disallowed node code costs exactly 1, for both
// encodings. Under the binary encoding a conflict projector evaluates to
// 4^m and a penalty projector to 2^m, so the defaults are D = 4^-m,
// P = 2^-m (one-hot already prices violations at 1 with C = D = 1).
double normalized_weight_D(Encoding e, int k);
double normalized_weight_P(Encoding e, int k);

struct ColoringInstance {
  Graph graph;
  int k;
  Encoding encoding;
  double weight_C;  // one-hot constraint penalty
  double weight_D;  // same-color edge penalty
  double weight_P;  // binary invalid-code penalty

  ColoringInstance(Graph graph, int k, Encoding encoding,
                   std::optional<double> C = std::nullopt,
                   std::optional<double> D = std::nullopt,
                   std::optional<double> P = std::nullopt);

  int num_qubits() const {
    return num_qubits_for(encoding, graph.num_nodes(), k);
  }
};

// Maps length-N bitstrings back to per-node colors. A one-hot block that is
// not exactly one-hot decodes to kNoColor; a binary block is read as a
// big-endian integer b and decodes to b when b < k, else kNoColor.
class ColorDecoder {
 public:
  ColorDecoder(Encoding encoding, int n, int k);

  Encoding encoding() const { return encoding_; }
  int n() const { return n_; }
  int k() const { return k_; }
  int bits_per_node() const { return m_; }
  int num_qubits() const { return n_ * m_; }

  int node_color(std::uint64_t basis_index, int v) const;
  std::vector<int> decode(std::uint64_t basis_index) const;
  bool is_proper_coloring(std::uint64_t basis_index, const Graph& g) const;

  // Basis index whose blocks encode the given full assignment (colors < k).
  std::uint64_t encode(const std::vector<int>& colors) const;

 private:
  Encoding encoding_;
  int n_;
  int k_;
  int m_;
};

// Standard QUBO embedding: C sum_v (1 - sum_i x_{v,i})^2 +
// D sum_{edges} sum_i x_{v,i} x_{w,i}, with x_q = (1 - Z_q)/2, each
// undirected edge counted once. Zero eigenvalue exactly on one-hot encoded
// proper colorings.
ZPolynomial encode_onehot(const ColoringInstance& inst);

// Space-efficient embedding on n*ceil(log2 k) qubits. Per edge, D times the
// sum over allowed codes a < k of the projector products
// prod_l (1 + (-1)^{a_l} Z_{v,l})(1 + (-1)^{a_l} Z_{w,l}); when k is not a
// power of two, plus P times the per-node projector sum over disallowed
// codes (for k=3 this is (1 - Z_{v,1})(1 - Z_{v,2}) per node). Zero
// eigenvalue exactly on proper colorings that use allowed codes.
ZPolynomial encode_binary(const ColoringInstance& inst);

// Dispatch on inst.encoding.
ZPolynomial encode(const ColoringInstance& inst);

struct Qubo {
  int n = 0;
  std::vector<double> q;  // row-major n*n, symmetric
  double offset = 0.0;

  double& at(int i, int j) { return q[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const {
    return q[static_cast<std::size_t>(i) * n + j];
  }
  // x^T Q x + offset for a 0/1 vector.
  double value(const std::vector<int>& x) const;
};

// Exact rewrite of a degree <= 2 polynomial as x^T Q x + offset; throws
// on higher-degree input (the binary encodings for k >= 3).
Qubo to_qubo(const ZPolynomial& h);

}  // namespace qcolor
