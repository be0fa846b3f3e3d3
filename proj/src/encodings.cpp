#include "qcolor/encodings.hpp"

#include <bit>
#include <stdexcept>

namespace qcolor {

std::string encoding_name(Encoding e) {
  return e == Encoding::OneHot ? "onehot" : "binary";
}

Encoding encoding_from_name(const std::string& name) {
  if (name == "onehot" || name == "one-hot" || name == "standard") {
    return Encoding::OneHot;
  }
  if (name == "binary" || name == "space-efficient") return Encoding::Binary;
  throw std::invalid_argument("unknown encoding: " + name);
}

int bits_per_node(Encoding e, int k) {
  if (k < 2) throw std::invalid_argument("color count must be >= 2");
  if (e == Encoding::OneHot) return k;
  return std::bit_width(static_cast<unsigned>(k - 1));  // ceil(log2 k)
}

int num_qubits_for(Encoding e, int n, int k) {
  return n * bits_per_node(e, k);
}

double normalized_weight_D(Encoding e, int k) {
  if (e == Encoding::OneHot) return 1.0;
  const int m = bits_per_node(Encoding::Binary, k);
  return 1.0 / static_cast<double>(1LL << (2 * m));
}

double normalized_weight_P(Encoding e, int k) {
  if (e == Encoding::OneHot) return 1.0;
  const int m = bits_per_node(Encoding::Binary, k);
  return 1.0 / static_cast<double>(1LL << m);
}

ColoringInstance::ColoringInstance(Graph graph_in, int k_in,
                                   Encoding encoding_in,
                                   std::optional<double> C,
                                   std::optional<double> D,
                                   std::optional<double> P)
    : graph(std::move(graph_in)),
      k(k_in),
      encoding(encoding_in),
      weight_C(C.value_or(1.0)),
      weight_D(D.value_or(normalized_weight_D(encoding_in, k_in))),
      weight_P(P.value_or(normalized_weight_P(encoding_in, k_in))) {}

ColorDecoder::ColorDecoder(Encoding encoding, int n, int k)
    : encoding_(encoding), n_(n), k_(k), m_(qcolor::bits_per_node(encoding, k)) {
  if (n < 1) throw std::invalid_argument("decoder needs n >= 1");
}

int ColorDecoder::node_color(std::uint64_t basis_index, int v) const {
  const int total = num_qubits();
  // Block bits, MSB first: qubit v*m_ + j holds bit j of node v.
  std::uint64_t block = 0;
  for (int j = 0; j < m_; ++j) {
    const int qubit = v * m_ + j;
    block = (block << 1) | ((basis_index >> (total - 1 - qubit)) & 1ULL);
  }
  if (encoding_ == Encoding::Binary) {
    return block < static_cast<std::uint64_t>(k_) ? static_cast<int>(block)
                                                  : kNoColor;
  }
  if (std::popcount(block) != 1) return kNoColor;
  // One-hot: bit i of the block (reading MSB first) marks color i.
  return m_ - 1 - std::countr_zero(block);
}

std::vector<int> ColorDecoder::decode(std::uint64_t basis_index) const {
  std::vector<int> colors(n_);
  for (int v = 0; v < n_; ++v) colors[v] = node_color(basis_index, v);
  return colors;
}

bool ColorDecoder::is_proper_coloring(std::uint64_t basis_index,
                                      const Graph& g) const {
  std::vector<int> colors(n_);
  for (int v = 0; v < n_; ++v) {
    colors[v] = node_color(basis_index, v);
    if (colors[v] == kNoColor) return false;
  }
  for (const auto& [u, v] : g.edges()) {
    if (colors[u] == colors[v]) return false;
  }
  return true;
}

std::uint64_t ColorDecoder::encode(const std::vector<int>& colors) const {
  if (static_cast<int>(colors.size()) != n_) {
    throw std::invalid_argument("assignment length must equal node count");
  }
  std::uint64_t index = 0;
  for (int v = 0; v < n_; ++v) {
    const int c = colors[v];
    if (c < 0 || c >= k_) throw std::invalid_argument("color out of range");
    std::uint64_t block;
    if (encoding_ == Encoding::Binary) {
      block = static_cast<std::uint64_t>(c);
    } else {
      block = 1ULL << (m_ - 1 - c);
    }
    index = (index << m_) | block;
  }
  return index;
}

namespace {

// x_q as a Z-polynomial under the x = (1 - Z)/2 correspondence.
ZPolynomial x_var(int num_qubits, int q) {
  return z_affine(num_qubits, q, 0.5, -0.5);
}

}  // namespace

ZPolynomial encode_onehot(const ColoringInstance& inst) {
  if (inst.encoding != Encoding::OneHot) {
    throw std::invalid_argument("instance encoding is not one-hot");
  }
  if (inst.k < 2) throw std::invalid_argument("color count must be >= 2");
  if (!(inst.weight_C > 0 && inst.weight_D > 0)) {
    throw std::invalid_argument("weights must be positive");
  }
  const int n = inst.graph.num_nodes();
  const int k = inst.k;
  const int total = n * k;
  ZPolynomial h(total);
  for (int v = 0; v < n; ++v) {
    ZPolynomial slack(total, 1.0);
    for (int i = 0; i < k; ++i) slack += -1.0 * x_var(total, v * k + i);
    h += inst.weight_C * (slack * slack);
  }
  for (const auto& [u, v] : inst.graph.edges()) {
    for (int i = 0; i < k; ++i) {
      h += inst.weight_D * (x_var(total, u * k + i) * x_var(total, v * k + i));
    }
  }
  return h;
}

ZPolynomial encode_binary(const ColoringInstance& inst) {
  if (inst.encoding != Encoding::Binary) {
    throw std::invalid_argument("instance encoding is not binary");
  }
  if (inst.k < 2) throw std::invalid_argument("color count must be >= 2");
  if (!(inst.weight_D > 0 && inst.weight_P > 0)) {
    throw std::invalid_argument("weights must be positive");
  }
  const int n = inst.graph.num_nodes();
  const int k = inst.k;
  const int m = bits_per_node(Encoding::Binary, k);
  const int total = n * m;

  // Projector-style product over one node's block for a given code:
  // prod_l (1 + (-1)^{code_l} Z_{v,l}), code bits MSB first.
  auto code_projector = [&](int v, int code) {
    ZPolynomial proj(total, 1.0);
    for (int l = 0; l < m; ++l) {
      const int bit = (code >> (m - 1 - l)) & 1;
      proj = proj * z_affine(total, v * m + l, 1.0, bit ? -1.0 : 1.0);
    }
    return proj;
  };

  ZPolynomial h(total);
  for (const auto& [u, v] : inst.graph.edges()) {
    for (int code = 0; code < k; ++code) {
      h += inst.weight_D * (code_projector(u, code) * code_projector(v, code));
    }
  }
  for (int v = 0; v < n; ++v) {
    for (int code = k; code < (1 << m); ++code) {
      h += inst.weight_P * code_projector(v, code);
    }
  }
  return h;
}

ZPolynomial encode(const ColoringInstance& inst) {
  return inst.encoding == Encoding::OneHot ? encode_onehot(inst)
                                           : encode_binary(inst);
}

double Qubo::value(const std::vector<int>& x) const {
  if (static_cast<int>(x.size()) != n) {
    throw std::invalid_argument("qubo input length mismatch");
  }
  double total = offset;
  for (int i = 0; i < n; ++i) {
    if (!x[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (x[j]) total += at(i, j);
    }
  }
  return total;
}

Qubo to_qubo(const ZPolynomial& h) {
  if (h.max_weight() > 2) {
    throw std::invalid_argument(
        "to_qubo: polynomial has degree > 2 terms; only degree <= 2 "
        "Z-polynomials have a QUBO form");
  }
  const int n = h.num_qubits();
  Qubo qubo;
  qubo.n = n;
  qubo.q.assign(static_cast<std::size_t>(n) * n, 0.0);
  qubo.offset = h.constant();
  // Z_q = 1 - 2 x_q: constants fold into the offset, linear parts onto the
  // diagonal (x^2 = x), pair terms split across the symmetric off-diagonal.
  for (const auto& [qubits, coeff] : h.terms()) {
    if (qubits.size() == 1) {
      qubo.offset += coeff;
      qubo.at(qubits[0], qubits[0]) += -2.0 * coeff;
    } else {
      qubo.offset += coeff;
      qubo.at(qubits[0], qubits[0]) += -2.0 * coeff;
      qubo.at(qubits[1], qubits[1]) += -2.0 * coeff;
      qubo.at(qubits[0], qubits[1]) += 2.0 * coeff;
      qubo.at(qubits[1], qubits[0]) += 2.0 * coeff;
    }
  }
  return qubo;
}

}  // namespace qcolor
