#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qcolor {

inline constexpr int kMaxQubits = 28;

// Diagonal Hamiltonian: constant + sum over non-empty qubit subsets S of
// c_S * prod_{q in S} Z_q. Eigenvalue on a bitstring x is
//   constant + sum_S c_S * prod_{q in S} (-1)^{x_q}.
// Basis indices are big-endian: qubit 0 is the most significant bit.
// Terms are kept canonical: subsets sorted ascending, merged, zero
// coefficients pruned.
class ZPolynomial {
 public:
  using TermMap = std::map<std::vector<int>, double>;

  explicit ZPolynomial(int num_qubits, double constant = 0.0);

  int num_qubits() const { return num_qubits_; }
  double constant() const { return constant_; }
  const TermMap& terms() const { return terms_; }
  int max_weight() const;
  int num_terms() const { return static_cast<int>(terms_.size()); }

  void add_constant(double c) { constant_ += c; }
  void add_term(std::vector<int> qubits, double coeff);

  ZPolynomial& operator+=(const ZPolynomial& other);
  ZPolynomial& operator*=(double s);
  friend ZPolynomial operator+(ZPolynomial a, const ZPolynomial& b) {
    a += b;
    return a;
  }
  friend ZPolynomial operator*(double s, ZPolynomial a) {
    a *= s;
    return a;
  }
  // Polynomial product with the Z_q^2 = 1 reduction.
  friend ZPolynomial operator*(const ZPolynomial& a, const ZPolynomial& b);

  bool operator==(const ZPolynomial& other) const = default;

  // Eigenvalue on the basis state with the given index; qubit q reads bit
  // (N-1-q) of the index.
  double eval_diagonal(std::uint64_t basis_index) const;
  // Same, with explicit per-qubit bits (bits[q] in {0,1}).
  double eval_bits(const std::vector<int>& bits) const;
  // All 2^N eigenvalues, indexed by basis index.
  std::vector<double> full_diagonal() const;

  // Bit mask over basis indices for one term's qubit subset.
  std::uint64_t term_mask(const std::vector<int>& qubits) const;

  // Text form: header "N <num_qubits>", then one line per term
  // "coeff q1 q2 ... qw"; the constant is a line with no indices.
  std::string to_text() const;
  static ZPolynomial from_text(const std::string& text);

 private:
  int num_qubits_;
  double constant_;
  TermMap terms_;
};

// Convenience factory: the projection-style factor (a + b * Z_q).
ZPolynomial z_affine(int num_qubits, int q, double a, double b);

}  // namespace qcolor
