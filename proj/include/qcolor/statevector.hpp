#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qcolor/rng.hpp"
#include "qcolor/zpoly.hpp"

namespace qcolor {

enum class GateKind { H, RX, RZ, CNOT };

// RZ(t) = diag(e^{-it/2}, e^{+it/2}); RX(t) = exp(-i t X / 2).
struct Gate {
  GateKind kind;
  int q0 = 0;  // target for H/RX/RZ, control for CNOT
  int q1 = 0;  // CNOT target
  double angle = 0.0;

  static Gate h(int q) { return {GateKind::H, q, 0, 0.0}; }
  static Gate rx(double theta, int q) { return {GateKind::RX, q, 0, theta}; }
  static Gate rz(double theta, int q) { return {GateKind::RZ, q, 0, theta}; }
  static Gate cnot(int control, int target) {
    return {GateKind::CNOT, control, target, 0.0};
  }
};

struct Circuit {
  int num_qubits = 0;
  std::vector<Gate> gates;

  void append(const Circuit& other);
  int gate_count() const { return static_cast<int>(gates.size()); }
};

// Greedy as-soon-as-possible layering: each gate lands in the earliest
// layer where all its qubits are free; every gate counts 1.
int circuit_depth(const Circuit& c);

// One gate per line: "H q", "RZ theta q", "RX theta q", "CX c t".
std::string dump_circuit(const Circuit& c);

// Dense state over N qubits, basis index big-endian (qubit 0 is the most
// significant bit). Hard cap of kMaxQubits amplitude-array qubits.
class Statevector {
 public:
  explicit Statevector(int num_qubits);  // |0...0>
  static Statevector plus_state(int num_qubits);
  static Statevector basis_state(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::uint64_t dim() const { return std::uint64_t{1} << num_qubits_; }
  const std::vector<std::complex<double>>& amplitudes() const { return amps_; }
  std::complex<double> amp(std::uint64_t index) const { return amps_[index]; }
  double probability(std::uint64_t index) const {
    return std::norm(amps_[index]);
  }
  double norm() const;

  void apply_gate(const Gate& g);
  void apply_circuit(const Circuit& c);
  void apply_h(int q);
  void apply_rx(double theta, int q);
  void apply_rz(double theta, int q);
  void apply_cnot(int control, int target);

  // amp_x *= exp(-i * angle * h(x)), h(x) the diagonal eigenvalue.
  void apply_diagonal_phase(const ZPolynomial& h, double angle);
  void apply_diagonal_phase(const std::vector<double>& diagonal, double angle);
  // Single Z-product term: amp_x *= exp(-i * theta * (+/-1)) by the parity
  // of x under the mask.
  void apply_term_phase(std::uint64_t mask, double theta);

  // shots i.i.d. basis-index draws from |amp|^2.
  std::vector<std::uint64_t> sample(int shots, Rng& rng) const;
  std::vector<std::uint64_t> sample(int shots, std::uint64_t seed) const;

 private:
  void check_qubit(int q) const;
  int num_qubits_;
  std::vector<std::complex<double>> amps_;
};

double expectation(const Statevector& s, const ZPolynomial& h);
double expectation(const Statevector& s, const std::vector<double>& diagonal);

// Circuit whose unitary equals exp(-i * angle * (h - constant)): per term a
// CNOT ladder onto the highest qubit, a central RZ(2 * angle * c_S), and the
// mirrored ladder; weight-1 terms are a single RZ. The constant only
// contributes a global phase and is omitted.
Circuit synthesize_phase_circuit(const ZPolynomial& h, double angle);

// Qubit 0 is the leftmost character.
std::string bitstring_of(std::uint64_t index, int num_qubits);

}  // namespace qcolor
