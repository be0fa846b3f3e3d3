#include "qcolor/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qcolor {

void Circuit::append(const Circuit& other) {
  if (other.num_qubits != num_qubits) {
    throw std::invalid_argument("circuit width mismatch in append");
  }
  gates.insert(gates.end(), other.gates.begin(), other.gates.end());
}

int circuit_depth(const Circuit& c) {
  std::vector<int> busy(c.num_qubits, 0);
  int depth = 0;
  for (const auto& g : c.gates) {
    int layer;
    if (g.kind == GateKind::CNOT) {
      layer = 1 + std::max(busy[g.q0], busy[g.q1]);
      busy[g.q0] = busy[g.q1] = layer;
    } else {
      layer = 1 + busy[g.q0];
      busy[g.q0] = layer;
    }
    depth = std::max(depth, layer);
  }
  return depth;
}

std::string dump_circuit(const Circuit& c) {
  std::ostringstream out;
  out.precision(17);
  for (const auto& g : c.gates) {
    switch (g.kind) {
      case GateKind::H:
        out << "H " << g.q0 << '\n';
        break;
      case GateKind::RX:
        out << "RX " << g.angle << ' ' << g.q0 << '\n';
        break;
      case GateKind::RZ:
        out << "RZ " << g.angle << ' ' << g.q0 << '\n';
        break;
      case GateKind::CNOT:
        out << "CX " << g.q0 << ' ' << g.q1 << '\n';
        break;
    }
  }
  return out.str();
}

Statevector::Statevector(int num_qubits) : num_qubits_(num_qubits) {
  if (num_qubits < 1) throw std::invalid_argument("need at least one qubit");
  if (num_qubits > kMaxQubits) {
    throw std::invalid_argument(
        "register of " + std::to_string(num_qubits) + " qubits exceeds the " +
        std::to_string(kMaxQubits) + "-qubit simulator cap (" +
        std::to_string((std::uint64_t{1} << kMaxQubits)) + " amplitudes)");
  }
  amps_.assign(std::uint64_t{1} << num_qubits, {0.0, 0.0});
  amps_[0] = 1.0;
}

Statevector Statevector::plus_state(int num_qubits) {
  Statevector s(num_qubits);
  const double a = 1.0 / std::sqrt(static_cast<double>(s.dim()));
  std::fill(s.amps_.begin(), s.amps_.end(), std::complex<double>{a, 0.0});
  return s;
}

Statevector Statevector::basis_state(int num_qubits, std::uint64_t index) {
  Statevector s(num_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

double Statevector::norm() const {
  double total = 0.0;
  for (const auto& a : amps_) total += std::norm(a);
  return std::sqrt(total);
}

void Statevector::check_qubit(int q) const {
  if (q < 0 || q >= num_qubits_) {
    throw std::out_of_range("qubit index out of range");
  }
}

void Statevector::apply_h(int q) {
  check_qubit(q);
  const std::uint64_t mask = std::uint64_t{1} << (num_qubits_ - 1 - q);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const std::uint64_t d = dim();
  for (std::uint64_t i = 0; i < d; ++i) {
    if (i & mask) continue;
    const auto a0 = amps_[i];
    const auto a1 = amps_[i | mask];
    amps_[i] = inv_sqrt2 * (a0 + a1);
    amps_[i | mask] = inv_sqrt2 * (a0 - a1);
  }
}

void Statevector::apply_rx(double theta, int q) {
  check_qubit(q);
  const std::uint64_t mask = std::uint64_t{1} << (num_qubits_ - 1 - q);
  const double c = std::cos(theta / 2.0);
  const std::complex<double> ms{0.0, -std::sin(theta / 2.0)};
  const std::uint64_t d = dim();
  for (std::uint64_t i = 0; i < d; ++i) {
    if (i & mask) continue;
    const auto a0 = amps_[i];
    const auto a1 = amps_[i | mask];
    amps_[i] = c * a0 + ms * a1;
    amps_[i | mask] = ms * a0 + c * a1;
  }
}

void Statevector::apply_rz(double theta, int q) {
  check_qubit(q);
  const std::uint64_t mask = std::uint64_t{1} << (num_qubits_ - 1 - q);
  const auto phase0 = std::polar(1.0, -theta / 2.0);
  const auto phase1 = std::polar(1.0, theta / 2.0);
  const std::uint64_t d = dim();
  for (std::uint64_t i = 0; i < d; ++i) {
    amps_[i] *= (i & mask) ? phase1 : phase0;
  }
}

void Statevector::apply_cnot(int control, int target) {
  check_qubit(control);
  check_qubit(target);
  if (control == target) {
    throw std::invalid_argument("cnot control equals target");
  }
  const std::uint64_t cmask = std::uint64_t{1} << (num_qubits_ - 1 - control);
  const std::uint64_t tmask = std::uint64_t{1} << (num_qubits_ - 1 - target);
  const std::uint64_t d = dim();
  for (std::uint64_t i = 0; i < d; ++i) {
    if ((i & cmask) && !(i & tmask)) {
      std::swap(amps_[i], amps_[i | tmask]);
    }
  }
}

void Statevector::apply_gate(const Gate& g) {
  switch (g.kind) {
    case GateKind::H:
      apply_h(g.q0);
      break;
    case GateKind::RX:
      apply_rx(g.angle, g.q0);
      break;
    case GateKind::RZ:
      apply_rz(g.angle, g.q0);
      break;
    case GateKind::CNOT:
      apply_cnot(g.q0, g.q1);
      break;
  }
}

void Statevector::apply_circuit(const Circuit& c) {
  if (c.num_qubits != num_qubits_) {
    throw std::invalid_argument("circuit width mismatch");
  }
  for (const auto& g : c.gates) apply_gate(g);
}

void Statevector::apply_diagonal_phase(const ZPolynomial& h, double angle) {
  if (h.num_qubits() != num_qubits_) {
    throw std::invalid_argument("polynomial width mismatch");
  }
  if (angle == 0.0) return;
  // The constant is a global phase; applying it keeps the unitary equal to
  // exp(-i*angle*h) exactly.
  const auto global = std::polar(1.0, -angle * h.constant());
  for (auto& a : amps_) a *= global;
  for (const auto& [qubits, coeff] : h.terms()) {
    apply_term_phase(h.term_mask(qubits), angle * coeff);
  }
}

void Statevector::apply_diagonal_phase(const std::vector<double>& diagonal,
                                       double angle) {
  if (diagonal.size() != amps_.size()) {
    throw std::invalid_argument("diagonal size mismatch");
  }
  const std::uint64_t d = dim();
  for (std::uint64_t i = 0; i < d; ++i) {
    amps_[i] *= std::polar(1.0, -angle * diagonal[i]);
  }
}

void Statevector::apply_term_phase(std::uint64_t mask, double theta) {
  const auto plus = std::polar(1.0, -theta);
  const auto minus = std::polar(1.0, theta);
  const std::uint64_t d = dim();
  for (std::uint64_t i = 0; i < d; ++i) {
    amps_[i] *= (std::popcount(i & mask) & 1) ? minus : plus;
  }
}

std::vector<std::uint64_t> Statevector::sample(int shots, Rng& rng) const {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  std::vector<double> cumulative(amps_.size());
  double total = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    total += std::norm(amps_[i]);
    cumulative[i] = total;
  }
  std::vector<std::uint64_t> draws(shots);
  for (int s = 0; s < shots; ++s) {
    const double r = rng.uniform01() * total;
    const auto it =
        std::upper_bound(cumulative.begin(), cumulative.end(), r);
    draws[s] = static_cast<std::uint64_t>(
        std::min<std::ptrdiff_t>(it - cumulative.begin(),
                                 static_cast<std::ptrdiff_t>(dim()) - 1));
  }
  return draws;
}

std::vector<std::uint64_t> Statevector::sample(int shots,
                                               std::uint64_t seed) const {
  Rng rng(seed);
  return sample(shots, rng);
}

double expectation(const Statevector& s, const ZPolynomial& h) {
  if (h.num_qubits() != s.num_qubits()) {
    throw std::invalid_argument("polynomial width mismatch");
  }
  double value = h.constant();
  const auto& amps = s.amplitudes();
  for (const auto& [qubits, coeff] : h.terms()) {
    const std::uint64_t mask = h.term_mask(qubits);
    double z = 0.0;
    for (std::uint64_t i = 0; i < s.dim(); ++i) {
      const double p = std::norm(amps[i]);
      z += (std::popcount(i & mask) & 1) ? -p : p;
    }
    value += coeff * z;
  }
  return value;
}

double expectation(const Statevector& s, const std::vector<double>& diagonal) {
  if (diagonal.size() != s.amplitudes().size()) {
    throw std::invalid_argument("diagonal size mismatch");
  }
  double value = 0.0;
  const auto& amps = s.amplitudes();
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    value += std::norm(amps[i]) * diagonal[i];
  }
  return value;
}

Circuit synthesize_phase_circuit(const ZPolynomial& h, double angle) {
  if (!std::isfinite(angle)) throw std::invalid_argument("non-finite angle");
  Circuit c;
  c.num_qubits = h.num_qubits();
  for (const auto& [qubits, coeff] : h.terms()) {
    const int w = static_cast<int>(qubits.size());
    for (int i = 0; i + 1 < w; ++i) {
      c.gates.push_back(Gate::cnot(qubits[i], qubits[i + 1]));
    }
    c.gates.push_back(Gate::rz(2.0 * angle * coeff, qubits[w - 1]));
    for (int i = w - 2; i >= 0; --i) {
      c.gates.push_back(Gate::cnot(qubits[i], qubits[i + 1]));
    }
  }
  return c;
}

std::string bitstring_of(std::uint64_t index, int num_qubits) {
  std::string bits(num_qubits, '0');
  for (int q = 0; q < num_qubits; ++q) {
    if ((index >> (num_qubits - 1 - q)) & 1ULL) bits[q] = '1';
  }
  return bits;
}

}  // namespace qcolor
