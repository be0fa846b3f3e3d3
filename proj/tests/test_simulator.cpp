#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <numbers>

#include "qcolor/statevector.hpp"
#include "test_helpers.hpp"

using namespace qcolor;
using Catch::Matchers::WithinAbs;

TEST_CASE("basic gate actions") {
  Statevector s(1);
  s.apply_h(0);
  REQUIRE_THAT(std::abs(s.amp(0) - 1.0 / std::sqrt(2.0)), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(std::abs(s.amp(1) - 1.0 / std::sqrt(2.0)), WithinAbs(0.0, 1e-12));

  Statevector c = Statevector::basis_state(2, 0b10);  // qubit 0 set
  c.apply_cnot(0, 1);
  REQUIRE_THAT(std::abs(c.amp(0b11) - 1.0), WithinAbs(0.0, 1e-12));

  // RZ on |+>: <X> becomes cos(theta).
  const double theta = 0.7341;
  Statevector r = Statevector::plus_state(1);
  r.apply_rz(theta, 0);
  const double x_expect = 2.0 * std::real(std::conj(r.amp(0)) * r.amp(1));
  REQUIRE_THAT(x_expect, WithinAbs(std::cos(theta), 1e-12));
}

TEST_CASE("rx matches its matrix") {
  const double theta = 1.234;
  Statevector s(1);
  s.apply_rx(theta, 0);
  REQUIRE_THAT(std::abs(s.amp(0) - std::cos(theta / 2)), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(std::abs(s.amp(1) - std::complex<double>{0, -std::sin(theta / 2)}),
               WithinAbs(0.0, 1e-12));
  // RX(pi) maps |+> to -i|+>.
  Statevector plus = Statevector::plus_state(1);
  plus.apply_rx(std::numbers::pi, 0);
  const std::complex<double> want =
      std::complex<double>{0, -1} / std::sqrt(2.0);
  REQUIRE_THAT(std::abs(plus.amp(0) - want), WithinAbs(0.0, 1e-12));
  REQUIRE_THAT(std::abs(plus.amp(1) - want), WithinAbs(0.0, 1e-12));
}

TEST_CASE("gate application preserves the norm") {
  Rng rng(2024);
  Statevector s = Statevector::plus_state(5);
  for (int step = 0; step < 60; ++step) {
    const int kind = rng.uniform_int(0, 3);
    const int q = rng.uniform_int(0, 4);
    switch (kind) {
      case 0:
        s.apply_h(q);
        break;
      case 1:
        s.apply_rx(2.0 * rng.uniform01() - 1.0, q);
        break;
      case 2:
        s.apply_rz(2.0 * rng.uniform01() - 1.0, q);
        break;
      default: {
        const int t = (q + rng.uniform_int(1, 4)) % 5;
        s.apply_cnot(q, t);
      }
    }
    REQUIRE_THAT(s.norm(), WithinAbs(1.0, 1e-9));
  }
}

TEST_CASE("index checks") {
  Statevector s(2);
  REQUIRE_THROWS(s.apply_h(2));
  REQUIRE_THROWS(s.apply_cnot(0, 0));
  REQUIRE_THROWS(Statevector(0));
  REQUIRE_THROWS(Statevector(kMaxQubits + 1));
}

TEST_CASE("synthesized weight-4 gadget is 6 CNOTs and one RZ") {
  ZPolynomial h(4);
  h.add_term({0, 1, 2, 3}, 0.8);
  const Circuit c = synthesize_phase_circuit(h, 0.5);
  int cnots = 0, rzs = 0;
  for (const auto& g : c.gates) {
    cnots += g.kind == GateKind::CNOT;
    rzs += g.kind == GateKind::RZ;
  }
  REQUIRE(cnots == 6);
  REQUIRE(rzs == 1);
  REQUIRE(c.gate_count() == 7);
  REQUIRE(circuit_depth(c) == 7);  // fully sequential ladder
  // Central rotation angle is 2 * angle * coefficient.
  REQUIRE_THAT(c.gates[3].angle, WithinAbs(2.0 * 0.5 * 0.8, 1e-15));
  REQUIRE(testing::synthesis_error(h, 0.5) < 1e-10);
}

TEST_CASE("weight-1 term compiles to a single RZ") {
  ZPolynomial h(2);
  h.add_term({1}, -0.3);
  const double gamma = 0.9;
  const Circuit c = synthesize_phase_circuit(h, gamma);
  REQUIRE(c.gate_count() == 1);
  REQUIRE(c.gates[0].kind == GateKind::RZ);
  REQUIRE(c.gates[0].q0 == 1);
  REQUIRE_THAT(c.gates[0].angle, WithinAbs(2.0 * gamma * -0.3, 1e-15));
  REQUIRE(testing::synthesis_error(h, gamma) < 1e-10);
}

TEST_CASE("weight-2 term: two CNOTs and an RZ, matrix-exact") {
  Rng rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    ZPolynomial h(4);
    h.add_term({rng.uniform_int(0, 1), rng.uniform_int(2, 3)},
               2.0 * rng.uniform01() - 1.0);
    const double angle = 4.0 * rng.uniform01() - 2.0;
    const Circuit c = synthesize_phase_circuit(h, angle);
    REQUIRE(c.gate_count() == 3);
    REQUIRE(testing::synthesis_error(h, angle) < 1e-10);
  }
}

TEST_CASE("synthesis matches the diagonal exponential on random input") {
  Rng rng(99);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = rng.uniform_int(1, 4);
    const auto h = testing::random_zpoly(n, rng.uniform_int(1, 4), rng);
    const double angle = 4.0 * rng.uniform01() - 2.0;
    REQUIRE(testing::synthesis_error(h, angle) < 1e-10);
  }
  // Empty polynomial gives an empty circuit.
  const Circuit empty = synthesize_phase_circuit(ZPolynomial(3, 1.5), 0.7);
  REQUIRE(empty.gate_count() == 0);
}

TEST_CASE("fast diagonal path equals the gate path") {
  Rng rng(31);
  for (int trial = 0; trial < 8; ++trial) {
    const auto h = testing::random_zpoly(6, 6, rng);
    const double angle = 2.0 * rng.uniform01() - 1.0;
    Statevector fast = Statevector::plus_state(6);
    fast.apply_diagonal_phase(h, angle);
    Statevector gate = Statevector::plus_state(6);
    gate.apply_circuit(synthesize_phase_circuit(h, angle));
    const auto phase = std::polar(1.0, -angle * h.constant());
    for (std::uint64_t x = 0; x < fast.dim(); ++x) {
      REQUIRE_THAT(std::abs(fast.amp(x) - phase * gate.amp(x)),
                   WithinAbs(0.0, 1e-9));
    }
    // Precomputed-diagonal variant agrees exactly with the per-term one.
    Statevector diag_path = Statevector::plus_state(6);
    diag_path.apply_diagonal_phase(h.full_diagonal(), angle);
    for (std::uint64_t x = 0; x < fast.dim(); ++x) {
      REQUIRE_THAT(std::abs(fast.amp(x) - diag_path.amp(x)),
                   WithinAbs(0.0, 1e-12));
    }
  }
}

TEST_CASE("diagonal phase identities") {
  const auto h = ZPolynomial(3, 2.0);
  Statevector s = Statevector::plus_state(3);
  const Statevector before = s;
  s.apply_diagonal_phase(h, 0.0);  // angle 0: identity
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    REQUIRE(s.amp(x) == before.amp(x));
  }
  // Constant-only polynomial: probabilities unchanged (global phase only).
  s.apply_diagonal_phase(h, 1.3);
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    REQUIRE_THAT(s.probability(x), WithinAbs(before.probability(x), 1e-12));
  }
  ZPolynomial wrong(2);
  REQUIRE_THROWS(s.apply_diagonal_phase(wrong, 1.0));
}

TEST_CASE("expectation values") {
  Rng rng(55);
  // Uniform superposition: every weight >= 1 term averages to zero.
  ZPolynomial h(4);
  h.add_term({0, 2}, 1.7);
  h.add_term({1}, -0.4);
  REQUIRE_THAT(expectation(Statevector::plus_state(4), h), WithinAbs(0.0, 1e-12));

  // Basis states read the diagonal directly.
  for (int trial = 0; trial < 5; ++trial) {
    const auto poly = testing::random_zpoly(4, 5, rng);
    const std::uint64_t x = rng.uniform_below(16);
    REQUIRE_THAT(expectation(Statevector::basis_state(4, x), poly),
                 WithinAbs(poly.eval_diagonal(x), 1e-12));
  }

  // Random circuit state against a dense diagonal-matrix quadratic form.
  const auto poly = testing::random_zpoly(6, 8, rng);
  Statevector s = Statevector::plus_state(6);
  for (int step = 0; step < 20; ++step) {
    const int q = rng.uniform_int(0, 5);
    s.apply_rx(rng.uniform01(), q);
    s.apply_rz(rng.uniform01(), (q + 1) % 6);
    s.apply_cnot(q, (q + 3) % 6);
  }
  const auto diag = poly.full_diagonal();
  std::complex<double> quad = 0.0;
  for (std::uint64_t x = 0; x < s.dim(); ++x) {
    quad += std::conj(s.amp(x)) * diag[x] * s.amp(x);
  }
  REQUIRE_THAT(expectation(s, poly), WithinAbs(std::real(quad), 1e-9));
  REQUIRE_THAT(expectation(s, diag), WithinAbs(std::real(quad), 1e-9));
}

TEST_CASE("sampling statistics and determinism") {
  // Basis state: every draw identical.
  const Statevector basis = Statevector::basis_state(3, 0b101);
  for (const auto draw : basis.sample(50, 9)) REQUIRE(draw == 0b101);

  // Uniform two-qubit superposition: frequencies within 5 sigma.
  const Statevector uniform = Statevector::plus_state(2);
  const int shots = 100000;
  const auto draws = uniform.sample(shots, 1234);
  std::map<std::uint64_t, int> counts;
  for (const auto d : draws) ++counts[d];
  const double sigma = std::sqrt(0.25 * 0.75 / shots);
  for (std::uint64_t x = 0; x < 4; ++x) {
    REQUIRE_THAT(static_cast<double>(counts[x]) / shots,
                 WithinAbs(0.25, 5.0 * sigma));
  }

  REQUIRE(uniform.sample(1000, 77) == uniform.sample(1000, 77));
  REQUIRE(uniform.sample(1000, 77) != uniform.sample(1000, 78));
  REQUIRE_THROWS(uniform.sample(0, 1));
}

TEST_CASE("circuit depth layering") {
  Circuit empty;
  empty.num_qubits = 4;
  REQUIRE(circuit_depth(empty) == 0);

  Circuit hs;
  hs.num_qubits = 4;
  for (int q = 0; q < 4; ++q) hs.gates.push_back(Gate::h(q));
  REQUIRE(circuit_depth(hs) == 1);

  // Depth is monotone under appends and bounded by the gate count.
  Rng rng(15);
  Circuit c;
  c.num_qubits = 4;
  int last_depth = 0;
  for (int step = 0; step < 30; ++step) {
    const int q = rng.uniform_int(0, 3);
    if (rng.uniform_int(0, 1)) {
      c.gates.push_back(Gate::h(q));
    } else {
      c.gates.push_back(Gate::cnot(q, (q + 1) % 4));
    }
    const int depth = circuit_depth(c);
    REQUIRE(depth >= last_depth);
    REQUIRE(depth <= c.gate_count());
    last_depth = depth;
  }
}

TEST_CASE("circuit dump format") {
  Circuit c;
  c.num_qubits = 3;
  c.gates.push_back(Gate::h(0));
  c.gates.push_back(Gate::rz(0.5, 2));
  c.gates.push_back(Gate::rx(-1.0, 1));
  c.gates.push_back(Gate::cnot(0, 2));
  REQUIRE(dump_circuit(c) == "H 0\nRZ 0.5 2\nRX -1 1\nCX 0 2\n");
}

TEST_CASE("bitstring rendering is big-endian") {
  REQUIRE(bitstring_of(0b100, 3) == "100");
  REQUIRE(bitstring_of(1, 3) == "001");
}
