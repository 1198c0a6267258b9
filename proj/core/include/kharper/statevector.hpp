// Copyright 2026 The kharper Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace kharper {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Contiguous block of qubits [first, first + count).
struct QubitRange {
  int first = 0;
  int count = 0;

  std::uint64_t mask() const {
    return count == 0 ? 0 : (((std::uint64_t{1} << count) - 1) << first);
  }
  std::uint64_t extract(std::uint64_t index) const {
    return (index >> first) & ((std::uint64_t{1} << count) - 1);
  }
  bool contains(int qubit) const { return qubit >= first && qubit < first + count; }
  friend bool operator==(const QubitRange&, const QubitRange&) = default;
};

/// Dense state vector over 2^n_q basis states. Qubit 0 is the least
/// significant bit of the basis index. The system register holds the n_r
/// Harper qubits; the optional ancilla is used by the slice method.
class QuantumState {
 public:
  QuantumState() = default;
  QuantumState(int num_qubits, QubitRange system, std::optional<int> ancilla = std::nullopt);

  int num_qubits() const { return num_qubits_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  QubitRange system() const { return system_; }
  std::optional<int> ancilla() const { return ancilla_; }

  std::span<cplx> amplitudes() { return amplitudes_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  cplx& operator[](std::size_t i) { return amplitudes_[i]; }
  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }

  double norm_squared() const;
  void normalize();

 private:
  int num_qubits_ = 0;
  QubitRange system_{};
  std::optional<int> ancilla_;
  std::vector<cplx> amplitudes_;
};

/// |index> on n_q qubits whose system register spans every qubit.
QuantumState new_basis_state(int num_qubits, std::uint64_t index);

/// Basis state with an explicit register layout.
QuantumState new_basis_state(int num_qubits, std::uint64_t index, QubitRange system,
                             std::optional<int> ancilla);

// Gate vocabulary. Every kind is unitary; cost() gives its elementary-gate weight.

struct Hadamard {
  int qubit;
};

/// exp(-i angle Z / 2).
struct ZRotation {
  int qubit;
  double angle;
};

/// Multiplies by exp(i phase) every basis state whose bits in `mask` are all 1.
/// An empty mask is a global phase and carries no gate cost.
struct PhaseOnMask {
  std::uint64_t mask;
  double phase;
};

/// exp(-i angle X_q1 X_q2).
struct XXRotation {
  int q1;
  int q2;
  double angle;
};

struct Swap {
  int q1;
  int q2;
};

/// |x> -> |multiplier * x mod 2^count> on the register, multiplier odd.
struct OddMultiplyPermutation {
  std::uint64_t multiplier;
  QubitRange reg;
};

using Gate = std::variant<Hadamard, ZRotation, PhaseOnMask, XXRotation, Swap, OddMultiplyPermutation>;

/// Elementary-gate weight. Multi-controlled phases count as one gate.
std::int64_t gate_cost(const Gate& gate);
bool is_diagonal(const Gate& gate);
Gate inverse(const Gate& gate);

/// Modeled cost of the in-place odd multiplier: one controlled constant
/// addition per control bit, 2 gates per target bit, i.e. n(n-1) for m != 1.
std::int64_t odd_multiply_cost(std::uint64_t multiplier, int register_qubits);

/// Inverse of an odd number modulo 2^bits.
std::uint64_t modular_inverse_pow2(std::uint64_t odd, int bits);

class GateSequence {
 public:
  void push(Gate gate);
  void append(const GateSequence& other);

  const std::vector<Gate>& gates() const { return gates_; }
  std::int64_t gate_count() const { return gate_count_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  GateSequence inverse() const;

 private:
  std::vector<Gate> gates_;
  std::int64_t gate_count_ = 0;
};

void apply_gate(QuantumState& state, const Gate& gate);
void apply_sequence(QuantumState& state, const GateSequence& sequence);

/// Gate-level QFT over `reg`: Hadamards, controlled phases and the final swap
/// network, n(n+1)/2 + floor(n/2) gates. Forward kernel exp(+2 pi i jk / 2^n).
GateSequence qft_sequence(QubitRange reg, bool inverse);

/// Number of elementary gates in qft_sequence for an n-qubit register.
std::int64_t qft_gate_count(int register_qubits);

/// Same unitary as qft_sequence, evaluated with an FFT over the register.
void apply_qft(QuantumState& state, QubitRange reg, bool inverse);

/// <a|b>.
cplx inner_product(const QuantumState& a, const QuantumState& b);

/// In-place DFT of a contiguous vector with the library convention
/// (forward kernel exp(+2 pi i jk/N)/sqrt(N)); N must be a power of two.
void unitary_dft(std::span<cplx> data, bool inverse);

}  // namespace kharper
