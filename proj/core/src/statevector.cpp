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

#include "kharper/statevector.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fft_plan.hpp"

namespace kharper {
namespace {

void check_qubit(const QuantumState& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits()) {
    throw std::out_of_range("qubit index " + std::to_string(qubit) + " outside a " +
                            std::to_string(state.num_qubits()) + "-qubit state");
  }
}

void check_range(const QuantumState& state, QubitRange reg) {
  if (reg.first < 0 || reg.count < 0 || reg.first + reg.count > state.num_qubits()) {
    throw std::out_of_range("qubit register outside state");
  }
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void apply_hadamard(std::span<cplx> amp, int q) {
  const std::size_t bit = std::size_t{1} << q;
  const double s = 1.0 / std::sqrt(2.0);
  for (std::size_t base = 0; base < amp.size(); base += 2 * bit) {
    for (std::size_t x = base; x < base + bit; ++x) {
      const cplx a = amp[x];
      const cplx b = amp[x + bit];
      amp[x] = s * (a + b);
      amp[x + bit] = s * (a - b);
    }
  }
}

void apply_zrotation(std::span<cplx> amp, int q, double angle) {
  const std::size_t bit = std::size_t{1} << q;
  const cplx p0 = std::polar(1.0, -angle / 2);
  const cplx p1 = std::polar(1.0, angle / 2);
  for (std::size_t base = 0; base < amp.size(); base += 2 * bit) {
    for (std::size_t x = base; x < base + bit; ++x) {
      amp[x] *= p0;
      amp[x + bit] *= p1;
    }
  }
}

void apply_phase_on_mask(std::span<cplx> amp, std::uint64_t mask, double phase) {
  const cplx p = std::polar(1.0, phase);
  const std::uint64_t all = amp.size() - 1;
  const std::uint64_t free_bits = all & ~mask;
  // enumerate every subset of the free bits
  std::uint64_t s = 0;
  do {
    amp[s | mask] *= p;
    s = (s - free_bits) & free_bits;
  } while (s != 0);
}

void apply_xx(std::span<cplx> amp, int q1, int q2, double angle) {
  const std::size_t m = (std::size_t{1} << q1) | (std::size_t{1} << q2);
  const std::size_t b1 = std::size_t{1} << q1;
  const double c = std::cos(angle);
  const cplx mis(0.0, -std::sin(angle));
  for (std::size_t x = 0; x < amp.size(); ++x) {
    if (x & b1) continue;
    const std::size_t y = x ^ m;
    const cplx a = amp[x];
    const cplx b = amp[y];
    amp[x] = c * a + mis * b;
    amp[y] = c * b + mis * a;
  }
}

void apply_swap(std::span<cplx> amp, int q1, int q2) {
  const std::size_t b1 = std::size_t{1} << q1;
  const std::size_t b2 = std::size_t{1} << q2;
  for (std::size_t x = 0; x < amp.size(); ++x) {
    if ((x & b1) == 0 && (x & b2) != 0) std::swap(amp[x], amp[x ^ b1 ^ b2]);
  }
}

void apply_odd_multiply(QuantumState& state, std::uint64_t multiplier, QubitRange reg) {
  if (multiplier % 2 == 0) throw std::invalid_argument("odd multiplier required, got even value");
  if (reg.count == 0) return;
  const std::uint64_t reg_mask = (std::uint64_t{1} << reg.count) - 1;
  const std::uint64_t m = multiplier & reg_mask;
  if (m == 1) return;
  auto amp = state.amplitudes();
  std::vector<cplx> out(amp.size());
  const std::uint64_t field = reg.mask();
  for (std::uint64_t x = 0; x < amp.size(); ++x) {
    const std::uint64_t v = reg.extract(x);
    const std::uint64_t w = (v * m) & reg_mask;
    out[(x & ~field) | (w << reg.first)] = amp[x];
  }
  std::copy(out.begin(), out.end(), amp.begin());
}

}  // namespace

QuantumState::QuantumState(int num_qubits, QubitRange system, std::optional<int> ancilla)
    : num_qubits_(num_qubits), system_(system), ancilla_(ancilla) {
  if (num_qubits < 0 || num_qubits > 30) throw std::invalid_argument("unsupported qubit count");
  if (system.first < 0 || system.count < 0 || system.first + system.count > num_qubits) {
    throw std::invalid_argument("system register outside state");
  }
  if (ancilla && (*ancilla < 0 || *ancilla >= num_qubits || system.contains(*ancilla))) {
    throw std::invalid_argument("ancilla must be a qubit outside the system register");
  }
  amplitudes_.assign(std::size_t{1} << num_qubits, cplx{});
  amplitudes_[0] = 1.0;
}

double QuantumState::norm_squared() const {
  double s = 0;
  for (const auto& a : amplitudes_) s += std::norm(a);
  return s;
}

void QuantumState::normalize() {
  const double n = std::sqrt(norm_squared());
  if (n == 0) throw std::domain_error("cannot normalize the zero vector");
  for (auto& a : amplitudes_) a /= n;
}

QuantumState new_basis_state(int num_qubits, std::uint64_t index) {
  return new_basis_state(num_qubits, index, QubitRange{0, num_qubits}, std::nullopt);
}

QuantumState new_basis_state(int num_qubits, std::uint64_t index, QubitRange system,
                             std::optional<int> ancilla) {
  QuantumState state(num_qubits, system, ancilla);
  if (index >= state.dimension()) {
    throw std::out_of_range("basis index " + std::to_string(index) + " outside dimension " +
                            std::to_string(state.dimension()));
  }
  state[0] = 0;
  state[index] = 1;
  return state;
}

std::int64_t odd_multiply_cost(std::uint64_t multiplier, int register_qubits) {
  if (register_qubits <= 1) return 0;
  const std::uint64_t reg_mask = (std::uint64_t{1} << register_qubits) - 1;
  if ((multiplier & reg_mask) == 1) return 0;
  return std::int64_t{register_qubits} * (register_qubits - 1);
}

std::uint64_t modular_inverse_pow2(std::uint64_t odd, int bits) {
  if (odd % 2 == 0) throw std::invalid_argument("only odd numbers are invertible modulo 2^n");
  std::uint64_t inv = odd;  // correct to 3 bits; each Newton step doubles that
  for (int i = 0; i < 6; ++i) inv *= 2 - odd * inv;
  return bits >= 64 ? inv : inv & ((std::uint64_t{1} << bits) - 1);
}

std::int64_t gate_cost(const Gate& gate) {
  return std::visit(overloaded{
                        [](const PhaseOnMask& g) -> std::int64_t { return g.mask == 0 ? 0 : 1; },
                        [](const OddMultiplyPermutation& g) -> std::int64_t {
                          return odd_multiply_cost(g.multiplier, g.reg.count);
                        },
                        [](const auto&) -> std::int64_t { return 1; },
                    },
                    gate);
}

bool is_diagonal(const Gate& gate) {
  return std::holds_alternative<ZRotation>(gate) || std::holds_alternative<PhaseOnMask>(gate);
}

Gate inverse(const Gate& gate) {
  return std::visit(overloaded{
                        [](const Hadamard& g) -> Gate { return g; },
                        [](const ZRotation& g) -> Gate { return ZRotation{g.qubit, -g.angle}; },
                        [](const PhaseOnMask& g) -> Gate { return PhaseOnMask{g.mask, -g.phase}; },
                        [](const XXRotation& g) -> Gate { return XXRotation{g.q1, g.q2, -g.angle}; },
                        [](const Swap& g) -> Gate { return g; },
                        [](const OddMultiplyPermutation& g) -> Gate {
                          return OddMultiplyPermutation{modular_inverse_pow2(g.multiplier, g.reg.count),
                                                        g.reg};
                        },
                    },
                    gate);
}

void GateSequence::push(Gate gate) {
  gate_count_ += gate_cost(gate);
  gates_.push_back(std::move(gate));
}

void GateSequence::append(const GateSequence& other) {
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  gate_count_ += other.gate_count_;
}

GateSequence GateSequence::inverse() const {
  GateSequence out;
  for (auto it = gates_.rbegin(); it != gates_.rend(); ++it) out.push(kharper::inverse(*it));
  return out;
}

void apply_gate(QuantumState& state, const Gate& gate) {
  auto amp = state.amplitudes();
  std::visit(overloaded{
                 [&](const Hadamard& g) {
                   check_qubit(state, g.qubit);
                   apply_hadamard(amp, g.qubit);
                 },
                 [&](const ZRotation& g) {
                   check_qubit(state, g.qubit);
                   apply_zrotation(amp, g.qubit, g.angle);
                 },
                 [&](const PhaseOnMask& g) {
                   if (g.mask >> state.num_qubits()) throw std::out_of_range("phase mask outside state");
                   apply_phase_on_mask(amp, g.mask, g.phase);
                 },
                 [&](const XXRotation& g) {
                   check_qubit(state, g.q1);
                   check_qubit(state, g.q2);
                   if (g.q1 == g.q2) throw std::invalid_argument("XX rotation needs two distinct qubits");
                   apply_xx(amp, g.q1, g.q2, g.angle);
                 },
                 [&](const Swap& g) {
                   check_qubit(state, g.q1);
                   check_qubit(state, g.q2);
                   if (g.q1 != g.q2) apply_swap(amp, g.q1, g.q2);
                 },
                 [&](const OddMultiplyPermutation& g) {
                   check_range(state, g.reg);
                   apply_odd_multiply(state, g.multiplier, g.reg);
                 },
             },
             gate);
}

void apply_sequence(QuantumState& state, const GateSequence& sequence) {
  for (const auto& g : sequence.gates()) apply_gate(state, g);
}

std::int64_t qft_gate_count(int n) { return std::int64_t{n} * (n + 1) / 2 + n / 2; }

GateSequence qft_sequence(QubitRange reg, bool inverse) {
  GateSequence forward;
  const int n = reg.count;
  for (int i = n - 1; i >= 0; --i) {
    const int qi = reg.first + i;
    forward.push(Hadamard{qi});
    for (int j = i - 1; j >= 0; --j) {
      const std::uint64_t mask = (std::uint64_t{1} << qi) | (std::uint64_t{1} << (reg.first + j));
      forward.push(PhaseOnMask{mask, kPi / static_cast<double>(std::uint64_t{1} << (i - j))});
    }
  }
  for (int k = 0; k < n / 2; ++k) forward.push(Swap{reg.first + k, reg.first + n - 1 - k});
  return inverse ? forward.inverse() : forward;
}

void apply_qft(QuantumState& state, QubitRange reg, bool inverse) {
  check_range(state, reg);
  if (reg.count == 0) return;
  const std::size_t length = std::size_t{1} << reg.count;
  const std::size_t low = std::size_t{1} << reg.first;
  const std::size_t high = state.dimension() / (length * low);
  auto amp = state.amplitudes();
  detail::strided_dft(amp.data(), length, low, high, inverse ? -1 : +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(length));
  for (auto& a : amp) a *= scale;
}

void unitary_dft(std::span<cplx> data, bool inverse) {
  if (!std::has_single_bit(data.size())) throw std::invalid_argument("DFT length must be a power of two");
  detail::dft(data, inverse ? -1 : +1);
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (auto& a : data) a *= scale;
}

cplx inner_product(const QuantumState& a, const QuantumState& b) {
  if (a.dimension() != b.dimension()) throw std::invalid_argument("inner product of states with different sizes");
  cplx s{};
  const auto x = a.amplitudes();
  const auto y = b.amplitudes();
  for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
  return s;
}

}  // namespace kharper
