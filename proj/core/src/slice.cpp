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

#include "kharper/slice.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace kharper {
namespace {

using Kind = SliceInstruction::Kind;

// Reduces a phase to (-pi, pi].
double wrap_phase(double phase) {
  double r = std::remainder(phase, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

// Pushes onto a simplified program, merging with the top where possible.
void push_simplified(std::vector<SliceInstruction>& out, SliceInstruction ins) {
  if (ins.kind == Kind::zrotation && ins.angle == 0.0) return;
  if (ins.kind == Kind::controlled && ins.power == 0) return;
  if (out.empty() || out.back().kind != ins.kind) {
    out.push_back(ins);
    return;
  }
  SliceInstruction top = out.back();
  out.pop_back();
  switch (ins.kind) {
    case Kind::hadamard:
      return;  // H H = 1
    case Kind::zrotation:
      push_simplified(out, {Kind::zrotation, top.angle + ins.angle, 0});
      return;
    case Kind::controlled:
      push_simplified(out, {Kind::controlled, 0.0, top.power + ins.power});
      return;
  }
}

QubitRange kicked_register(QubitRange system, std::uint64_t p, std::uint64_t* p_odd) {
  if (p == 0) throw std::invalid_argument("kick multiplier must be positive");
  const HbarFraction split = split_power_of_two(p);
  *p_odd = split.odd;
  const int count = std::max(0, system.count - split.power_of_two);
  return {system.first, count};
}

void check_ancilla(int ancilla, QubitRange system) {
  if (ancilla < 0 || system.contains(ancilla)) {
    throw std::invalid_argument("ancilla qubit " + std::to_string(ancilla) + " overlaps the system register");
  }
}

}  // namespace

void SliceConfig::validate() const {
  if (n_slices < 1) throw std::invalid_argument("slice count must be at least 1, got " + std::to_string(n_slices));
}

std::vector<SliceInstruction> slice_block_program(double alpha, bool inverse_u) {
  const int u = inverse_u ? -1 : 1;
  const SliceInstruction h{Kind::hadamard, 0.0, 0};
  const SliceInstruction rz{Kind::zrotation, -alpha, 0};  // exp(i alpha/2 Z)
  return {h, {Kind::controlled, 0.0, u}, h, rz, h, {Kind::controlled, 0.0, -2 * u}, h, rz, h,
          {Kind::controlled, 0.0, u}, h};
}

std::vector<SliceInstruction> slice_kick_program(double alpha, const SliceConfig& config) {
  config.validate();
  std::vector<SliceInstruction> out;
  auto append = [&](double a, bool inverse_u) {
    for (const auto& ins : slice_block_program(a, inverse_u)) push_simplified(out, ins);
  };
  for (int s = 0; s < config.n_slices; ++s) {
    if (config.symmetrized) {
      append(alpha / 2, true);
      append(alpha / 2, false);
    } else {
      append(alpha, false);
    }
  }
  return out;
}

std::vector<Gate> controlled_diagonal_gates(int ancilla, QubitRange reg, std::uint64_t p_odd, int power) {
  check_ancilla(ancilla, reg);
  std::vector<Gate> gates;
  if (reg.count == 0) return gates;
  const std::uint64_t modulus_mask = (std::uint64_t{1} << reg.count) - 1;
  // power * p_odd mod 2^count, kept exact for negative powers
  const std::uint64_t base =
      (static_cast<std::uint64_t>(static_cast<std::int64_t>(power)) * p_odd) & modulus_mask;
  const double unit = kTwoPi / std::ldexp(1.0, reg.count);
  for (int j = 0; j < reg.count; ++j) {
    const std::uint64_t numerator = (base << j) & modulus_mask;
    if (numerator == 0) continue;
    const std::uint64_t mask = (std::uint64_t{1} << ancilla) | (std::uint64_t{1} << (reg.first + j));
    gates.push_back(PhaseOnMask{mask, wrap_phase(unit * static_cast<double>(numerator))});
  }
  return gates;
}

void controlled_diagonal_exp(QuantumState& state, int ancilla, QubitRange reg, std::uint64_t p_odd,
                             int power) {
  for (const auto& g : controlled_diagonal_gates(ancilla, reg, p_odd, power)) apply_gate(state, g);
}

GateSequence expand_slice_program(const std::vector<SliceInstruction>& program, int ancilla, QubitRange reg,
                                  std::uint64_t p_odd) {
  GateSequence seq;
  for (const auto& ins : program) {
    switch (ins.kind) {
      case Kind::hadamard:
        seq.push(Hadamard{ancilla});
        break;
      case Kind::zrotation:
        seq.push(ZRotation{ancilla, ins.angle});
        break;
      case Kind::controlled:
        for (auto& g : controlled_diagonal_gates(ancilla, reg, p_odd, ins.power)) seq.push(g);
        break;
    }
  }
  return seq;
}

GateSequence slice_block_sequence(double alpha, int ancilla, QubitRange reg, std::uint64_t p_odd,
                                  bool inverse_u) {
  if (p_odd % 2 == 0) throw std::invalid_argument("slice block needs an odd multiplier");
  return expand_slice_program(slice_block_program(alpha, inverse_u), ancilla, reg, p_odd);
}

GateSequence slice_kick_sequence(double k, std::uint64_t p, int ancilla, QubitRange system,
                                 const SliceConfig& config) {
  config.validate();
  check_ancilla(ancilla, system);
  std::uint64_t p_odd = 1;
  const QubitRange reg = kicked_register(system, p, &p_odd);
  const double alpha = -k / config.n_slices;
  return expand_slice_program(slice_kick_program(alpha, config), ancilla, reg, p_odd);
}

std::int64_t slice_gate_count(int n_r, int a, int n_s) {
  if (n_s < 1) throw std::invalid_argument("slice count must be at least 1");
  if (a < 0 || a > n_r) throw std::invalid_argument("power of two outside the register");
  const std::int64_t r = n_r - a;
  return 4 + 2 * r + std::int64_t{n_s - 1} * (7 + 2 * r);
}

std::int64_t slice_sequence_gate_count(int n_r, int a, int n_s) {
  if (n_s < 1) throw std::invalid_argument("slice count must be at least 1");
  const std::int64_t r = n_r - a;
  if (r < 1) throw std::invalid_argument("kicked register must keep at least one qubit");
  return 4 * std::int64_t{n_s} + 3 + r + 2 * r * n_s;
}

SliceKickOperator::SliceKickOperator(double k, std::uint64_t p, int ancilla, QubitRange system,
                                     const SliceConfig& config)
    : ancilla_(ancilla) {
  config.validate();
  check_ancilla(ancilla, system);
  std::uint64_t p_odd = 1;
  kicked_ = kicked_register(system, p, &p_odd);
  const auto program = slice_kick_program(-k / config.n_slices, config);
  gate_count_ = expand_slice_program(program, ancilla, kicked_, p_odd).gate_count();

  const std::uint64_t values = std::uint64_t{1} << kicked_.count;
  const std::uint64_t modulus_mask = values - 1;
  const double unit = kTwoPi / static_cast<double>(values);
  const double s = 1.0 / std::sqrt(2.0);
  blocks_.resize(values);
  for (std::uint64_t x = 0; x < values; ++x) {
    std::array<cplx, 4> m{1.0, 0.0, 0.0, 1.0};
    for (const auto& ins : program) {
      switch (ins.kind) {
        case Kind::hadamard:
          m = {s * (m[0] + m[2]), s * (m[1] + m[3]), s * (m[0] - m[2]), s * (m[1] - m[3])};
          break;
        case Kind::zrotation: {
          const cplx p0 = std::polar(1.0, -ins.angle / 2);
          const cplx p1 = std::polar(1.0, ins.angle / 2);
          m = {p0 * m[0], p0 * m[1], p1 * m[2], p1 * m[3]};
          break;
        }
        case Kind::controlled: {
          const std::uint64_t numerator =
              (static_cast<std::uint64_t>(static_cast<std::int64_t>(ins.power)) * p_odd * x) & modulus_mask;
          const cplx ph = std::polar(1.0, unit * static_cast<double>(numerator));
          m[2] *= ph;
          m[3] *= ph;
          break;
        }
      }
    }
    blocks_[x] = m;
  }
}

void SliceKickOperator::apply(QuantumState& state) const {
  if (ancilla_ >= state.num_qubits() || kicked_.first + kicked_.count > state.num_qubits()) {
    throw std::out_of_range("slice kick does not fit the state");
  }
  auto amp = state.amplitudes();
  const std::size_t bit = std::size_t{1} << ancilla_;
  for (std::size_t x = 0; x < amp.size(); ++x) {
    if (x & bit) continue;
    const auto& m = blocks_[kicked_.extract(x)];
    const cplx a = amp[x];
    const cplx b = amp[x | bit];
    amp[x] = m[0] * a + m[1] * b;
    amp[x | bit] = m[2] * a + m[3] * b;
  }
}

void slice_kick(QuantumState& state, double k, std::uint64_t p, const SliceConfig& config) {
  if (!state.ancilla()) throw std::invalid_argument("slice method needs an ancilla qubit");
  SliceKickOperator(k, p, *state.ancilla(), state.system(), config).apply(state);
}

GateSequence slice_step_sequence(const HarperParams& params, const SliceConfig& config, int ancilla,
                                 QubitRange system) {
  params.validate();
  if (system.count != params.n_r) throw std::invalid_argument("system register does not match n_r");
  GateSequence seq = slice_kick_sequence(params.K / params.hbar(), params.theta_multiplier(), ancilla, system, config);
  seq.append(qft_sequence(system, false));
  seq.append(slice_kick_sequence(params.L / params.hbar(), params.momentum_multiplier(), ancilla, system, config));
  seq.append(qft_sequence(system, true));
  return seq;
}

void slice_step(QuantumState& state, const HarperParams& params, const SliceConfig& config) {
  params.validate();
  if (!state.ancilla()) throw std::invalid_argument("slice method needs an ancilla qubit");
  if (state.system().count != params.n_r) throw std::invalid_argument("system register does not match n_r");
  slice_kick(state, params.K / params.hbar(), params.theta_multiplier(), config);
  apply_qft(state, state.system(), false);
  slice_kick(state, params.L / params.hbar(), params.momentum_multiplier(), config);
  apply_qft(state, state.system(), true);
}

}  // namespace kharper
