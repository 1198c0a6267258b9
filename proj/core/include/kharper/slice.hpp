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

#include <array>
#include <cstdint>
#include <vector>

#include "kharper/harper_model.hpp"
#include "kharper/statevector.hpp"

namespace kharper {

struct SliceConfig {
  int n_slices = 40;
  bool symmetrized = false;

  void validate() const;
};

/// Ancilla-level instruction of the slice program before expansion into gates.
/// `controlled` stands for C_{U^power}, U = exp(i p theta) on the kicked register.
struct SliceInstruction {
  enum class Kind { hadamard, zrotation, controlled };
  Kind kind;
  double angle = 0.0;  // zrotation: exp(-i angle Z / 2) on the ancilla
  int power = 0;       // controlled: exponent of U
};

/// Instructions of one block in application order. M(alpha, U) is
/// H C_U H e^{i alpha/2 Z} H C_{U^-2} H e^{i alpha/2 Z} H C_U H; with
/// `inverse_u` the block uses U^{-1}.
std::vector<SliceInstruction> slice_block_program(double alpha, bool inverse_u);

/// n_s blocks of M(alpha, U) (or of M~(alpha, U) = M(alpha/2, U) M(alpha/2, U^-1)),
/// with adjacent Hadamards cancelled, adjacent controlled powers and
/// Z rotations combined, and trivial instructions dropped. The result is the
/// same operator as the unsimplified product.
std::vector<SliceInstruction> slice_kick_program(double alpha, const SliceConfig& config);

/// Gates of C_{U^power}: one ancilla-controlled phase per register qubit whose
/// phase 2 pi power p_odd 2^j / 2^count is not a multiple of 2 pi.
std::vector<Gate> controlled_diagonal_gates(int ancilla, QubitRange reg, std::uint64_t p_odd, int power);

/// Applies C_{U^power} with U = exp(i p_odd theta), theta = 2 pi x / 2^count.
void controlled_diagonal_exp(QuantumState& state, int ancilla, QubitRange reg, std::uint64_t p_odd,
                             int power);

/// Expands an instruction list into elementary gates.
GateSequence expand_slice_program(const std::vector<SliceInstruction>& program, int ancilla, QubitRange reg,
                                  std::uint64_t p_odd);

/// One block M(alpha, U^{+-1}) as elementary gates.
GateSequence slice_block_sequence(double alpha, int ancilla, QubitRange reg, std::uint64_t p_odd,
                                  bool inverse_u = false);

/// Approximates exp(-i k cos(p theta)) on `system` with n_s blocks, alpha = -k / n_s.
/// p = 2^a p_odd; the blocks act on the n_r - a low qubits.
GateSequence slice_kick_sequence(double k, std::uint64_t p, int ancilla, QubitRange system,
                                 const SliceConfig& config);

/// Reference closed-form count for one kick: 4 + 2(n_r - a) + (n_s - 1)(7 + 2(n_r - a)).
std::int64_t slice_gate_count(int n_r, int a, int n_s);

/// Elementary gates actually emitted by slice_kick_sequence for the plain
/// (unsymmetrized) program at k != 0: 4 n_s + 3 + r + 2 r n_s, r = n_r - a.
std::int64_t slice_sequence_gate_count(int n_r, int a, int n_s);

/// Precomputed kick: for every value of the kicked register the ancilla sees a
/// 2x2 unitary, so the whole program is applied in one pass over the state.
class SliceKickOperator {
 public:
  SliceKickOperator(double k, std::uint64_t p, int ancilla, QubitRange system, const SliceConfig& config);

  void apply(QuantumState& state) const;
  std::int64_t gate_count() const { return gate_count_; }

 private:
  int ancilla_;
  QubitRange kicked_;
  std::vector<std::array<cplx, 4>> blocks_;  // row-major 2x2 per register value
  std::int64_t gate_count_ = 0;
};

void slice_kick(QuantumState& state, double k, std::uint64_t p, const SliceConfig& config);

/// Full iteration: theta kick (k = K/hbar, p = Q), QFT, momentum kick
/// (k = L/hbar, p = P), inverse QFT.
GateSequence slice_step_sequence(const HarperParams& params, const SliceConfig& config, int ancilla,
                                 QubitRange system);

void slice_step(QuantumState& state, const HarperParams& params, const SliceConfig& config);

}  // namespace kharper
