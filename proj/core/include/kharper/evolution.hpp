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

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kharper/chebyshev.hpp"
#include "kharper/harper_model.hpp"
#include "kharper/imperfections.hpp"
#include "kharper/slice.hpp"
#include "kharper/statevector.hpp"

namespace kharper {

enum class Method { exact, slice, chebyshev };

std::string to_string(Method method);
Method parse_method(const std::string& name);

struct MethodConfig {
  Method method = Method::exact;
  SliceConfig slice;
  ChebyshevConfig chebyshev;
  std::optional<int> precision_bits;  // fixed-point rounding of the exact kick tables

  void validate(const HarperParams& params) const;
};

/// One Floquet iteration of a chosen method. The state lives in angle
/// representation between iterations; the system register is qubits
/// [0, n_r) and the slice ancilla, when present, is qubit n_r.
class FloquetStepper {
 public:
  FloquetStepper(const HarperParams& params, const MethodConfig& config);

  const HarperParams& params() const { return params_; }
  const MethodConfig& config() const { return config_; }
  int num_qubits() const { return num_qubits_; }
  QubitRange system() const { return {0, params_.n_r}; }
  std::optional<int> ancilla() const;

  /// Elementary gates of one iteration (empty for the exact method).
  const GateSequence& sequence() const { return sequence_; }
  /// Gates per iteration; for the exact method the modeled circuit count.
  std::int64_t gate_count() const;

  QuantumState zero_state() const;
  /// Angle-representation state whose momentum amplitudes are `psi`; ancilla in |0>.
  QuantumState from_momentum(std::span<const cplx> psi) const;
  QuantumState to_momentum(const QuantumState& state) const;

  void step(QuantumState& state) const;
  /// Gate-level iteration with the imperfection channel after every gate.
  void step(QuantumState& state, const ImperfectionChannel& noise) const;

 private:
  HarperParams params_;
  MethodConfig config_;
  int num_qubits_ = 0;
  GateSequence sequence_;
  std::optional<SliceKickOperator> slice_theta_;
  std::optional<SliceKickOperator> slice_momentum_;
  std::optional<ChebyshevKickOperator> cheb_theta_;
  std::optional<ChebyshevKickOperator> cheb_momentum_;
};

}  // namespace kharper
