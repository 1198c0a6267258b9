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

#include "kharper/evolution.hpp"

#include <stdexcept>

namespace kharper {

std::string to_string(Method method) {
  switch (method) {
    case Method::exact:
      return "exact";
    case Method::slice:
      return "slice";
    case Method::chebyshev:
      return "chebyshev";
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  if (name == "exact") return Method::exact;
  if (name == "slice") return Method::slice;
  if (name == "chebyshev") return Method::chebyshev;
  throw std::invalid_argument("method: expected exact, slice or chebyshev, got '" + name + "'");
}

void MethodConfig::validate(const HarperParams& params) const {
  params.validate();
  slice.validate();
  chebyshev.validate();
  if (precision_bits && (*precision_bits < params.n_r || *precision_bits > 52)) {
    throw std::invalid_argument("precision_bits must lie in [n_r, 52]");
  }
}

FloquetStepper::FloquetStepper(const HarperParams& params, const MethodConfig& config)
    : params_(params), config_(config) {
  config_.validate(params_);
  const QubitRange sys = system();
  const double k_theta = params_.K / params_.hbar();
  const double k_momentum = params_.L / params_.hbar();
  switch (config_.method) {
    case Method::exact:
      num_qubits_ = params_.n_r;
      break;
    case Method::slice: {
      num_qubits_ = params_.n_r + 1;
      const int anc = params_.n_r;
      sequence_ = slice_step_sequence(params_, config_.slice, anc, sys);
      slice_theta_.emplace(k_theta, params_.theta_multiplier(), anc, sys, config_.slice);
      slice_momentum_.emplace(k_momentum, params_.momentum_multiplier(), anc, sys, config_.slice);
      break;
    }
    case Method::chebyshev: {
      num_qubits_ = params_.n_r;
      const auto approx = chebyshev_coefficients(config_.chebyshev.samples, config_.chebyshev.degree);
      const double thr = config_.chebyshev.threshold;
      sequence_ = chebyshev_step_sequence(params_, approx, thr, sys);
      cheb_theta_.emplace(k_theta, params_.theta_multiplier(), sys, approx, thr);
      cheb_momentum_.emplace(k_momentum, params_.momentum_multiplier(), sys, approx, thr);
      break;
    }
  }
}

std::optional<int> FloquetStepper::ancilla() const {
  if (config_.method == Method::slice) return params_.n_r;
  return std::nullopt;
}

std::int64_t FloquetStepper::gate_count() const {
  if (config_.method == Method::exact) {
    return exact_gate_count(params_.n_r, config_.precision_bits.value_or(params_.n_r));
  }
  return sequence_.gate_count();
}

QuantumState FloquetStepper::zero_state() const { return QuantumState(num_qubits_, system(), ancilla()); }

QuantumState FloquetStepper::from_momentum(std::span<const cplx> psi) const {
  if (psi.size() != params_.dimension()) throw std::invalid_argument("momentum wave function has the wrong length");
  QuantumState state = zero_state();
  auto amp = state.amplitudes();
  amp[0] = 0;
  for (std::size_t n = 0; n < psi.size(); ++n) amp[n] = psi[n];
  apply_qft(state, system(), true);
  return state;
}

QuantumState FloquetStepper::to_momentum(const QuantumState& state) const {
  QuantumState out = state;
  apply_qft(out, system(), false);
  return out;
}

void FloquetStepper::step(QuantumState& state) const {
  if (state.num_qubits() != num_qubits_) throw std::invalid_argument("state does not match the stepper layout");
  switch (config_.method) {
    case Method::exact:
      exact_step(state, params_, config_.precision_bits);
      return;
    case Method::slice:
      slice_theta_->apply(state);
      apply_qft(state, system(), false);
      slice_momentum_->apply(state);
      apply_qft(state, system(), true);
      return;
    case Method::chebyshev:
      cheb_theta_->apply(state);
      apply_qft(state, system(), false);
      cheb_momentum_->apply(state);
      apply_qft(state, system(), true);
      return;
  }
}

void FloquetStepper::step(QuantumState& state, const ImperfectionChannel& noise) const {
  if (noise.trivial()) {
    step(state);
    return;
  }
  if (config_.method == Method::exact) {
    throw std::invalid_argument("imperfections need a gate-level method (slice or chebyshev)");
  }
  noise.apply_sequence(state, sequence_);
}

}  // namespace kharper
