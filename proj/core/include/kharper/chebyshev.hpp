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
#include <map>
#include <vector>

#include "kharper/harper_model.hpp"
#include "kharper/statevector.hpp"

namespace kharper {

inline constexpr int kDefaultChebyshevSamples = 64;
inline constexpr int kDefaultChebyshevDegree = 6;

/// Truncated expansion of f(x) = cos(pi (x + 1)) on [-1, 1]:
/// P(x) = sum_j c_j T_j(x) - c_0 / 2 = sum_i power[i] x^i.
struct ChebyshevApprox {
  int degree = 0;
  int samples = 0;
  std::vector<double> chebyshev;
  std::vector<double> power;
  double truncation_estimate = 0.0;  // |c_{d+1}|

  double operator()(double x) const;  // Clenshaw recurrence on the Chebyshev coefficients
  double evaluate_power(double x) const;
};

ChebyshevApprox chebyshev_coefficients(int samples, int degree);

/// Coefficients q_r of P(theta / pi - 1) = sum_r q_r theta^r.
std::vector<double> theta_polynomial(const ChebyshevApprox& approx);

/// Merged multi-controlled phases. Key: bit mask of control qubits (absolute
/// qubit indices); value: phase in (-pi, pi].
struct PhaseGateSet {
  std::map<std::uint64_t, double> entries;
  double global_phase = 0.0;
  double threshold = 0.0;

  std::int64_t gate_count() const { return static_cast<std::int64_t>(entries.size()); }
  GateSequence to_sequence() const;  // global phase first, as a cost-free gate
  /// Diagonal phase e^{i(...)} for every value of the kicked register.
  std::vector<cplx> diagonal(QubitRange reg) const;
};

/// Phases of exp(-i k P(theta/pi - 1)) with theta = 2 pi x / 2^count on `reg`.
/// Every A_r(beta_r) = exp(i beta_r theta^r) is expanded over bit products,
/// repeated indices counted once, and equal control sets are merged. Entries
/// whose wrapped phase is below `threshold` in magnitude are dropped.
PhaseGateSet build_phase_gate_set(double k, QubitRange reg, const ChebyshevApprox& approx, double threshold);

/// The same operator without merging: one gate per ordered index tuple
/// (j_1..j_r) of every power r. Exponential in the degree; for checks only.
GateSequence unmerged_phase_gates(double k, QubitRange reg, const ChebyshevApprox& approx);

/// Number of entries of `set` with |phase| >= t, for each t.
std::vector<std::int64_t> gate_count_curve(const PhaseGateSet& set, const std::vector<double>& thresholds);

/// |x> -> |m_odd x mod 2^count>.
void multiply_mod_power_of_two(QuantumState& state, std::uint64_t m_odd, QubitRange reg);

struct ChebyshevConfig {
  int degree = kDefaultChebyshevDegree;
  int samples = kDefaultChebyshevSamples;
  double threshold = 0.0;

  void validate() const;
};

/// exp(-i k P(theta/pi - 1)) for the multiplier p = 2^a m_odd: the phases act
/// on the n_r - a low qubits, conjugated by multiplication with m_odd.
GateSequence chebyshev_kick_sequence(double k, std::uint64_t p, QubitRange system, const ChebyshevApprox& approx,
                                     double threshold);

/// One-pass diagonal version of chebyshev_kick_sequence.
class ChebyshevKickOperator {
 public:
  ChebyshevKickOperator(double k, std::uint64_t p, QubitRange system, const ChebyshevApprox& approx,
                        double threshold);

  void apply(QuantumState& state) const;
  std::int64_t gate_count() const { return gate_count_; }

 private:
  QubitRange kicked_;
  std::vector<cplx> phases_;  // indexed by the kicked register value
  std::int64_t gate_count_ = 0;
};

void chebyshev_kick(QuantumState& state, double k, std::uint64_t p, const ChebyshevApprox& approx,
                    double threshold);

GateSequence chebyshev_step_sequence(const HarperParams& params, const ChebyshevApprox& approx, double threshold,
                                     QubitRange system);

void chebyshev_step(QuantumState& state, const HarperParams& params, const ChebyshevApprox& approx,
                    double threshold);

}  // namespace kharper
