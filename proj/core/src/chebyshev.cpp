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

#include "kharper/chebyshev.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace kharper {
namespace {

double wrap_phase(double phase) {
  double r = std::remainder(phase, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

double target_function(double x) { return std::cos(kPi * (x + 1.0)); }

QubitRange kicked_register(QubitRange system, std::uint64_t p, std::uint64_t* m_odd) {
  if (p == 0) throw std::invalid_argument("kick multiplier must be positive");
  const HbarFraction split = split_power_of_two(p);
  *m_odd = split.odd;
  return {system.first, std::max(0, system.count - split.power_of_two)};
}

// Register-relative weights w_j = 2 pi 2^j / 2^count of theta = sum_j w_j d_j.
std::vector<double> bit_weights(int count) {
  std::vector<double> w(count);
  for (int j = 0; j < count; ++j) w[j] = kTwoPi * std::ldexp(1.0, j - count);
  return w;
}

}  // namespace

double ChebyshevApprox::operator()(double x) const {
  double b1 = 0.0;
  double b2 = 0.0;
  for (int j = degree; j >= 1; --j) {
    const double b0 = 2.0 * x * b1 - b2 + chebyshev[j];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + chebyshev[0] / 2.0;
}

double ChebyshevApprox::evaluate_power(double x) const {
  double s = 0.0;
  for (auto it = power.rbegin(); it != power.rend(); ++it) s = s * x + *it;
  return s;
}

ChebyshevApprox chebyshev_coefficients(int samples, int degree) {
  if (degree < 0) throw std::invalid_argument("degree must be non-negative");
  if (samples <= degree + 1) {
    throw std::invalid_argument("sample count " + std::to_string(samples) + " must exceed degree + 1");
  }
  std::vector<double> c(degree + 2, 0.0);
  for (int j = 0; j < degree + 2; ++j) {
    double s = 0.0;
    for (int k = 0; k < samples; ++k) {
      const double u = kPi * (k + 0.5) / samples;
      s += target_function(std::cos(u)) * std::cos(j * u);
    }
    c[j] = 2.0 * s / samples;
  }

  ChebyshevApprox approx;
  approx.degree = degree;
  approx.samples = samples;
  approx.truncation_estimate = std::abs(c[degree + 1]);
  c.pop_back();
  approx.chebyshev = c;

  // T_j in the monomial basis through T_j = 2x T_{j-1} - T_{j-2}
  approx.power.assign(degree + 1, 0.0);
  std::vector<double> prev{1.0};  // T_0
  std::vector<double> cur{0.0, 1.0};  // T_1
  approx.power[0] += c[0] / 2.0;  // c_0 T_0 - c_0 / 2
  if (degree >= 1) approx.power[1] += c[1];
  for (int j = 2; j <= degree; ++j) {
    std::vector<double> next(j + 1, 0.0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    for (int i = 0; i <= j; ++i) approx.power[i] += c[j] * next[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return approx;
}

std::vector<double> theta_polynomial(const ChebyshevApprox& approx) {
  const int d = static_cast<int>(approx.power.size()) - 1;
  std::vector<double> q(d + 1, 0.0);
  // (theta/pi - 1)^i = sum_r binom(i, r) (theta/pi)^r (-1)^(i-r)
  for (int i = 0; i <= d; ++i) {
    double binom = 1.0;
    for (int r = 0; r <= i; ++r) {
      if (r > 0) binom = binom * (i - r + 1) / r;
      const double sign = ((i - r) % 2 == 0) ? 1.0 : -1.0;
      q[r] += approx.power[i] * binom * sign;
    }
  }
  for (int r = 0; r <= d; ++r) q[r] /= std::pow(kPi, r);
  return q;
}

GateSequence PhaseGateSet::to_sequence() const {
  GateSequence seq;
  if (global_phase != 0.0) seq.push(PhaseOnMask{0, global_phase});
  for (const auto& [mask, phase] : entries) seq.push(PhaseOnMask{mask, phase});
  return seq;
}

std::vector<cplx> PhaseGateSet::diagonal(QubitRange reg) const {
  const std::size_t values = std::size_t{1} << reg.count;
  std::vector<double> acc(values, 0.0);
  for (const auto& [mask, phase] : entries) {
    if ((mask & ~reg.mask()) != 0) throw std::invalid_argument("phase gate outside the register");
    acc[mask >> reg.first] += phase;
  }
  // superset sums: every value collects the entries it fully contains
  for (int b = 0; b < reg.count; ++b) {
    const std::size_t bit = std::size_t{1} << b;
    for (std::size_t x = 0; x < values; ++x) {
      if (x & bit) acc[x] += acc[x ^ bit];
    }
  }
  std::vector<cplx> out(values);
  for (std::size_t x = 0; x < values; ++x) out[x] = std::polar(1.0, global_phase + acc[x]);
  return out;
}

PhaseGateSet build_phase_gate_set(double k, QubitRange reg, const ChebyshevApprox& approx, double threshold) {
  if (!(threshold >= 0.0)) throw std::invalid_argument("pruning threshold must be non-negative");
  if (reg.count > 30) throw std::invalid_argument("register too large for a phase gate set");
  const auto q = theta_polynomial(approx);
  const int d = static_cast<int>(q.size()) - 1;
  std::vector<double> beta(q.size());
  for (std::size_t r = 0; r < q.size(); ++r) beta[r] = -k * q[r];
  const auto w = bit_weights(reg.count);

  PhaseGateSet set;
  set.threshold = threshold;
  set.global_phase = wrap_phase(beta[0]);

  const std::uint64_t values = std::uint64_t{1} << reg.count;
  for (std::uint64_t s = 1; s < values; ++s) {
    const int size = std::popcount(s);
    if (size > d) continue;
    // sum over T subset of S of (-1)^{|S|-|T|} (sum_{j in T} w_j)^r, for all r at once
    double phase = 0.0;
    std::uint64_t t = s;
    while (true) {
      double theta_t = 0.0;
      for (std::uint64_t b = t; b; b &= b - 1) theta_t += w[std::countr_zero(b)];
      double term = 0.0;
      double pw = std::pow(theta_t, size);
      for (int r = size; r <= d; ++r) {
        term += beta[r] * pw;
        pw *= theta_t;
      }
      phase += ((size - std::popcount(t)) % 2 == 0) ? term : -term;
      if (t == 0) break;
      t = (t - 1) & s;
    }
    const double wrapped = wrap_phase(phase);
    if (wrapped == 0.0 || std::abs(wrapped) < threshold) continue;
    set.entries.emplace(s << reg.first, wrapped);
  }
  return set;
}

GateSequence unmerged_phase_gates(double k, QubitRange reg, const ChebyshevApprox& approx) {
  const auto q = theta_polynomial(approx);
  const auto w = bit_weights(reg.count);
  GateSequence seq;
  seq.push(PhaseOnMask{0, -k * q[0]});
  const int n = reg.count;
  for (std::size_t r = 1; r < q.size(); ++r) {
    if (n == 0) break;
    std::vector<int> idx(r, 0);
    while (true) {
      std::uint64_t mask = 0;
      double weight = 1.0;
      for (int j : idx) {
        mask |= std::uint64_t{1} << (reg.first + j);
        weight *= w[j];
      }
      seq.push(PhaseOnMask{mask, -k * q[r] * weight});
      std::size_t pos = 0;
      while (pos < r && ++idx[pos] == n) idx[pos++] = 0;
      if (pos == r) break;
    }
  }
  return seq;
}

std::vector<std::int64_t> gate_count_curve(const PhaseGateSet& set, const std::vector<double>& thresholds) {
  std::vector<std::int64_t> out;
  out.reserve(thresholds.size());
  for (double t : thresholds) {
    std::int64_t n = 0;
    for (const auto& [mask, phase] : set.entries) n += std::abs(phase) >= t ? 1 : 0;
    out.push_back(n);
  }
  return out;
}

void multiply_mod_power_of_two(QuantumState& state, std::uint64_t m_odd, QubitRange reg) {
  apply_gate(state, OddMultiplyPermutation{m_odd, reg});
}

void ChebyshevConfig::validate() const {
  if (degree < 0) throw std::invalid_argument("Chebyshev degree must be non-negative");
  if (samples <= degree + 1) throw std::invalid_argument("Chebyshev sample count must exceed degree + 1");
  if (!(threshold >= 0.0)) throw std::invalid_argument("pruning threshold must be non-negative");
}

GateSequence chebyshev_kick_sequence(double k, std::uint64_t p, QubitRange system, const ChebyshevApprox& approx,
                                     double threshold) {
  std::uint64_t m_odd = 1;
  const QubitRange reg = kicked_register(system, p, &m_odd);
  GateSequence seq;
  const bool permute = reg.count > 1 && (m_odd & ((std::uint64_t{1} << reg.count) - 1)) != 1;
  if (permute) seq.push(OddMultiplyPermutation{m_odd, reg});
  seq.append(build_phase_gate_set(k, reg, approx, threshold).to_sequence());
  if (permute) seq.push(OddMultiplyPermutation{modular_inverse_pow2(m_odd, reg.count), reg});
  return seq;
}

ChebyshevKickOperator::ChebyshevKickOperator(double k, std::uint64_t p, QubitRange system,
                                             const ChebyshevApprox& approx, double threshold) {
  std::uint64_t m_odd = 1;
  kicked_ = kicked_register(system, p, &m_odd);
  const PhaseGateSet set = build_phase_gate_set(k, kicked_, approx, threshold);
  gate_count_ = set.gate_count() + 2 * odd_multiply_cost(m_odd, kicked_.count);
  const auto diag = set.diagonal(kicked_);
  const std::uint64_t mask = (std::uint64_t{1} << kicked_.count) - 1;
  phases_.resize(diag.size());
  for (std::uint64_t x = 0; x < diag.size(); ++x) phases_[x] = diag[(m_odd * x) & mask];
}

void ChebyshevKickOperator::apply(QuantumState& state) const {
  if (kicked_.first + kicked_.count > state.num_qubits()) throw std::out_of_range("kick does not fit the state");
  auto amp = state.amplitudes();
  for (std::size_t x = 0; x < amp.size(); ++x) amp[x] *= phases_[kicked_.extract(x)];
}

void chebyshev_kick(QuantumState& state, double k, std::uint64_t p, const ChebyshevApprox& approx,
                    double threshold) {
  ChebyshevKickOperator(k, p, state.system(), approx, threshold).apply(state);
}

GateSequence chebyshev_step_sequence(const HarperParams& params, const ChebyshevApprox& approx, double threshold,
                                     QubitRange system) {
  params.validate();
  if (system.count != params.n_r) throw std::invalid_argument("system register does not match n_r");
  GateSequence seq =
      chebyshev_kick_sequence(params.K / params.hbar(), params.theta_multiplier(), system, approx, threshold);
  seq.append(qft_sequence(system, false));
  seq.append(
      chebyshev_kick_sequence(params.L / params.hbar(), params.momentum_multiplier(), system, approx, threshold));
  seq.append(qft_sequence(system, true));
  return seq;
}

void chebyshev_step(QuantumState& state, const HarperParams& params, const ChebyshevApprox& approx,
                    double threshold) {
  params.validate();
  if (state.system().count != params.n_r) throw std::invalid_argument("system register does not match n_r");
  chebyshev_kick(state, params.K / params.hbar(), params.theta_multiplier(), approx, threshold);
  apply_qft(state, state.system(), false);
  chebyshev_kick(state, params.L / params.hbar(), params.momentum_multiplier(), approx, threshold);
  apply_qft(state, state.system(), true);
}

}  // namespace kharper
