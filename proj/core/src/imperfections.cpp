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

#include "kharper/imperfections.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

namespace kharper {

std::vector<std::pair<int, int>> StaticDisorder::bonds() const {
  std::vector<std::pair<int, int>> out;
  if (n_q == 2) out.emplace_back(0, 1);
  if (n_q >= 3) {
    for (int i = 0; i < n_q; ++i) out.emplace_back(i, (i + 1) % n_q);
  }
  return out;
}

bool StaticDisorder::is_identity() const {
  if (tau_g == 0.0) return true;
  if (delta0 != 0.0) return false;
  for (double d : detuning) {
    if (d != 0.0) return false;
  }
  const auto pairs = bonds();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (coupling[i] != 0.0) return false;
  }
  return true;
}

std::uint64_t realization_seed(std::uint64_t master_seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master_seed), static_cast<std::uint32_t>(master_seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::uint32_t out[2];
  seq.generate(out, out + 2);
  return (std::uint64_t{out[1]} << 32) | out[0];
}

StaticDisorder sample_disorder(int n_q, double epsilon, std::uint64_t seed) {
  if (n_q < 1) throw std::invalid_argument("disorder needs at least one qubit");
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("imperfection strength must be finite and non-negative");
  }
  StaticDisorder d;
  d.n_q = n_q;
  d.epsilon = epsilon;
  d.seed = seed;
  d.detuning.assign(n_q, 0.0);
  d.coupling.assign(n_q, 0.0);
  if (epsilon == 0.0) return d;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-epsilon / 2, epsilon / 2);
  for (int i = 0; i < n_q; ++i) d.detuning[i] = uniform(rng);
  for (int i = 0; i < n_q; ++i) d.coupling[i] = uniform(rng);
  return d;
}

ImperfectionChannel::ImperfectionChannel(StaticDisorder disorder) : disorder_(std::move(disorder)) {
  const auto& d = disorder_;
  if (d.n_q < 1 || d.n_q > 30) throw std::invalid_argument("unsupported disorder size");
  if (static_cast<int>(d.detuning.size()) != d.n_q || static_cast<int>(d.coupling.size()) != d.n_q) {
    throw std::invalid_argument("disorder arrays must have n_q entries");
  }
  trivial_ = d.is_identity();
  if (trivial_) return;

  const std::size_t dim = std::size_t{1} << d.n_q;
  half_z_.resize(dim);
  full_z_.resize(dim);
  for (std::size_t x = 0; x < dim; ++x) {
    double energy = 0.0;
    for (int i = 0; i < d.n_q; ++i) energy += (d.delta0 + d.detuning[i]) * (((x >> i) & 1) ? -1.0 : 1.0);
    half_z_[x] = std::polar(1.0, -energy * d.tau_g / 2);
    full_z_[x] = std::polar(1.0, -energy * d.tau_g);
  }
  const auto pairs = d.bonds();
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (d.coupling[i] == 0.0) continue;
    const auto [a, b] = pairs[i];
    const double angle = d.coupling[i] * d.tau_g;
    bonds_.push_back({(std::size_t{1} << a) | (std::size_t{1} << b), std::size_t{1} << std::min(a, b),
                      std::cos(angle), std::sin(angle)});
  }
}

void ImperfectionChannel::check(const QuantumState& state) const {
  if (state.num_qubits() != disorder_.n_q) {
    throw std::invalid_argument("disorder has " + std::to_string(disorder_.n_q) + " qubits, state has " +
                                std::to_string(state.num_qubits()));
  }
}

void ImperfectionChannel::multiply(std::span<cplx> amp, const std::vector<cplx>& table) const {
  for (std::size_t x = 0; x < amp.size(); ++x) amp[x] *= table[x];
}

void ImperfectionChannel::apply_couplings(std::span<cplx> amp) const {
  // exp(-i J tau X_a X_b) mixes x and x ^ mask. Pairs are visited in runs of
  // consecutive x below the lower bit, where the partner sits at a fixed offset.
  double* d = reinterpret_cast<double*>(amp.data());
  const std::size_t n = amp.size();
  for (const auto& bond : bonds_) {
    const std::size_t lo = bond.low_bit;
    const double c = bond.c;
    const double s = bond.s;
    for (std::size_t block = 0; block < n; block += 2 * lo) {
      const std::size_t y0 = block ^ bond.mask;
      double* a = d + 2 * block;
      double* b = d + 2 * y0;
      for (std::size_t i = 0; i < 2 * lo; i += 2) {
        const double ar = a[i], ai = a[i + 1];
        const double br = b[i], bi = b[i + 1];
        a[i] = c * ar + s * bi;
        a[i + 1] = c * ai - s * br;
        b[i] = c * br + s * ai;
        b[i + 1] = c * bi - s * ar;
      }
    }
  }
}

void ImperfectionChannel::apply(QuantumState& state) const {
  check(state);
  if (trivial_) return;
  auto amp = state.amplitudes();
  multiply(amp, half_z_);
  apply_couplings(amp);
  multiply(amp, half_z_);
}

void ImperfectionChannel::apply_sequence(QuantumState& state, const GateSequence& sequence) const {
  check(state);
  if (trivial_) {
    kharper::apply_sequence(state, sequence);
    return;
  }
  auto amp = state.amplitudes();
  bool pending_half = false;  // a trailing exp(-i H_z tau/2) not yet applied
  for (const auto& gate : sequence.gates()) {
    const std::int64_t cost = gate_cost(gate);
    if (cost == 0) {
      apply_gate(state, gate);
      continue;
    }
    if (pending_half && std::holds_alternative<ZRotation>(gate)) {
      const auto& g = std::get<ZRotation>(gate);
      if (g.qubit < 0 || g.qubit >= state.num_qubits()) throw std::out_of_range("qubit index outside state");
      const cplx p0 = std::polar(1.0, -g.angle / 2);
      const cplx p1 = std::polar(1.0, g.angle / 2);
      for (std::size_t x = 0; x < amp.size(); ++x) amp[x] *= full_z_[x] * (((x >> g.qubit) & 1) ? p1 : p0);
    } else if (pending_half && std::holds_alternative<PhaseOnMask>(gate)) {
      const auto& g = std::get<PhaseOnMask>(gate);
      if (g.mask >> state.num_qubits()) throw std::out_of_range("phase mask outside state");
      const cplx p = std::polar(1.0, g.phase);
      for (std::size_t x = 0; x < amp.size(); ++x) amp[x] *= (x & g.mask) == g.mask ? full_z_[x] * p : full_z_[x];
    } else {
      if (pending_half) multiply(amp, half_z_);
      apply_gate(state, gate);
      multiply(amp, half_z_);
    }
    apply_couplings(amp);
    for (std::int64_t c = 1; c < cost; ++c) {
      multiply(amp, full_z_);
      apply_couplings(amp);
    }
    pending_half = true;
  }
  if (pending_half) multiply(amp, half_z_);
}

void apply_imperfection(QuantumState& state, const StaticDisorder& disorder) {
  ImperfectionChannel(disorder).apply(state);
}

void noisy_apply(QuantumState& state, const GateSequence& sequence, const StaticDisorder& disorder) {
  ImperfectionChannel(disorder).apply_sequence(state, sequence);
}

}  // namespace kharper
