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

#include "kharper/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "kharper/parallel.hpp"

namespace kharper {

std::vector<int> record_times(int iterations, int record_every) {
  std::vector<int> times{0};
  if (record_every > 0) {
    for (int t = record_every; t < iterations; t += record_every) times.push_back(t);
  }
  if (iterations > 0) times.push_back(iterations);
  return times;
}

std::vector<cplx> initial_momentum_state(const ExperimentConfig& config) {
  const std::size_t dim = config.params.dimension();
  if (config.initial == InitialState::packet) {
    return gaussian_packet(dim, config.params.P, config.params.Q, config.packet_n0, config.packet_t0);
  }
  std::vector<cplx> psi(dim, cplx{});
  psi[0] = 1.0;
  return psi;
}

namespace {

ObservableRow observe(const ExperimentConfig& config, const FloquetStepper& stepper, const QuantumState& noisy,
                      const QuantumState* ideal, std::size_t origin, std::vector<double>* distribution) {
  ObservableRow row;
  const QuantumState momentum = stepper.to_momentum(noisy);
  const auto p = momentum_distribution(momentum);
  row.norm = noisy.norm_squared();
  if (config.wants("ipr")) row.ipr = ipr(p);
  if (config.wants("second_moment")) row.second_moment = circular_second_moment(p, origin);
  if (config.wants("localization_length")) row.localization_length = fit_localization_length(p);
  if (config.wants("fidelity")) row.fidelity = ideal ? fidelity(*ideal, noisy) : 1.0;
  if (distribution) *distribution = p;
  return row;
}

}  // namespace

std::vector<RunRecord> run_experiment(const ExperimentConfig& config) {
  config.validate();
  const FloquetStepper stepper(config.params, config.method);
  const auto psi0 = initial_momentum_state(config);
  const std::size_t dim = config.params.dimension();
  const auto origin = config.initial == InitialState::packet
                          ? static_cast<std::size_t>(std::llround(config.packet_n0)) % dim
                          : std::size_t{0};
  const auto times = record_times(config.iterations, config.record_every);
  const std::string snapshot = to_ini(config);

  struct Job {
    std::size_t eps_index;
    int realization;
  };
  std::vector<Job> jobs;
  for (std::size_t e = 0; e < config.epsilons.size(); ++e) {
    const int count = config.epsilons[e] > 0 ? config.realizations : 1;
    for (int r = 0; r < count; ++r) jobs.push_back({e, r});
  }

  std::vector<RunRecord> records(jobs.size());
  run_jobs(jobs.size(), config.threads, [&](std::size_t j) {
    const auto start = std::chrono::steady_clock::now();
    const double eps = config.epsilons[jobs[j].eps_index];
    const int r = jobs[j].realization;
    RunRecord rec;
    rec.config_ini = snapshot;
    rec.epsilon = eps;
    rec.realization = r;
    rec.seed = realization_seed(config.seed, static_cast<std::uint64_t>(r));
    rec.n_g = stepper.gate_count();
    const ImperfectionChannel noise(sample_disorder(stepper.num_qubits(), eps, rec.seed));
    const bool track_ideal = !noise.trivial() && config.wants("fidelity");

    QuantumState noisy = stepper.from_momentum(psi0);
    QuantumState ideal = track_ideal ? noisy : QuantumState{};
    std::size_t next = 0;
    for (int t = 0; t <= config.iterations; ++t) {
      if (t > 0) {
        stepper.step(noisy, noise);
        if (track_ideal) stepper.step(ideal);
      }
      if (next < times.size() && times[next] == t) {
        const bool last = next + 1 == times.size();
        ObservableRow row = observe(config, stepper, noisy, track_ideal ? &ideal : nullptr, origin,
                                    last ? &rec.final_distribution : nullptr);
        row.seed = rec.seed;
        row.realization = r;
        row.epsilon = eps;
        row.t = t;
        row.n_g = rec.n_g;
        rec.rows.push_back(row);
        ++next;
      }
    }
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    records[j] = std::move(rec);
  });
  return records;
}

double saturation_ipr(const RunRecord& record, double fraction) {
  if (record.rows.empty()) throw std::invalid_argument("record has no rows");
  const int horizon = record.rows.back().t;
  double sum = 0;
  int count = 0;
  for (const auto& row : record.rows) {
    if (row.t >= fraction * horizon && row.ipr) {
      sum += *row.ipr;
      ++count;
    }
  }
  if (count == 0) throw std::invalid_argument("record carries no IPR values");
  return sum / count;
}

Eigen::MatrixXcd floquet_matrix(const FloquetStepper& stepper, int threads) {
  return build_unitary(stepper.zero_state(), [&](QuantumState& s) { stepper.step(s); }, threads);
}

std::vector<ButterflyPoint> butterfly_scan(int n_r, double K, double L, const std::vector<std::uint64_t>& ms,
                                           const MethodConfig& method, int threads) {
  std::vector<ButterflyPoint> out(ms.size());
  run_jobs(ms.size(), threads, [&](std::size_t i) {
    const auto params = HarperParams::cylinder(K, L, n_r, ms[i]);
    const FloquetStepper stepper(params, method);
    out[i] = {ms[i], params.hbar(), eigenphases(floquet_matrix(stepper), to_string(method.method))};
  });
  return out;
}

double mean_eigenstate_ipr(const Eigen::MatrixXcd& floquet_theta) {
  const auto dec = eigen_decomposition(floquet_theta);
  const auto dim = static_cast<std::size_t>(dec.vectors.rows());
  std::vector<cplx> v(dim);
  double total = 0;
  for (Eigen::Index c = 0; c < dec.vectors.cols(); ++c) {
    for (std::size_t i = 0; i < dim; ++i) v[i] = dec.vectors(static_cast<Eigen::Index>(i), c);
    unitary_dft(v, false);
    double s4 = 0;
    for (const auto& a : v) s4 += std::norm(a) * std::norm(a);
    total += 1.0 / s4;
  }
  return total / static_cast<double>(dec.vectors.cols());
}

std::vector<KLPoint> sweep_kl(const std::vector<double>& Ks, const std::vector<double>& Ls, int n_r,
                              std::uint64_t m, int threads) {
  std::vector<KLPoint> out(Ks.size() * Ls.size());
  run_jobs(out.size(), threads, [&](std::size_t i) {
    const double K = Ks[i / Ls.size()];
    const double L = Ls[i % Ls.size()];
    const FloquetStepper stepper(HarperParams::cylinder(K, L, n_r, m), MethodConfig{});
    out[i] = {K, L, mean_eigenstate_ipr(floquet_matrix(stepper))};
  });
  return out;
}

std::optional<double> upward_crossing(const std::vector<double>& x, const std::vector<double>& y, double level) {
  if (x.size() != y.size()) throw std::invalid_argument("crossing needs equally long series");
  for (std::size_t i = 1; i < x.size(); ++i) {
    if (y[i - 1] < level && y[i] >= level) {
      return x[i - 1] + (level - y[i - 1]) / (y[i] - y[i - 1]) * (x[i] - x[i - 1]);
    }
  }
  return std::nullopt;
}

TransitionScan transition_scan(const ExperimentConfig& base, const std::vector<double>& Ks, double epsilon) {
  TransitionScan scan;
  scan.K = Ks;
  scan.mean_ipr.assign(Ks.size(), 0.0);
  run_jobs(Ks.size(), base.threads, [&](std::size_t i) {
    ExperimentConfig c = base;
    c.params.K = Ks[i];
    c.epsilons = {epsilon};
    c.record_every = 0;
    c.observables = {"ipr"};
    c.threads = 1;
    const auto records = run_experiment(c);
    double sum = 0;
    for (const auto& rec : records) sum += *rec.rows.back().ipr;
    scan.mean_ipr[i] = sum / static_cast<double>(records.size());
  });
  scan.K_c = upward_crossing(scan.K, scan.mean_ipr, static_cast<double>(base.params.dimension()) / 4.0);
  return scan;
}

EpsilonCScan epsilon_c_scan(const ExperimentConfig& base, const std::vector<double>& epsilons) {
  ExperimentConfig c = base;
  c.epsilons = {0.0};
  for (double e : epsilons) {
    if (!(e > 0)) throw std::invalid_argument("epsilon grid must be positive");
    c.epsilons.push_back(e);
  }
  if (c.record_every == 0) c.record_every = std::max(1, c.iterations / 20);
  c.observables = {"ipr"};
  const auto records = run_experiment(c);

  EpsilonCScan scan;
  scan.epsilons = epsilons;
  std::vector<double> sums(c.epsilons.size(), 0.0);
  std::vector<int> counts(c.epsilons.size(), 0);
  for (const auto& rec : records) {
    const auto idx = static_cast<std::size_t>(
        std::find(c.epsilons.begin(), c.epsilons.end(), rec.epsilon) - c.epsilons.begin());
    sums[idx] += saturation_ipr(rec);
    ++counts[idx];
  }
  scan.reference_ipr = sums[0] / counts[0];
  std::vector<double> log_eps;
  std::vector<double> log_ratio;
  for (std::size_t i = 1; i < c.epsilons.size(); ++i) {
    scan.saturation_ipr.push_back(sums[i] / counts[i]);
    log_eps.push_back(std::log(c.epsilons[i]));
    log_ratio.push_back(std::log(scan.saturation_ipr.back() / scan.reference_ipr));
  }
  if (auto x = upward_crossing(log_eps, log_ratio, std::log(2.0))) scan.epsilon_c = std::exp(*x);
  return scan;
}

std::pair<double, double> web_packet_centre(const HarperParams& params) {
  const double N = static_cast<double>(params.dimension());
  return {N / 2 + N / (2.0 * static_cast<double>(params.P)), N / 2};
}

DensityGrid classical_web_density(const HarperParams& params, std::size_t particles, int steps, int threads,
                                  std::uint64_t seed) {
  const auto extent = PhaseSpaceExtent::cells(params.P, params.Q);
  const ClassicalPoint centre{kPi * static_cast<double>(params.P) + kPi, kPi * static_cast<double>(params.Q)};
  auto cloud = gaussian_cloud(particles, centre, std::sqrt(kTwoPi / std::ldexp(1.0, 25)), extent, seed);
  const int bins = static_cast<int>(std::min<std::uint64_t>(128, params.dimension()));
  return classical_ensemble_evolve(cloud, steps, params.K, params.L, extent, bins, bins, threads);
}

WebStudy web_study(const ExperimentConfig& base, double epsilon, const std::vector<int>& times,
                   const std::vector<std::uint8_t>& mask) {
  base.validate();
  if (base.method.method == Method::exact && epsilon > 0) {
    throw std::invalid_argument("imperfections need a gate-level method");
  }
  if (times.empty() || !std::is_sorted(times.begin(), times.end()) || times.front() < 0) {
    throw std::invalid_argument("Husimi times must be sorted and non-negative");
  }
  const FloquetStepper stepper(base.params, base.method);
  const auto [n0, t0] = web_packet_centre(base.params);
  const auto psi0 = gaussian_packet(base.params.dimension(), base.params.P, base.params.Q, n0, t0);
  const std::uint64_t P = base.params.P;
  const std::uint64_t Q = base.params.Q;
  const int runs = epsilon > 0 ? base.realizations : 1;

  WebStudy study;
  study.times = times;
  study.mask = mask;
  std::vector<std::vector<double>> errors(runs, std::vector<double>(times.size(), 0.0));
  std::vector<HusimiGrid> ideal_final(runs);
  std::vector<HusimiGrid> noisy_final(runs);
  run_jobs(static_cast<std::size_t>(runs), base.threads, [&](std::size_t r) {
    const ImperfectionChannel noise(
        sample_disorder(stepper.num_qubits(), epsilon, realization_seed(base.seed, r)));
    QuantumState ideal = stepper.from_momentum(psi0);
    QuantumState noisy = ideal;
    std::size_t next = 0;
    for (int t = 0; next < times.size(); ++t) {
      if (t > 0) {
        stepper.step(ideal);
        stepper.step(noisy, noise);
      }
      if (times[next] != t) continue;
      const HusimiGrid h0 = husimi(stepper.to_momentum(ideal), P, Q);
      const HusimiGrid he = husimi(stepper.to_momentum(noisy), P, Q);
      errors[r][next] = husimi_error(he, h0, mask);
      if (++next == times.size()) {
        ideal_final[r] = h0;
        noisy_final[r] = he;
      }
    }
  });
  study.husimi_error.assign(times.size(), 0.0);
  for (const auto& e : errors) {
    for (std::size_t i = 0; i < times.size(); ++i) study.husimi_error[i] += e[i] / runs;
  }
  std::vector<double> t_axis(times.begin(), times.end());
  study.t_h = crossing_time(t_axis, study.husimi_error);
  study.ideal_final = std::move(ideal_final[0]);
  study.noisy_final = std::move(noisy_final[0]);
  return study;
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("slope needs two or more points");
  double mx = 0;
  double my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) throw std::invalid_argument("log-log slope needs positive data");
    mx += std::log10(x[i]);
    my += std::log10(y[i]);
  }
  mx /= static_cast<double>(x.size());
  my /= static_cast<double>(x.size());
  double sxx = 0;
  double sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log10(x[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log10(y[i]) - my);
  }
  if (sxx == 0) throw std::invalid_argument("log-log slope needs distinct x values");
  return sxy / sxx;
}

std::vector<double> logspace(double lo_exponent, double hi_exponent, int count) {
  if (count < 1) throw std::invalid_argument("logspace needs at least one point");
  std::vector<double> out;
  for (int i = 0; i < count; ++i) {
    const double e = count == 1 ? lo_exponent : lo_exponent + (hi_exponent - lo_exponent) * i / (count - 1);
    out.push_back(std::pow(10.0, e));
  }
  return out;
}

}  // namespace kharper
