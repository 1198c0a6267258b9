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

#include "kharper/observables.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fft_plan.hpp"

namespace kharper {
namespace {

// Least-squares slope of y against x.
std::optional<double> slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  if (n < 2) return std::nullopt;
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxx = 0;
  double sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0) return std::nullopt;
  return sxy / sxx;
}

// Offset of n from origin, wrapped into [-N/2, N/2).
double wrapped_offset(double n, double origin, double dimension) {
  double d = std::fmod(n - origin + dimension / 2, dimension);
  if (d < 0) d += dimension;
  return d - dimension / 2;
}

}  // namespace

std::vector<double> momentum_distribution(const QuantumState& state) {
  const QubitRange sys = state.system();
  std::vector<double> p(std::size_t{1} << sys.count, 0.0);
  const auto amp = state.amplitudes();
  for (std::size_t x = 0; x < amp.size(); ++x) p[sys.extract(x)] += std::norm(amp[x]);
  return p;
}

double ipr(std::span<const double> p) {
  double s = 0;
  for (double v : p) s += v * v;
  if (s == 0) throw std::invalid_argument("IPR of an all-zero distribution");
  return 1.0 / s;
}

double second_moment(std::span<const double> p) {
  double mean = 0;
  for (std::size_t n = 0; n < p.size(); ++n) mean += p[n] * static_cast<double>(n);
  double var = 0;
  for (std::size_t n = 0; n < p.size(); ++n) var += p[n] * (n - mean) * (n - mean);
  return var;
}

double circular_second_moment(std::span<const double> p, std::size_t origin) {
  const double dim = static_cast<double>(p.size());
  double mean = 0;
  double sq = 0;
  for (std::size_t n = 0; n < p.size(); ++n) {
    const double d = wrapped_offset(static_cast<double>(n), static_cast<double>(origin), dim);
    mean += p[n] * d;
    sq += p[n] * d * d;
  }
  return sq - mean * mean;
}

std::size_t peak_index(std::span<const double> p) {
  if (p.empty()) throw std::invalid_argument("empty distribution");
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

std::optional<double> fit_localization_length(std::span<const double> p, int window, double floor) {
  if (p.empty()) throw std::invalid_argument("empty distribution");
  if (window < 1) throw std::invalid_argument("fit window must be positive");
  const std::size_t dim = p.size();
  const std::size_t peak = peak_index(p);
  const int reach = std::min<int>(window, static_cast<int>(dim / 2) - 1);
  double slope_sum = 0;
  int flanks = 0;
  int usable = p[peak] > floor ? 1 : 0;
  for (int side : {+1, -1}) {
    std::vector<double> x;
    std::vector<double> y;
    for (int d = 0; d <= reach; ++d) {
      const auto n = static_cast<std::size_t>((static_cast<std::int64_t>(peak) + side * d) % static_cast<std::int64_t>(dim) +
                                              static_cast<std::int64_t>(dim)) % dim;
      if (p[n] <= floor) continue;
      x.push_back(d);
      y.push_back(std::log(p[n]));
      if (d > 0) ++usable;
    }
    if (auto s = slope(x, y)) {
      slope_sum += *s;
      ++flanks;
    }
  }
  if (usable < 4 || flanks == 0) return std::nullopt;
  const double mean_slope = slope_sum / flanks;
  if (!(mean_slope < 0)) return std::nullopt;
  return -2.0 / mean_slope;
}

std::optional<double> fit_localization_length(std::span<const double> p) {
  const double xi = ipr(p);
  const int cap = std::max(1, static_cast<int>(p.size() / 2) - 1);
  const int window = std::min(cap, std::max(8, static_cast<int>(std::ceil(4 * xi))));
  return fit_localization_length(p, window);
}

double fidelity(const QuantumState& a, const QuantumState& b) { return std::norm(inner_product(a, b)); }

std::vector<double> coarse_grain(std::span<const double> p, int k) {
  if (!std::has_single_bit(p.size())) throw std::invalid_argument("distribution length must be a power of two");
  const int n_r = std::countr_zero(p.size());
  if (k < 0 || k > n_r) throw std::invalid_argument("measured qubit count must lie in [0, n_r]");
  std::vector<double> bins(std::size_t{1} << k, 0.0);
  const int shift = n_r - k;
  for (std::size_t n = 0; n < p.size(); ++n) bins[n >> shift] += p[n];
  return bins;
}

double HusimiGrid::total() const { return std::accumulate(values.begin(), values.end(), 0.0); }

namespace {

void accumulate_husimi(std::span<const cplx> psi, std::uint64_t P, std::uint64_t Q, std::vector<double>& out) {
  const std::size_t dim = psi.size();
  const double N = static_cast<double>(dim);
  const double a = kPi * static_cast<double>(P) / (N * static_cast<double>(Q));
  const double prefactor = std::sqrt(2.0 * static_cast<double>(P) / (static_cast<double>(Q) * N * N * N));
  // gaussian weights by offset d in (-N/2, N/2], stored at d mod N
  std::vector<double> weight(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double d = static_cast<double>(i);
    if (d > N / 2) d -= N;
    weight[i] = std::exp(-a * d * d);
  }
  std::vector<cplx> row(dim);
  for (std::size_t n = 0; n < dim; ++n) {
    for (std::size_t i = 0; i < dim; ++i) row[i] = psi[(n + i) % dim] * weight[i];
    detail::dft(row, -1);
    for (std::size_t t = 0; t < dim; ++t) out[n * dim + t] += prefactor * std::norm(row[t]);
  }
}

}  // namespace

HusimiGrid husimi(std::span<const cplx> psi, std::uint64_t P, std::uint64_t Q) {
  if (psi.size() < 2 || !std::has_single_bit(psi.size())) {
    throw std::invalid_argument("Husimi grid needs a power-of-two wave function");
  }
  if (P == 0 || Q == 0) throw std::invalid_argument("cell counts must be positive");
  HusimiGrid grid{psi.size(), P, Q, std::vector<double>(psi.size() * psi.size(), 0.0), {}};
  accumulate_husimi(psi, P, Q, grid.values);
  return grid;
}

HusimiGrid husimi(const QuantumState& momentum_state, std::uint64_t P, std::uint64_t Q) {
  const QubitRange sys = momentum_state.system();
  const std::size_t dim = std::size_t{1} << sys.count;
  if (dim < 2) throw std::invalid_argument("Husimi grid needs at least one system qubit");
  if (P == 0 || Q == 0) throw std::invalid_argument("cell counts must be positive");
  HusimiGrid grid{dim, P, Q, std::vector<double>(dim * dim, 0.0), {}};
  const auto amp = momentum_state.amplitudes();
  const std::uint64_t sys_mask = sys.mask();
  std::vector<cplx> branch(dim);
  // iterate over configurations of the non-system qubits
  const std::uint64_t others = (amp.size() - 1) & ~sys_mask;
  std::uint64_t rest = 0;
  do {
    bool nonzero = false;
    for (std::size_t n = 0; n < dim; ++n) {
      branch[n] = amp[rest | (static_cast<std::uint64_t>(n) << sys.first)];
      nonzero = nonzero || branch[n] != cplx{};
    }
    if (nonzero) accumulate_husimi(branch, P, Q, grid.values);
    rest = (rest - others) & others;
  } while (rest != 0);
  return grid;
}

std::vector<std::uint8_t> web_mask(const DensityGrid& classical, std::size_t grid_size) {
  std::vector<double> positive;
  for (double c : classical.counts) {
    if (c > 0) positive.push_back(c);
  }
  if (positive.empty()) throw std::invalid_argument("classical density is empty");
  auto mid = positive.begin() + static_cast<std::ptrdiff_t>(positive.size() / 2);
  std::nth_element(positive.begin(), mid, positive.end());
  const double median = *mid;
  std::vector<std::uint8_t> mask(grid_size * grid_size, 0);
  for (std::size_t n = 0; n < grid_size; ++n) {
    const int row = static_cast<int>(n * classical.momentum_bins / grid_size);
    for (std::size_t t = 0; t < grid_size; ++t) {
      const int col = static_cast<int>(t * classical.angle_bins / grid_size);
      mask[n * grid_size + t] = classical.at(row, col) > median ? 1 : 0;
    }
  }
  return mask;
}

double husimi_error(const HusimiGrid& h_eps, const HusimiGrid& h0, std::span<const std::uint8_t> mask) {
  if (h_eps.values.size() != h0.values.size()) throw std::invalid_argument("Husimi grids differ in size");
  if (!mask.empty() && mask.size() != h0.values.size()) throw std::invalid_argument("mask does not match grid");
  double diff = 0;
  double ref = 0;
  std::size_t count = 0;
  for (std::size_t i = 0; i < h0.values.size(); ++i) {
    if (!mask.empty() && !mask[i]) continue;
    diff += std::abs(h_eps.values[i] - h0.values[i]);
    ref += h0.values[i];
    ++count;
  }
  if (count == 0) throw std::invalid_argument("empty Husimi mask");
  if (ref == 0) throw std::domain_error("reference Husimi density vanishes on the mask");
  return diff / ref;
}

std::optional<double> crossing_time(std::span<const double> times, std::span<const double> errors, double level) {
  if (times.size() != errors.size()) throw std::invalid_argument("time and error series differ in length");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (errors[i] < level) continue;
    if (i == 0) return times[0];
    const double f = (level - errors[i - 1]) / (errors[i] - errors[i - 1]);
    return times[i - 1] + f * (times[i] - times[i - 1]);
  }
  return std::nullopt;
}

std::vector<cplx> gaussian_packet(std::size_t dimension, std::uint64_t P, std::uint64_t Q, double n0, double t0) {
  if (dimension == 0) throw std::invalid_argument("packet needs a positive dimension");
  const double N = static_cast<double>(dimension);
  const double a = kPi * static_cast<double>(P) / (N * static_cast<double>(Q));
  std::vector<cplx> psi(dimension);
  double norm = 0;
  for (std::size_t n = 0; n < dimension; ++n) {
    const double d = wrapped_offset(static_cast<double>(n), n0, N);
    psi[n] = std::polar(std::exp(-a * d * d), kTwoPi * static_cast<double>(n) * t0 / N);
    norm += std::norm(psi[n]);
  }
  for (auto& v : psi) v /= std::sqrt(norm);
  return psi;
}

ScalingPrediction predict(Regime regime, double n_g, int n_q, double l, double epsilon,
                          const ScalingConstants& constants) {
  if (!(n_g > 0) || n_q < 1 || !(epsilon > 0)) throw std::invalid_argument("predictions need positive inputs");
  if (regime == Regime::localized && !(l > 0)) throw std::invalid_argument("localization length must be positive");
  ScalingPrediction out;
  out.regime = regime;
  const double root_q = std::sqrt(static_cast<double>(n_q));
  const double N = std::ldexp(1.0, n_q);
  out.sigma = epsilon * n_g * root_q;
  out.delta_n = 1.0 / N;
  if (regime == Regime::localized) {
    out.epsilon_c = constants.c1_over_sqrt_l / (n_g * root_q);
    out.v_typ = out.sigma / std::sqrt(l);
    out.delta_c = 1.0 / l;
  } else {
    out.epsilon_c = constants.c2 / (n_g * root_q * std::sqrt(N));
    out.v_typ = out.sigma / std::sqrt(N);
    out.delta_c = 1.0 / N;
  }
  out.gamma = kTwoPi * out.v_typ * out.v_typ / out.delta_c;
  out.t_h = constants.c_h / (std::pow(epsilon, constants.alpha) * std::pow(static_cast<double>(n_q), constants.beta));
  return out;
}

}  // namespace kharper
