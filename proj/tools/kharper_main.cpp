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


// kharper: command line front end for the kicked Harper simulator.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "kharper/config.hpp"
#include "kharper/evolution.hpp"
#include "kharper/experiments.hpp"
#include "kharper/imperfections.hpp"
#include "kharper/io.hpp"
#include "kharper/observables.hpp"
#include "kharper/spectrum.hpp"

namespace fs = std::filesystem;
using namespace kharper;

namespace {

// ---------------------------------------------------------------------------
// Configuration: an INI file merged with command line overrides.

using IniSections = std::vector<std::pair<std::string, std::vector<std::pair<std::string, std::string>>>>;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

// Keeps sections and keys in file order; validation is left to parse_config.
IniSections read_ini_text(std::istream& in) {
  IniSections out;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == ';' || line[0] == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      out.emplace_back(trim(line.substr(1, line.size() - 2)), std::vector<std::pair<std::string, std::string>>{});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || out.empty()) {
      throw std::invalid_argument("config: cannot parse line '" + line + "'");
    }
    out.back().second.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

void set_key(IniSections& ini, const std::string& section, const std::string& key, const std::string& value) {
  auto sec = std::find_if(ini.begin(), ini.end(), [&](const auto& s) { return s.first == section; });
  if (sec == ini.end()) {
    ini.emplace_back(section, std::vector<std::pair<std::string, std::string>>{});
    sec = std::prev(ini.end());
  }
  auto& keys = sec->second;
  auto it = std::find_if(keys.begin(), keys.end(), [&](const auto& kv) { return kv.first == key; });
  if (it == keys.end()) {
    keys.emplace_back(key, value);
  } else {
    it->second = value;
  }
}

void erase_key(IniSections& ini, const std::string& section, const std::string& key) {
  for (auto& [name, keys] : ini) {
    if (name != section) continue;
    std::erase_if(keys, [&](const auto& kv) { return kv.first == key; });
  }
}

std::string write_ini_text(const IniSections& ini) {
  std::ostringstream out;
  for (const auto& [section, keys] : ini) {
    out << '[' << section << "]\n";
    for (const auto& [k, v] : keys) out << k << " = " << v << '\n';
  }
  return out.str();
}

struct Override {
  std::string section;
  std::string key;
  std::string value;
};

struct CommonOptions {
  std::string config_path;
  std::vector<Override> overrides;
  std::map<std::string, std::string> raw;  // flag name -> value as typed
};

ExperimentConfig resolve_config(const CommonOptions& opts) {
  IniSections ini;
  if (!opts.config_path.empty()) {
    std::ifstream in(opts.config_path);
    if (!in) throw std::invalid_argument("config: cannot open " + opts.config_path);
    ini = read_ini_text(in);
  }
  for (const auto& o : opts.overrides) {
    // m and hbar are alternatives; the flag given last on the command line wins over the file
    if (o.section == "model" && o.key == "m") erase_key(ini, "model", "hbar");
    if (o.section == "model" && o.key == "hbar") erase_key(ini, "model", "m");
    set_key(ini, o.section, o.key, o.value);
  }
  std::istringstream in(write_ini_text(ini));
  return parse_config(in);
}

// Adds one flag per configuration field to a subcommand.
void add_config_flags(CLI::App* app, CommonOptions& opts) {
  app->add_option("--config", opts.config_path, "INI configuration file")->check(CLI::ExistingFile);
  struct Field {
    const char* flag;
    const char* section;
    const char* key;
    const char* help;
  };
  static const Field fields[] = {
      {"--K", "model", "K", "theta kick strength"},
      {"--L", "model", "L", "momentum kick strength"},
      {"--n-r", "model", "n_r", "system qubits"},
      {"--m", "model", "m", "hbar = 2 pi m / 2^n_r"},
      {"--hbar", "model", "hbar", "target hbar / 2 pi, rounded to m / 2^n_r"},
      {"--geometry", "model", "geometry", "cylinder or torus"},
      {"--P", "model", "P", "momentum cells (torus)"},
      {"--Q", "model", "Q", "angle cells (torus)"},
      {"--method", "method", "name", "exact, slice or chebyshev"},
      {"--n-slices", "method", "n_slices", "slices per kick"},
      {"--symmetrized", "method", "symmetrized", "symmetrized slice blocks (true/false)"},
      {"--degree", "method", "degree", "Chebyshev degree"},
      {"--samples", "method", "samples", "Chebyshev sample points"},
      {"--threshold", "method", "threshold", "phase pruning threshold"},
      {"--precision-bits", "method", "precision_bits", "fixed-point bits of the exact kick"},
      {"--iterations", "run", "iterations", "Floquet iterations"},
      {"--record-every", "run", "record_every", "observable sampling interval"},
      {"--epsilons", "run", "epsilons", "imperfection strengths, list or start:stop:count (linear)"},
      {"--realizations", "run", "realizations", "disorder realizations per strength"},
      {"--seed", "run", "seed", "master seed"},
      {"--initial", "run", "initial", "zero or packet"},
      {"--packet-n0", "run", "packet_n0", "packet momentum index"},
      {"--packet-t0", "run", "packet_t0", "packet angle index"},
      {"--observables", "run", "observables", "comma list of observables"},
      {"--out-dir", "output", "out_dir", "output directory"},
      {"--format", "output", "format", "csv or ndjson"},
      {"--threads", "output", "threads", "worker threads"},
  };
  for (const auto& f : fields) {
    const std::string flag = f.flag;
    app->add_option_function<std::string>(
        flag,
        [&opts, f](const std::string& value) {
          opts.overrides.push_back({f.section, f.key, value});
          opts.raw[f.flag] = value;
        },
        f.help);
  }
}

// ---------------------------------------------------------------------------
// Output.

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string num(double v) { return format_double(v); }

std::string write_table(const ExperimentConfig& c, const std::string& stem, const Table& table) {
  const std::string name = stem + (c.format == OutputFormat::csv ? ".csv" : ".ndjson");
  std::ofstream out(fs::path(c.out_dir) / name, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + (fs::path(c.out_dir) / name).string());
  if (c.format == OutputFormat::csv) {
    CsvWriter w(out);
    w.row(table.header);
    for (const auto& r : table.rows) w.row(r);
  } else {
    for (const auto& r : table.rows) {
      nlohmann::json j = nlohmann::json::object();
      for (std::size_t i = 0; i < r.size(); ++i) {
        char* end = nullptr;
        const double v = std::strtod(r[i].c_str(), &end);
        if (!r[i].empty() && *end == '\0') {
          j[table.header[i]] = v;
        } else {
          j[table.header[i]] = r[i];
        }
      }
      out << j.dump() << '\n';
    }
  }
  return name;
}

void write_config_copy(const ExperimentConfig& c, Manifest& manifest) {
  std::ofstream out(fs::path(c.out_dir) / "config.ini");
  out << to_ini(c);
  manifest.add("config.ini", "config", "resolved configuration of the run");
}

std::string image(const ExperimentConfig& c, const std::string& name, const std::vector<double>& values,
                  std::size_t width, std::size_t height) {
  write_ppm(fs::path(c.out_dir) / name, values, width, height);
  return name;
}

std::vector<double> square_image(const HusimiGrid& h, std::size_t* side) {
  return downsample(h.values, h.size, 512, side);
}

// ---------------------------------------------------------------------------
// Subcommands.

void cmd_evolve(const ExperimentConfig& c, Manifest& m) {
  const auto records = run_experiment(c);
  std::ofstream out(fs::path(c.out_dir) / (c.format == OutputFormat::csv ? "observables.csv" : "records.ndjson"),
                    std::ios::binary);
  if (c.format == OutputFormat::csv) {
    write_observables_csv(out, records);
    m.add("observables.csv", "table", "observables per record and recorded time");
    Table dist{{"epsilon", "realization", "n", "probability"}, {}};
    for (const auto& r : records) {
      for (std::size_t n = 0; n < r.final_distribution.size(); ++n) {
        dist.rows.push_back({num(r.epsilon), std::to_string(r.realization), std::to_string(n),
                             num(r.final_distribution[n])});
      }
    }
    m.add(write_table(c, "final_distribution", dist), "table", "momentum distribution after the last iteration");
  } else {
    write_records_ndjson(out, records);
    m.add("records.ndjson", "table", "one record per strength and realization with rows and final distribution");
  }
  for (const auto& r : records) {
    const auto& last = r.rows.back();
    std::printf("epsilon=%s realization=%d n_g=%lld t=%d ipr=%s fidelity=%s\n", num(r.epsilon).c_str(),
                r.realization, static_cast<long long>(r.n_g), last.t, format_optional(last.ipr).c_str(),
                format_optional(last.fidelity).c_str());
  }
}

struct SpectrumOptions {
  std::string mode = "diagonalize";
  int time_qubits = 8;
};

void cmd_spectrum(const ExperimentConfig& c, const SpectrumOptions& o, Manifest& m) {
  const FloquetStepper stepper(c.params, c.method);
  const double eps = c.epsilons.back();
  std::optional<ImperfectionChannel> noise;
  if (eps > 0) noise.emplace(sample_disorder(stepper.num_qubits(), eps, realization_seed(c.seed, 0)));
  const StepFunction step = [&](QuantumState& s) {
    if (noise) {
      stepper.step(s, *noise);
    } else {
      stepper.step(s);
    }
  };
  if (o.mode == "diagonalize") {
    const auto set = eigenphases(build_unitary(stepper.zero_state(), step, c.threads), to_string(c.method.method));
    Table t{{"index", "phase"}, {}};
    for (std::size_t i = 0; i < set.phases.size(); ++i) t.rows.push_back({std::to_string(i), num(set.phases[i])});
    m.add(write_table(c, "eigenphases", t), "table", "sorted Floquet eigenphases");
    const auto mirror = mirror_asymmetry(set);
    std::printf("levels=%zu max_modulus_deviation=%.3g mirror_asymmetry=%.3g\n", set.phases.size(),
                set.max_modulus_deviation, mirror.mean_error);
  } else if (o.mode == "time-series") {
    const auto psi0 = stepper.from_momentum(initial_momentum_state(c));
    const auto series = time_series_spectrum(psi0, step, c.iterations);
    Table t{{"phase", "weight"}, {}};
    for (const auto& p : series.peaks) t.rows.push_back({num(p.phase), num(p.weight)});
    m.add(write_table(c, "peaks", t), "table", "spectral peaks of the autocorrelation");
    std::printf("iterations=%d peaks=%zu\n", c.iterations, series.peaks.size());
  } else if (o.mode == "phase-estimation") {
    const auto psi0 = stepper.from_momentum(initial_momentum_state(c));
    const auto prob = phase_estimation(psi0, step, o.time_qubits);
    Table t{{"bin", "phase", "probability"}, {}};
    for (std::size_t k = 0; k < prob.size(); ++k) {
      t.rows.push_back({std::to_string(k), num(kTwoPi * double(k) / double(prob.size())), num(prob[k])});
    }
    m.add(write_table(c, "phase_estimation", t), "table", "outcome distribution of the time register");
    const auto top = std::max_element(prob.begin(), prob.end()) - prob.begin();
    std::printf("time_qubits=%d most_likely_bin=%td probability=%.4g\n", o.time_qubits, top, prob[top]);
  } else {
    throw std::invalid_argument("--mode: expected diagonalize, time-series or phase-estimation");
  }
}

void cmd_butterfly(const ExperimentConfig& c, const std::vector<double>& m_list, Manifest& m) {
  std::vector<std::uint64_t> ms;
  const std::uint64_t N = c.params.dimension();
  if (m_list.empty()) {
    for (std::uint64_t v = 1; v < N; ++v) ms.push_back(v);
  } else {
    for (double v : m_list) {
      if (v < 1 || v >= double(N) || v != std::floor(v)) throw std::invalid_argument("--m-list: values must be integers in [1, N_H)");
      ms.push_back(static_cast<std::uint64_t>(v));
    }
  }
  const auto scan = butterfly_scan(c.params.n_r, c.params.K, c.params.L, ms, c.method, c.threads);
  Table t{{"m", "hbar", "index", "phase"}, {}};
  const std::size_t rows = 256;
  std::vector<double> img(rows * scan.size(), 0.0);
  const double scale = std::max(c.params.K, c.params.L);
  for (std::size_t i = 0; i < scan.size(); ++i) {
    const auto mirror = mirror_asymmetry(scan[i].phases);
    for (std::size_t k = 0; k < scan[i].phases.phases.size(); ++k) {
      const double phase = scan[i].phases.phases[k];
      t.rows.push_back({std::to_string(scan[i].m), num(scan[i].hbar), std::to_string(k), num(phase)});
      const double e = -(phase + mirror.offset / 2) * scan[i].hbar / scale;
      const auto row = static_cast<std::size_t>(std::clamp((2.2 - e) / 4.4 * double(rows), 0.0, double(rows - 1)));
      img[row * scan.size() + i] += 1;
    }
  }
  m.add(write_table(c, "butterfly", t), "table", "eigenphases for every hbar = 2 pi m / N_H");
  m.add(image(c, "butterfly.ppm", img, scan.size(), rows), "image", "level density, hbar across, energy down");
  std::printf("points=%zu levels_per_point=%llu\n", scan.size(), static_cast<unsigned long long>(N));
}

void cmd_husimi(const ExperimentConfig& c, Manifest& m) {
  const FloquetStepper stepper(c.params, c.method);
  const double eps = c.epsilons.back();
  QuantumState s = stepper.from_momentum(initial_momentum_state(c));
  if (eps > 0) {
    const ImperfectionChannel noise(sample_disorder(stepper.num_qubits(), eps, realization_seed(c.seed, 0)));
    for (int t = 0; t < c.iterations; ++t) stepper.step(s, noise);
  } else {
    for (int t = 0; t < c.iterations; ++t) stepper.step(s);
  }
  const auto h = husimi(stepper.to_momentum(s), c.params.P, c.params.Q);
  std::size_t side = 0;
  const auto img = square_image(h, &side);
  m.add(image(c, "husimi.ppm", img, side, side), "image", "Husimi density, momentum down, angle across");
  Table t{{"n", "t", "h"}, {}};
  for (std::size_t n = 0; n < side; ++n) {
    for (std::size_t a = 0; a < side; ++a) t.rows.push_back({std::to_string(n), std::to_string(a), num(img[n * side + a])});
  }
  m.add(write_table(c, "husimi", t), "table", "Husimi density on the (downsampled) grid");
  std::printf("iterations=%d epsilon=%s total=%.6f grid=%zu\n", c.iterations, num(eps).c_str(), h.total(), side);
}

void cmd_web(const ExperimentConfig& c, std::size_t particles, Manifest& m) {
  const auto classical = classical_web_density(c.params, particles, c.iterations, c.threads, c.seed);
  const auto mask = web_mask(classical, c.params.dimension());
  std::set<int> grid{0, c.iterations};
  for (double t = 1; t < c.iterations; t *= 1.12) grid.insert(static_cast<int>(std::lround(t)));
  const std::vector<int> times(grid.begin(), grid.end());
  Table t{{"epsilon", "t", "husimi_error"}, {}};
  Table summary{{"epsilon", "n_q", "t_h"}, {}};
  const FloquetStepper stepper(c.params, c.method);
  bool first = true;
  for (double eps : c.epsilons) {
    if (!(eps > 0)) continue;
    const auto study = web_study(c, eps, times, mask);
    for (std::size_t i = 0; i < times.size(); ++i) {
      t.rows.push_back({num(eps), std::to_string(times[i]), num(study.husimi_error[i])});
    }
    summary.rows.push_back({num(eps), std::to_string(stepper.num_qubits()),
                            study.t_h ? num(*study.t_h) : std::string{}});
    std::printf("epsilon=%s t_h=%s\n", num(eps).c_str(), format_optional(study.t_h).c_str());
    if (first) {
      std::size_t side = 0;
      const auto ideal = square_image(study.ideal_final, &side);
      m.add(image(c, "web_ideal.ppm", ideal, side, side), "image", "noiseless Husimi density at the horizon");
      const auto noisy = square_image(study.noisy_final, &side);
      m.add(image(c, "web_noisy.ppm", noisy, side, side), "image",
            "Husimi density of the first realization at the weakest strength");
      first = false;
    }
  }
  if (summary.rows.empty()) throw std::invalid_argument("--epsilons: web needs at least one positive strength");
  std::vector<double> density(classical.counts.begin(), classical.counts.end());
  m.add(image(c, "web_classical.ppm", density, classical.angle_bins, classical.momentum_bins), "image",
        "classical density on the stochastic web");
  m.add(write_table(c, "web_error", t), "table", "Husimi error on the web mask over time");
  m.add(write_table(c, "web_th", summary), "table", "time at which the Husimi error reaches 0.5");
}

void cmd_sweep_kl(const ExperimentConfig& c, const std::vector<double>& Ks, const std::vector<double>& Ls,
                  Manifest& m) {
  if (Ks.empty() || Ls.empty()) throw std::invalid_argument("sweep-kl needs --K-list and --L-list");
  const auto points = sweep_kl(Ks, Ls, c.params.n_r, c.params.m, c.threads);
  Table t{{"K", "L", "mean_eigenstate_ipr"}, {}};
  std::vector<double> img(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    t.rows.push_back({num(points[i].K), num(points[i].L), num(points[i].mean_ipr)});
    // image rows run over K, columns over L
    img[i] = points[i].mean_ipr;
  }
  m.add(write_table(c, "sweep_kl", t), "table", "mean eigenstate IPR over the (K, L) grid");
  m.add(image(c, "sweep_kl.ppm", img, Ls.size(), Ks.size()), "image", "delocalization map, K down, L across");
  std::printf("points=%zu max_ipr=%.3f\n", points.size(),
              std::max_element(points.begin(), points.end(), [](auto& a, auto& b) { return a.mean_ipr < b.mean_ipr; })
                  ->mean_ipr);
}

void cmd_transition(const ExperimentConfig& c, const std::vector<double>& Ks, Manifest& m) {
  if (Ks.empty()) throw std::invalid_argument("transition needs --K-list");
  Table t{{"epsilon", "K", "mean_ipr"}, {}};
  Table summary{{"epsilon", "K_c"}, {}};
  for (double eps : c.epsilons) {
    const auto scan = transition_scan(c, Ks, eps);
    for (std::size_t i = 0; i < Ks.size(); ++i) t.rows.push_back({num(eps), num(Ks[i]), num(scan.mean_ipr[i])});
    summary.rows.push_back({num(eps), scan.K_c ? num(*scan.K_c) : std::string{}});
    std::printf("epsilon=%s K_c=%s\n", num(eps).c_str(), format_optional(scan.K_c).c_str());
  }
  m.add(write_table(c, "transition", t), "table", "IPR after the run for every K and strength");
  m.add(write_table(c, "transition_kc", summary), "table", "K at which the IPR first reaches N_H / 4");
}

void cmd_epsilon_c(const ExperimentConfig& c, Manifest& m) {
  std::vector<double> eps;
  for (double e : c.epsilons) {
    if (e > 0) eps.push_back(e);
  }
  if (eps.empty()) throw std::invalid_argument("--epsilons: epsilon-c needs positive strengths");
  const auto scan = epsilon_c_scan(c, eps);
  Table t{{"epsilon", "saturation_ipr", "reference_ipr"}, {}};
  for (std::size_t i = 0; i < eps.size(); ++i) {
    t.rows.push_back({num(eps[i]), num(scan.saturation_ipr[i]), num(scan.reference_ipr)});
  }
  m.add(write_table(c, "epsilon_c", t), "table", "saturation IPR against imperfection strength");
  const FloquetStepper stepper(c.params, c.method);
  std::printf("reference_ipr=%.4g epsilon_c=%s n_g=%lld n_q=%d\n", scan.reference_ipr,
              format_optional(scan.epsilon_c).c_str(), static_cast<long long>(stepper.gate_count()),
              stepper.num_qubits());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kharper: state-vector simulation of the quantum kicked Harper model"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "kharper 0.1.0");

  CommonOptions opts;
  SpectrumOptions spectrum_opts;
  std::vector<double> m_list;
  std::vector<double> k_list;
  std::vector<double> l_list;
  std::size_t particles = 200000;
  std::string k_text;
  std::string l_text;
  std::string m_text;

  auto* evolve = app.add_subcommand("evolve", "evolve the initial state and record observables");
  auto* spectrum = app.add_subcommand("spectrum", "Floquet eigenphases by diagonalization, time series or phase estimation");
  auto* butterfly = app.add_subcommand("butterfly", "eigenphases against hbar on the cylinder");
  auto* husimi_cmd = app.add_subcommand("husimi", "Husimi density after the run");
  auto* web = app.add_subcommand("web", "Husimi error on the stochastic web");
  auto* sweep = app.add_subcommand("sweep-kl", "mean eigenstate IPR over a (K, L) grid");
  const auto sweep_default = [&] {
    if (k_text.empty()) k_text = "0:10:21";
    if (l_text.empty()) l_text = "0:10:21";
  };
  auto* transition = app.add_subcommand("transition", "IPR against K and the delocalization point K_c");
  auto* epsc = app.add_subcommand("epsilon-c", "saturation IPR against imperfection strength");
  for (auto* sub : {evolve, spectrum, butterfly, husimi_cmd, web, sweep, transition, epsc}) add_config_flags(sub, opts);

  spectrum->add_option("--mode", spectrum_opts.mode, "diagonalize, time-series or phase-estimation")
      ->check(CLI::IsMember({"diagonalize", "time-series", "phase-estimation"}));
  spectrum->add_option("--time-qubits", spectrum_opts.time_qubits, "time register size for phase estimation")
      ->check(CLI::Range(1, 20));
  butterfly->add_option("--m-list", m_text, "values of m, list or start:stop:count (default all)");
  web->add_option("--particles", particles, "classical particles for the web mask")->check(CLI::PositiveNumber);
  sweep->add_option("--K-list", k_text, "K values, list or start:stop:count (default 0:10:21)");
  sweep->add_option("--L-list", l_text, "L values, list or start:stop:count (default 0:10:21)");
  transition->add_option("--K-list", k_text, "K values, list or start:stop:count")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    ExperimentConfig c = resolve_config(opts);
    if (app.got_subcommand(sweep)) sweep_default();
    if (!m_text.empty()) m_list = parse_number_list(m_text);
    if (!k_text.empty()) k_list = parse_number_list(k_text);
    if (!l_text.empty()) l_list = parse_number_list(l_text);
    fs::create_directories(c.out_dir);
    auto* sub = app.get_subcommands().front();
    Manifest manifest(sub->get_name(), c.seed);
    write_config_copy(c, manifest);
    if (sub == evolve) cmd_evolve(c, manifest);
    if (sub == spectrum) cmd_spectrum(c, spectrum_opts, manifest);
    if (sub == butterfly) cmd_butterfly(c, m_list, manifest);
    if (sub == husimi_cmd) cmd_husimi(c, manifest);
    if (sub == web) cmd_web(c, particles, manifest);
    if (sub == sweep) cmd_sweep_kl(c, k_list, l_list, manifest);
    if (sub == transition) cmd_transition(c, k_list, manifest);
    if (sub == epsc) cmd_epsilon_c(c, manifest);
    manifest.write(c.out_dir);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "kharper: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
