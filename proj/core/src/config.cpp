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

#include "kharper/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace kharper {
namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  double v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw std::invalid_argument(key + ": expected a number, got '" + text + "'");
  }
  return v;
}

template <class Int>
Int parse_int(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  Int v = 0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size()) {
    throw std::invalid_argument(key + ": expected an integer, got '" + text + "'");
  }
  return v;
}

bool parse_bool(const std::string& key, const std::string& text) {
  const std::string t = trim(text);
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw std::invalid_argument(key + ": expected true or false, got '" + text + "'");
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

const std::vector<std::string>& allowed_keys(const std::string& section) {
  static const std::vector<std::string> model{"K", "L", "n_r", "m", "hbar", "geometry", "P", "Q"};
  static const std::vector<std::string> method{"name", "n_slices", "symmetrized", "degree",
                                               "samples", "threshold", "precision_bits"};
  static const std::vector<std::string> run{"iterations", "record_every", "epsilons", "realizations", "seed",
                                            "initial", "packet_n0", "packet_t0", "observables"};
  static const std::vector<std::string> output{"out_dir", "format", "threads"};
  static const std::vector<std::string> none;
  if (section == "model") return model;
  if (section == "method") return method;
  if (section == "run") return run;
  if (section == "output") return output;
  return none;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "ndjson") return OutputFormat::ndjson;
  throw std::invalid_argument("format: expected csv or ndjson, got '" + name + "'");
}

std::string to_string(OutputFormat format) { return format == OutputFormat::csv ? "csv" : "ndjson"; }

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1) {
      out.push_back(parse_double("list", parts[0]));
    } else if (parts.size() == 3) {
      const double a = parse_double("list", parts[0]);
      const double b = parse_double("list", parts[1]);
      const int n = parse_int<int>("list", parts[2]);
      if (n < 1) throw std::invalid_argument("list: range needs at least one point");
      for (int i = 0; i < n; ++i) out.push_back(n == 1 ? a : a + (b - a) * i / (n - 1));
    } else {
      throw std::invalid_argument("list: expected value or start:stop:count, got '" + item + "'");
    }
  }
  return out;
}

bool ExperimentConfig::wants(const std::string& observable) const {
  return std::find(observables.begin(), observables.end(), observable) != observables.end();
}

void ExperimentConfig::validate() const {
  method.validate(params);
  if (iterations < 0) throw std::invalid_argument("iterations must be non-negative");
  if (record_every < 0) throw std::invalid_argument("record_every must be non-negative");
  if (realizations < 1) throw std::invalid_argument("realizations must be at least 1");
  if (threads < 1) throw std::invalid_argument("threads must be at least 1");
  if (epsilons.empty()) throw std::invalid_argument("epsilons must list at least one value");
  for (double e : epsilons) {
    if (!(e >= 0) || !std::isfinite(e)) throw std::invalid_argument("epsilons must be finite and non-negative");
    if (e > 0 && method.method == Method::exact) {
      throw std::invalid_argument("epsilons: imperfections need method slice or chebyshev");
    }
  }
  for (const auto& o : observables) {
    const auto& known = known_observables();
    if (std::find(known.begin(), known.end(), o) == known.end()) {
      throw std::invalid_argument("observables: unknown observable '" + o + "'");
    }
  }
  if (out_dir.empty()) throw std::invalid_argument("out_dir must not be empty");
}

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree tree;
  try {
    pt::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.message() + " at line " + std::to_string(e.line()));
  }
  for (const auto& [section, body] : tree) {
    const auto& keys = allowed_keys(section);
    if (keys.empty()) throw std::invalid_argument("config: unknown section [" + section + "]");
    for (const auto& [key, value] : body) {
      if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
        throw std::invalid_argument(section + "." + key + ": unknown key");
      }
    }
  }
  auto get = [&](const std::string& path) -> std::optional<std::string> {
    if (auto v = tree.get_optional<std::string>(pt::ptree::path_type(path, '.'))) return trim(*v);
    return std::nullopt;
  };

  ExperimentConfig c;
  HarperParams& p = c.params;
  if (auto v = get("model.K")) p.K = parse_double("model.K", *v);
  if (auto v = get("model.L")) p.L = parse_double("model.L", *v);
  p.n_r = parse_int<int>("model.n_r", get("model.n_r").value_or("8"));
  const std::string geometry = get("model.geometry").value_or("cylinder");
  const auto m_text = get("model.m");
  const auto hbar_text = get("model.hbar");
  if (m_text && hbar_text) throw std::invalid_argument("model: give either m or hbar, not both");
  if (geometry == "cylinder") {
    if (m_text) {
      p.m = parse_int<std::uint64_t>("model.m", *m_text);
    } else {
      const double target = hbar_text ? parse_double("model.hbar", *hbar_text) : golden_hbar_fraction();
      if (p.n_r < 1 || p.n_r > 26) throw std::invalid_argument("model.n_r must lie in [1, 26]");
      p.m = nearest_hbar(p.n_r, target).m;
    }
    p.P = p.m;
    p.Q = 1;
  } else if (geometry == "torus") {
    p.P = parse_int<std::uint64_t>("model.P", get("model.P").value_or("1"));
    p.Q = parse_int<std::uint64_t>("model.Q", get("model.Q").value_or("1"));
    p.m = p.P * p.Q;
    if (m_text && parse_int<std::uint64_t>("model.m", *m_text) != p.m) {
      throw std::invalid_argument("model.m: must equal P*Q on the torus");
    }
    if (hbar_text) throw std::invalid_argument("model.hbar: not used on the torus (hbar = 2 pi P Q / N_H)");
  } else {
    throw std::invalid_argument("model.geometry: expected cylinder or torus, got '" + geometry + "'");
  }

  MethodConfig& m = c.method;
  m.method = parse_method(get("method.name").value_or("exact"));
  if (auto v = get("method.n_slices")) m.slice.n_slices = parse_int<int>("method.n_slices", *v);
  if (auto v = get("method.symmetrized")) m.slice.symmetrized = parse_bool("method.symmetrized", *v);
  if (auto v = get("method.degree")) m.chebyshev.degree = parse_int<int>("method.degree", *v);
  if (auto v = get("method.samples")) m.chebyshev.samples = parse_int<int>("method.samples", *v);
  if (auto v = get("method.threshold")) m.chebyshev.threshold = parse_double("method.threshold", *v);
  if (auto v = get("method.precision_bits")) m.precision_bits = parse_int<int>("method.precision_bits", *v);

  if (auto v = get("run.iterations")) c.iterations = parse_int<int>("run.iterations", *v);
  if (auto v = get("run.record_every")) c.record_every = parse_int<int>("run.record_every", *v);
  if (auto v = get("run.epsilons")) c.epsilons = parse_number_list(*v);
  if (auto v = get("run.realizations")) c.realizations = parse_int<int>("run.realizations", *v);
  if (auto v = get("run.seed")) c.seed = parse_int<std::uint64_t>("run.seed", *v);
  if (auto v = get("run.initial")) {
    if (*v == "zero") {
      c.initial = InitialState::zero;
    } else if (*v == "packet") {
      c.initial = InitialState::packet;
    } else {
      throw std::invalid_argument("run.initial: expected zero or packet, got '" + *v + "'");
    }
  }
  if (auto v = get("run.packet_n0")) c.packet_n0 = parse_double("run.packet_n0", *v);
  if (auto v = get("run.packet_t0")) c.packet_t0 = parse_double("run.packet_t0", *v);
  if (auto v = get("run.observables")) c.observables = split(*v, ',');

  if (auto v = get("output.out_dir")) c.out_dir = *v;
  if (auto v = get("output.format")) c.format = parse_format(*v);
  if (auto v = get("output.threads")) c.threads = parse_int<int>("output.threads", *v);

  c.validate();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path.string());
  return parse_config(in);
}

std::string to_ini(const ExperimentConfig& c) {
  std::ostringstream out;
  const bool torus = c.params.Q != 1 || c.params.P != c.params.m;
  out << "[model]\n"
      << "K = " << format_number(c.params.K) << "\n"
      << "L = " << format_number(c.params.L) << "\n"
      << "n_r = " << c.params.n_r << "\n";
  if (torus) {
    out << "geometry = torus\nP = " << c.params.P << "\nQ = " << c.params.Q << "\n";
  } else {
    out << "geometry = cylinder\nm = " << c.params.m << "\n";
  }
  out << "\n[method]\n"
      << "name = " << to_string(c.method.method) << "\n"
      << "n_slices = " << c.method.slice.n_slices << "\n"
      << "symmetrized = " << (c.method.slice.symmetrized ? "true" : "false") << "\n"
      << "degree = " << c.method.chebyshev.degree << "\n"
      << "samples = " << c.method.chebyshev.samples << "\n"
      << "threshold = " << format_number(c.method.chebyshev.threshold) << "\n";
  if (c.method.precision_bits) out << "precision_bits = " << *c.method.precision_bits << "\n";
  out << "\n[run]\n"
      << "iterations = " << c.iterations << "\n"
      << "record_every = " << c.record_every << "\n"
      << "epsilons = ";
  for (std::size_t i = 0; i < c.epsilons.size(); ++i) out << (i ? ", " : "") << format_number(c.epsilons[i]);
  out << "\nrealizations = " << c.realizations << "\n"
      << "seed = " << c.seed << "\n"
      << "initial = " << (c.initial == InitialState::zero ? "zero" : "packet") << "\n"
      << "packet_n0 = " << format_number(c.packet_n0) << "\n"
      << "packet_t0 = " << format_number(c.packet_t0) << "\n"
      << "observables = ";
  for (std::size_t i = 0; i < c.observables.size(); ++i) out << (i ? ", " : "") << c.observables[i];
  out << "\n\n[output]\n"
      << "out_dir = " << c.out_dir << "\n"
      << "format = " << to_string(c.format) << "\n"
      << "threads = " << c.threads << "\n";
  return out.str();
}

}  // namespace kharper
