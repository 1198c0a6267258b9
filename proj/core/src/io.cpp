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

#include "kharper/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace kharper {

std::string CsvWriter::quote(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out_ << ',';
    out_ << quote(fields[i]);
  }
  out_ << "\r\n";
}

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw std::runtime_error("cannot format number");
  return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& value) { return value ? format_double(*value) : ""; }

std::vector<std::string> observable_header() {
  return {"seed", "realization", "epsilon", "t", "n_g", "norm", "ipr", "second_moment", "localization_length",
          "fidelity"};
}

std::vector<std::string> observable_fields(const ObservableRow& row) {
  return {std::to_string(row.seed),         std::to_string(row.realization),
          format_double(row.epsilon),       std::to_string(row.t),
          std::to_string(row.n_g),          format_double(row.norm),
          format_optional(row.ipr),         format_optional(row.second_moment),
          format_optional(row.localization_length), format_optional(row.fidelity)};
}

void write_observables_csv(std::ostream& out, const std::vector<RunRecord>& records) {
  CsvWriter csv(out);
  csv.row(observable_header());
  for (const auto& rec : records) {
    for (const auto& row : rec.rows) csv.row(observable_fields(row));
  }
}

namespace {

nlohmann::json optional_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(); }

}  // namespace

void write_records_ndjson(std::ostream& out, const std::vector<RunRecord>& records) {
  for (const auto& rec : records) {
    nlohmann::json j;
    j["config"] = rec.config_ini;
    j["epsilon"] = rec.epsilon;
    j["realization"] = rec.realization;
    j["seed"] = rec.seed;
    j["n_g"] = rec.n_g;
    j["wall_seconds"] = rec.wall_seconds;
    j["final_distribution"] = rec.final_distribution;
    auto rows = nlohmann::json::array();
    for (const auto& r : rec.rows) {
      rows.push_back({{"t", r.t},
                      {"norm", r.norm},
                      {"ipr", optional_json(r.ipr)},
                      {"second_moment", optional_json(r.second_moment)},
                      {"localization_length", optional_json(r.localization_length)},
                      {"fidelity", optional_json(r.fidelity)}});
    }
    j["rows"] = std::move(rows);
    out << j.dump() << '\n';
  }
}

void write_ppm(const std::filesystem::path& path, const std::vector<double>& values, std::size_t width,
               std::size_t height) {
  if (values.size() != width * height || width == 0) throw std::invalid_argument("image size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "P6\n" << width << ' ' << height << "\n255\n";
  const double top = *std::max_element(values.begin(), values.end());
  for (double v : values) {
    const double level = top > 0 ? std::pow(std::max(0.0, v) / top, 1.0 / 2.2) : 0.0;
    const auto byte = static_cast<char>(static_cast<unsigned char>(std::lround(255 * level)));
    out.put(byte).put(byte).put(byte);
  }
}

std::vector<double> downsample(const std::vector<double>& values, std::size_t side, std::size_t max_side,
                               std::size_t* new_side) {
  std::size_t factor = 1;
  while (side / factor > max_side && side % (2 * factor) == 0) factor *= 2;
  const std::size_t out_side = side / factor;
  std::vector<double> out(out_side * out_side, 0.0);
  for (std::size_t r = 0; r < side; ++r) {
    for (std::size_t c = 0; c < side; ++c) out[(r / factor) * out_side + c / factor] += values[r * side + c];
  }
  for (auto& v : out) v /= static_cast<double>(factor * factor);
  if (new_side) *new_side = out_side;
  return out;
}

void Manifest::add(const std::string& file, const std::string& kind, const std::string& description) {
  entries_.push_back({file, kind, description});
}

void Manifest::write(const std::filesystem::path& dir) const {
  nlohmann::json j;
  j["command"] = command_;
  j["seed"] = seed_;
  auto files = nlohmann::json::array();
  for (const auto& e : entries_) files.push_back({{"file", e.file}, {"kind", e.kind}, {"description", e.description}});
  j["artifacts"] = std::move(files);
  std::ofstream out(dir / "manifest.json");
  if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
  out << j.dump(2) << '\n';
}

}  // namespace kharper
