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

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "kharper/experiments.hpp"

namespace kharper {

/// RFC 4180 CSV: fields quoted when they contain a comma, quote or line break;
/// records end with CRLF.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  void row(const std::vector<std::string>& fields);
  static std::string quote(std::string_view field);

 private:
  std::ostream& out_;
};

/// Shortest text that reads back to the same double.
std::string format_double(double value);
std::string format_optional(const std::optional<double>& value);

/// Column names of observable rows, provenance first.
std::vector<std::string> observable_header();
std::vector<std::string> observable_fields(const ObservableRow& row);

void write_observables_csv(std::ostream& out, const std::vector<RunRecord>& records);
/// One JSON object per line per record.
void write_records_ndjson(std::ostream& out, const std::vector<RunRecord>& records);

/// Binary greyscale PPM (P6), row-major. Values are scaled by the maximum and
/// mapped through v^(1/2.2) so faint structure stays visible.
void write_ppm(const std::filesystem::path& path, const std::vector<double>& values, std::size_t width,
               std::size_t height);

/// Averages square blocks so the image is at most `max_side` pixels wide.
std::vector<double> downsample(const std::vector<double>& values, std::size_t side, std::size_t max_side,
                               std::size_t* new_side);

/// Index of artifacts written by one command, saved as manifest.json.
class Manifest {
 public:
  Manifest(std::string command, std::uint64_t seed) : command_(std::move(command)), seed_(seed) {}
  void add(const std::string& file, const std::string& kind, const std::string& description);
  void write(const std::filesystem::path& dir) const;

 private:
  struct Entry {
    std::string file;
    std::string kind;
    std::string description;
  };
  std::string command_;
  std::uint64_t seed_;
  std::vector<Entry> entries_;
};

}  // namespace kharper
