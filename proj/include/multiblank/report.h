// multiblank/report.h
//
// Copyright 2026  The multiblank authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MULTIBLANK_REPORT_H_
#define MULTIBLANK_REPORT_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace multiblank {

// Machine-readable run record. Everything outside `timing` is
// deterministic given seed + config; `timing` holds the timestamp and all
// wall-clock measurements and is the one section excluded when comparing
// reruns byte for byte.
struct RunReport {
  std::string command;
  nlohmann::ordered_json config = nlohmann::ordered_json::object();
  nlohmann::ordered_json metrics = nlohmann::ordered_json::object();
  nlohmann::ordered_json timing = nlohmann::ordered_json::object();
  std::vector<std::string> artifacts;

  nlohmann::ordered_json ToJson() const;
};

// Writes report.json under `path` (2-space indent, trailing newline).
void WriteReportJson(const std::filesystem::path &path,
                     const RunReport &report);

// CSV with a header row, comma separator, '.' decimal point and LF line
// endings. Doubles use shortest round-trip formatting.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> header);

  void AddRow(std::vector<std::string> cells);
  void Write(const std::filesystem::path &path) const;

  static std::string Format(double value);
  static std::string Format(std::int64_t value);

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

// ISO-8601 UTC timestamp, e.g. "2026-01-01T12:00:00Z".
std::string CurrentTimestamp();

}  // namespace multiblank

#endif  // MULTIBLANK_REPORT_H_
