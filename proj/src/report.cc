// multiblank/report.cc
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

#include "multiblank/report.h"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <stdexcept>

#include "multiblank/data.h"

namespace multiblank {

nlohmann::ordered_json RunReport::ToJson() const {
  nlohmann::ordered_json j;
  j["format"] = "multiblank-report-v1";
  j["command"] = command;
  j["config"] = config;
  j["metrics"] = metrics;
  j["artifacts"] = artifacts;
  j["timing"] = timing;
  return j;
}

void WriteReportJson(const std::filesystem::path &path,
                     const RunReport &report) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("WriteReportJson: cannot open " + path.string());
  out << report.ToJson().dump(2) << "\n";
  if (!out) throw IoError("WriteReportJson: write failed for " + path.string());
}

CsvWriter::CsvWriter(std::vector<std::string> header)
    : header_(std::move(header)) {
  if (header_.empty()) {
    throw std::invalid_argument("CsvWriter: empty header");
  }
}

void CsvWriter::AddRow(std::vector<std::string> cells) {
  if (cells.size() != header_.size()) {
    throw std::invalid_argument("CsvWriter: row width != header width");
  }
  rows_.push_back(std::move(cells));
}

void CsvWriter::Write(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("CsvWriter: cannot open " + path.string());
  auto write_row = [&out](const std::vector<std::string> &cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out << ',';
      out << cells[i];
    }
    out << '\n';  // LF only
  };
  write_row(header_);
  for (const auto &row : rows_) write_row(row);
  if (!out) throw IoError("CsvWriter: write failed for " + path.string());
}

std::string CsvWriter::Format(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::invalid_argument("CsvWriter: bad double");
  return std::string(buf, ptr);
}

std::string CsvWriter::Format(std::int64_t value) {
  return std::to_string(value);
}

std::string CurrentTimestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm_utc{};
  gmtime_r(&now, &tm_utc);
  char buf[80];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02dT%02d:%02d:%02dZ",
                tm_utc.tm_year + 1900, tm_utc.tm_mon + 1, tm_utc.tm_mday,
                tm_utc.tm_hour, tm_utc.tm_min, tm_utc.tm_sec);
  return buf;
}

}  // namespace multiblank
