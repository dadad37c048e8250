// Copyright 2026 The FxSearcher Authors
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

#include "fxsearcher/trace_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

#include "fxsearcher/errors.h"
#include "json.hpp"

namespace fxsearcher {
namespace {

using nlohmann::json;

double ParseNumber(const std::string& field, const std::string& where) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw CorruptFileError(where + ": '" + field + "' is not a number");
  }
  return value;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

std::string FormatTraceCsv(const std::vector<Observation>& trace) {
  std::string out = std::string(kTraceCsvHeader) + "\n";
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& obs : trace) {
    best = std::max(best, obs.score.s_final);
    out += std::to_string(obs.iteration) + "," + FormatDouble(obs.wall_time_ms) +
           "," + FormatDouble(obs.score.s_target) + "," +
           FormatDouble(obs.score.s_guide) + "," +
           FormatDouble(obs.score.s_final) + "," + FormatDouble(best) + "\n";
  }
  return out;
}

std::string FormatTraceJson(const SearchResult& result, const SearchConfig& config) {
  json observations = json::array();
  for (const auto& obs : result.trace) {
    observations.push_back({{"iteration", obs.iteration}, {"x", obs.x}});
  }
  json failures = json::array();
  for (const auto& f : result.failures) {
    failures.push_back({{"iteration", f.iteration}, {"x", f.x}, {"message", f.message}});
  }
  const json j = {
      {"schema_version", kTraceSchemaVersion},
      {"stop_reason", std::string(StopReasonName(result.stop_reason))},
      {"evaluations", result.evaluations},
      {"max_iterations", config.max_iterations},
      {"patience", config.patience},
      {"best_iteration", result.best_iteration},
      {"observations", observations},
      {"failures", failures},
  };
  return j.dump(2) + "\n";
}

std::vector<TraceRow> ReadTraceCsv(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != kTraceCsvHeader) {
    throw CorruptFileError(path.string() + ": missing or unexpected header");
  }
  std::vector<TraceRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    const std::string where = path.string() + ":" + std::to_string(line_no);
    if (fields.size() != 6) {
      throw CorruptFileError(where + ": expected 6 fields");
    }
    TraceRow row;
    row.iteration = static_cast<int>(ParseNumber(fields[0], where));
    row.wall_time_ms = ParseNumber(fields[1], where);
    row.score = {ParseNumber(fields[2], where), ParseNumber(fields[3], where),
                 ParseNumber(fields[4], where)};
    row.best_so_far = ParseNumber(fields[5], where);
    rows.push_back(row);
  }
  return rows;
}

TraceSidecar ReadTraceJson(const std::filesystem::path& path) {
  json j;
  try {
    j = json::parse(ReadTextFile(path));
    TraceSidecar s;
    if (j.at("schema_version").get<int>() != kTraceSchemaVersion) {
      throw CorruptFileError(path.string() + ": unsupported schema_version");
    }
    s.stop_reason = j.at("stop_reason").get<std::string>();
    s.evaluations = j.at("evaluations").get<int>();
    s.max_iterations = j.at("max_iterations").get<int>();
    s.patience = j.at("patience").get<int>();
    for (const auto& obs : j.at("observations")) {
      s.points.push_back(obs.at("x").get<std::vector<double>>());
    }
    return s;
  } catch (const json::exception& e) {
    throw CorruptFileError(path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace fxsearcher
