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

#ifndef FXSEARCHER_TRACE_IO_H_
#define FXSEARCHER_TRACE_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "fxsearcher/optimizer.h"

namespace fxsearcher {

inline constexpr int kTraceSchemaVersion = 1;
inline constexpr const char* kTraceCsvHeader =
    "iteration,wall_time_ms,s_target,s_guide,s_final,best_so_far";

// One CSV row per successful evaluation. Numbers use the shortest
// representation that round-trips.
std::string FormatTraceCsv(const std::vector<Observation>& trace);

// JSON sidecar with every evaluated point, failures and the stop reason.
std::string FormatTraceJson(const SearchResult& result, const SearchConfig& config);

struct TraceRow {
  int iteration = 0;
  double wall_time_ms = 0.0;
  ScoreBreakdown score;
  double best_so_far = 0.0;
};

struct TraceSidecar {
  std::string stop_reason;
  int evaluations = 0;
  int max_iterations = 0;
  int patience = 0;
  std::vector<std::vector<double>> points;
};

// Throw CorruptFileError on malformed content and IoError on unreadable files.
std::vector<TraceRow> ReadTraceCsv(const std::filesystem::path& path);
TraceSidecar ReadTraceJson(const std::filesystem::path& path);

// Shortest round-trip decimal representation.
std::string FormatDouble(double value);

void WriteTextFile(const std::filesystem::path& path, const std::string& text);
std::string ReadTextFile(const std::filesystem::path& path);

}  // namespace fxsearcher

#endif  // FXSEARCHER_TRACE_IO_H_
