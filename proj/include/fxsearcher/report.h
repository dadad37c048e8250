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

#ifndef FXSEARCHER_REPORT_H_
#define FXSEARCHER_REPORT_H_

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "fxsearcher/trace_io.h"

namespace fxsearcher {

struct TraceSummary {
  int rows = 0;         // successful evaluations
  int evaluations = 0;  // including failures
  double best_s_final = 0.0;
  int best_iteration = 0;
  std::string stop_reason;
};

// Throws CorruptFileError for an empty trace.
TraceSummary Summarize(const std::vector<TraceRow>& rows, const TraceSidecar& sidecar);

// Line plot of best-so-far s_final against iteration.
std::string BestSoFarSvg(const std::vector<TraceRow>& rows);

// Reads `trace_csv` and the trace.json next to it, prints a summary and writes
// the plot to `svg_path` (default: best_so_far.svg beside the trace).
int CmdReport(const std::filesystem::path& trace_csv,
              const std::filesystem::path& svg_path, std::ostream& out,
              std::ostream& err);

}  // namespace fxsearcher

#endif  // FXSEARCHER_REPORT_H_
