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

#include "fxsearcher/report.h"

#include <algorithm>
#include <sstream>

#include "fxsearcher/errors.h"
#include "fxsearcher/pipeline.h"

namespace fxsearcher {

TraceSummary Summarize(const std::vector<TraceRow>& rows, const TraceSidecar& sidecar) {
  if (rows.empty()) throw CorruptFileError("trace holds no evaluations");
  TraceSummary s;
  s.rows = static_cast<int>(rows.size());
  s.evaluations = sidecar.evaluations;
  s.stop_reason = sidecar.stop_reason;
  s.best_s_final = rows.front().score.s_final;
  s.best_iteration = rows.front().iteration;
  for (const auto& r : rows) {
    // First occurrence wins, as in the optimizer's incumbent.
    if (r.score.s_final > s.best_s_final) {
      s.best_s_final = r.score.s_final;
      s.best_iteration = r.iteration;
    }
  }
  return s;
}

std::string BestSoFarSvg(const std::vector<TraceRow>& rows) {
  constexpr double kWidth = 640, kHeight = 360, kMargin = 40;
  double lo = rows.front().best_so_far, hi = lo;
  int max_iter = 1;
  for (const auto& r : rows) {
    lo = std::min(lo, r.best_so_far);
    hi = std::max(hi, r.best_so_far);
    max_iter = std::max(max_iter, r.iteration);
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kHeight - kMargin << "\" x2=\""
      << kWidth - kMargin << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << kMargin << "\" x2=\"" << kMargin
      << "\" y2=\"" << kHeight - kMargin << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 8
      << "\" text-anchor=\"middle\" font-size=\"12\">iteration</text>\n"
      << "<text x=\"12\" y=\"" << kHeight / 2
      << "\" font-size=\"12\" transform=\"rotate(-90 12 " << kHeight / 2
      << ")\" text-anchor=\"middle\">best s_final</text>\n"
      << "<text x=\"" << kMargin << "\" y=\"" << kMargin - 6
      << "\" font-size=\"10\">" << hi << "</text>\n"
      << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 14
      << "\" font-size=\"10\">" << lo << "</text>\n"
      << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"2\" points=\"";
  for (const auto& r : rows) {
    const double x = kMargin + (kWidth - 2 * kMargin) * r.iteration / max_iter;
    const double y = kHeight - kMargin -
                     (kHeight - 2 * kMargin) * (r.best_so_far - lo) / (hi - lo);
    svg << x << "," << y << " ";
  }
  svg << "\"/>\n</svg>\n";
  return svg.str();
}

int CmdReport(const std::filesystem::path& trace_csv,
              const std::filesystem::path& svg_path, std::ostream& out,
              std::ostream& err) {
  TraceSummary summary;
  std::vector<TraceRow> rows;
  try {
    rows = ReadTraceCsv(trace_csv);
    const TraceSidecar sidecar =
        ReadTraceJson(std::filesystem::path(trace_csv).replace_extension(".json"));
    summary = Summarize(rows, sidecar);
  } catch (const Error& e) {
    err << "report: " << e.what() << "\n";
    return kExitConfig;
  }
  out << "evaluations: " << summary.evaluations << " (" << summary.rows
      << " scored)\n"
      << "best s_final: " << summary.best_s_final << "\n"
      << "best iteration: " << summary.best_iteration << "\n"
      << "stop reason: " << summary.stop_reason << "\n";
  const auto svg = svg_path.empty() ? trace_csv.parent_path() / "best_so_far.svg" : svg_path;
  try {
    WriteTextFile(svg, BestSoFarSvg(rows));
  } catch (const Error& e) {
    err << "report: " << e.what() << "\n";
    return kExitFailure;
  }
  out << "plot: " << svg.string() << "\n";
  return kExitOk;
}

}  // namespace fxsearcher
