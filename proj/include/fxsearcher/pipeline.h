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

#ifndef FXSEARCHER_PIPELINE_H_
#define FXSEARCHER_PIPELINE_H_

#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>

#include "fxsearcher/audio_buffer.h"
#include "fxsearcher/embedding.h"
#include "fxsearcher/fx_params.h"
#include "fxsearcher/optimizer.h"
#include "fxsearcher/run_config.h"

namespace fxsearcher {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitBackend = 3;
inline constexpr int kExitAborted = 4;

struct SearchOutcome {
  SearchResult result;
  FxParams best_params;
  AudioBuffer transformed;
  BackendInfo backend;
};

// Scores candidate parameter sets against the prompts and searches for the
// best one. Audio is processed at its own rate; only the copy sent to the
// backend is downmixed and resampled.
SearchOutcome SearchForParams(const AudioBuffer& input, const RunConfig& config,
                              std::shared_ptr<EmbeddingBackend> backend,
                              std::ostream& log);

// Backend named by the configuration: the builtin test backend or an HTTP
// client for backend_url.
std::shared_ptr<EmbeddingBackend> MakeBackend(const RunConfig& config);

// Writes transformed.wav, params.json, trace.csv, trace.json and run.json.
void WriteRunOutputs(const RunConfig& config, const SearchOutcome& outcome);

// `backend` overrides MakeBackend when given. Returns an exit status.
int CmdOptimize(const RunConfig& config, std::ostream& out, std::ostream& err,
                std::shared_ptr<EmbeddingBackend> backend = nullptr);

int CmdApply(const std::filesystem::path& input_path,
             const std::filesystem::path& params_path,
             const std::filesystem::path& output_path, const StageSet& stages,
             std::ostream& err);

}  // namespace fxsearcher

#endif  // FXSEARCHER_PIPELINE_H_
