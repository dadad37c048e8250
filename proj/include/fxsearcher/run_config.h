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

#ifndef FXSEARCHER_RUN_CONFIG_H_
#define FXSEARCHER_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "fxsearcher/fx_params.h"
#include "fxsearcher/optimizer.h"
#include "fxsearcher/scorer.h"

namespace fxsearcher {

inline constexpr int kRunSchemaVersion = 1;

struct RunConfig {
  std::filesystem::path input_path;
  std::filesystem::path output_dir;
  PromptPair prompts;
  std::string backend_url;       // used unless builtin_backend is set
  bool builtin_backend = false;  // the deterministic in-process test backend
  StageSet stages = StageSet::All();
  SearchConfig search;
  bool record_timing = true;  // false writes 0 for every wall_time_ms
  int schema_version = kRunSchemaVersion;
};

// Settings from one source (command line or config file); unset fields
// defer to the next source.
struct RunConfigLayer {
  std::optional<std::string> input_path;
  std::optional<std::string> output_dir;
  std::optional<std::string> target_prompt;
  std::optional<std::string> guide_prompt;
  std::optional<bool> guide_enabled;
  std::optional<std::string> backend_url;
  std::optional<bool> builtin_backend;
  std::optional<std::string> stages;
  std::optional<int> max_iterations;
  std::optional<int> patience;
  std::optional<int> init_samples;
  std::optional<int> acq_candidates;
  std::optional<int> acq_refine_steps;
  std::optional<std::uint64_t> seed;
  std::optional<bool> record_timing;
};

// Reads a JSON config file. Keys mirror the long command-line flags with
// underscores: input, out_dir, prompt, guide_prompt, guide_enabled,
// backend_url, builtin_backend, stages, max_iters, patience, init_samples,
// acq_candidates, acq_refine_steps, seed, record_timing. Throws ConfigError.
RunConfigLayer LayerFromJson(std::string_view text);

// Applies command line over config file over defaults, draws a random seed
// when none is given, and validates. Throws ConfigError.
RunConfig ResolveRunConfig(const RunConfigLayer& command_line,
                           const RunConfigLayer& config_file);

// Resolved configuration as persisted in run.json.
std::string RunConfigToJson(const RunConfig& config);

}  // namespace fxsearcher

#endif  // FXSEARCHER_RUN_CONFIG_H_
