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

#include "fxsearcher/run_config.h"

#include <random>

#include "fxsearcher/errors.h"
#include "json.hpp"

namespace fxsearcher {
namespace {

using nlohmann::json;

template <typename T>
void Read(const json& j, const char* key, std::optional<T>& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string("config file: field '") + key +
                      "' has the wrong type");
  }
}

template <typename T>
T Pick(const std::optional<T>& cli, const std::optional<T>& file, T fallback) {
  if (cli) return *cli;
  if (file) return *file;
  return fallback;
}

}  // namespace

RunConfigLayer LayerFromJson(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config file must hold a JSON object");
  RunConfigLayer layer;
  Read(j, "input", layer.input_path);
  Read(j, "out_dir", layer.output_dir);
  Read(j, "prompt", layer.target_prompt);
  Read(j, "guide_prompt", layer.guide_prompt);
  Read(j, "guide_enabled", layer.guide_enabled);
  Read(j, "backend_url", layer.backend_url);
  Read(j, "builtin_backend", layer.builtin_backend);
  if (j.contains("stages") && j["stages"].is_array()) {
    std::string joined;
    for (const auto& s : j["stages"]) {
      if (!s.is_string()) throw ConfigError("config file: stages must be strings");
      joined += (joined.empty() ? "" : ",") + s.get<std::string>();
    }
    layer.stages = joined;
  } else {
    Read(j, "stages", layer.stages);
  }
  Read(j, "max_iters", layer.max_iterations);
  Read(j, "patience", layer.patience);
  Read(j, "init_samples", layer.init_samples);
  Read(j, "acq_candidates", layer.acq_candidates);
  Read(j, "acq_refine_steps", layer.acq_refine_steps);
  Read(j, "seed", layer.seed);
  Read(j, "record_timing", layer.record_timing);
  return layer;
}

RunConfig ResolveRunConfig(const RunConfigLayer& cli, const RunConfigLayer& file) {
  RunConfig c;
  c.input_path = Pick(cli.input_path, file.input_path, std::string());
  c.output_dir = Pick(cli.output_dir, file.output_dir, std::string());
  c.prompts.target_prompt = Pick(cli.target_prompt, file.target_prompt, std::string());
  c.prompts.guide_prompt =
      Pick(cli.guide_prompt, file.guide_prompt, std::string(kDefaultGuidePrompt));
  c.prompts.guide_enabled = Pick(cli.guide_enabled, file.guide_enabled, true);
  c.backend_url = Pick(cli.backend_url, file.backend_url, std::string());
  c.builtin_backend = Pick(cli.builtin_backend, file.builtin_backend, false);
  if (cli.backend_url && !cli.builtin_backend) c.builtin_backend = false;
  if (cli.builtin_backend && *cli.builtin_backend) c.backend_url.clear();
  const auto stages = Pick(cli.stages, file.stages, std::string());
  c.stages = stages.empty() ? StageSet::All() : ParseStages(stages);
  c.search.max_iterations =
      Pick(cli.max_iterations, file.max_iterations, c.search.max_iterations);
  c.search.patience = Pick(cli.patience, file.patience, c.search.patience);
  c.search.init_samples = Pick(cli.init_samples, file.init_samples, c.search.init_samples);
  c.search.acq_candidates =
      Pick(cli.acq_candidates, file.acq_candidates, c.search.acq_candidates);
  c.search.acq_refine_steps =
      Pick(cli.acq_refine_steps, file.acq_refine_steps, c.search.acq_refine_steps);
  if (cli.seed || file.seed) {
    c.search.seed = Pick(cli.seed, file.seed, std::uint64_t{0});
  } else {
    std::random_device rd;
    c.search.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
  }
  c.record_timing = Pick(cli.record_timing, file.record_timing, true);

  if (c.input_path.empty()) throw ConfigError("--input is required");
  if (c.output_dir.empty()) throw ConfigError("--out-dir is required");
  if (c.prompts.target_prompt.empty()) throw ConfigError("--prompt must not be empty");
  if (c.prompts.guide_enabled && c.prompts.guide_prompt.empty()) {
    throw ConfigError("--guide-prompt must not be empty");
  }
  if (!c.builtin_backend && c.backend_url.empty()) {
    throw ConfigError("choose an embedding backend with --backend-url or --builtin-backend");
  }
  c.search.Validate();
  return c;
}

std::string RunConfigToJson(const RunConfig& c) {
  const json j = {
      {"schema_version", c.schema_version},
      {"input", c.input_path.string()},
      {"out_dir", c.output_dir.string()},
      {"prompt", c.prompts.target_prompt},
      {"guide_prompt", c.prompts.guide_prompt},
      {"guide_enabled", c.prompts.guide_enabled},
      {"backend_url", c.builtin_backend ? std::string("builtin-test") : c.backend_url},
      {"builtin_backend", c.builtin_backend},
      {"stages", c.stages.Names()},
      {"max_iters", c.search.max_iterations},
      {"patience", c.search.patience},
      {"init_samples", c.search.init_samples},
      {"acq_candidates", c.search.acq_candidates},
      {"acq_refine_steps", c.search.acq_refine_steps},
      {"seed", c.search.seed},
      {"record_timing", c.record_timing},
  };
  return j.dump(2);
}

}  // namespace fxsearcher
