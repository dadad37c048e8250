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

#include "fxsearcher/pipeline.h"

#include <filesystem>

#include "fxsearcher/builtin_backend.h"
#include "fxsearcher/errors.h"
#include "fxsearcher/fx_chain.h"
#include "fxsearcher/http_backend.h"
#include "fxsearcher/trace_io.h"
#include "fxsearcher/wav_io.h"
#include "json.hpp"

namespace fxsearcher {

std::shared_ptr<EmbeddingBackend> MakeBackend(const RunConfig& config) {
  if (config.builtin_backend) return std::make_shared<BuiltinTestBackend>();
  return std::make_shared<HttpBackend>(config.backend_url);
}

SearchOutcome SearchForParams(const AudioBuffer& input, const RunConfig& config,
                              std::shared_ptr<EmbeddingBackend> backend,
                              std::ostream& log) {
  auto client = std::make_shared<EmbeddingClient>(std::move(backend));
  Scorer scorer(client, config.prompts);

  SearchConfig search = config.search;
  search.dimension = kNumParams;
  const Objective objective = [&](std::span<const double> x) {
    const FxParams params = DecodeParams(UnitVector::FromValues(x));
    return scorer.Score(ApplyChain(input, params, config.stages));
  };
  OptimizeHooks hooks;
  if (!config.record_timing) hooks.now_ms = [] { return 0.0; };
  hooks.on_observation = [&log](const Observation& obs, const ScoreBreakdown& best) {
    log << "eval " << obs.iteration << ": s_final " << obs.score.s_final
        << " (target " << obs.score.s_target << ", guide " << obs.score.s_guide
        << "), best " << best.s_final << "\n";
  };
  SearchResult result = Optimize(objective, search, hooks);
  const FxParams best = DecodeParams(UnitVector::FromValues(result.best_x));
  AudioBuffer transformed = ApplyChain(input, best, config.stages);
  return {std::move(result), best, std::move(transformed), client->info()};
}

void WriteRunOutputs(const RunConfig& config, const SearchOutcome& outcome) {
  const auto& dir = config.output_dir;
  SaveWav(outcome.transformed, dir / "transformed.wav");
  WriteTextFile(dir / "params.json", ParamsToJson(outcome.best_params));
  WriteTextFile(dir / "trace.csv", FormatTraceCsv(outcome.result.trace));
  WriteTextFile(dir / "trace.json", FormatTraceJson(outcome.result, config.search));

  nlohmann::json run = nlohmann::json::parse(RunConfigToJson(config));
  run["backend_model_id"] = outcome.backend.model_id;
  run["backend_embedding_dim"] = outcome.backend.embedding_dim;
  run["backend_sample_rate"] = outcome.backend.sample_rate;
  run["evaluations"] = outcome.result.evaluations;
  run["failed_evaluations"] = outcome.result.failures.size();
  run["stop_reason"] = std::string(StopReasonName(outcome.result.stop_reason));
  run["best_iteration"] = outcome.result.best_iteration;
  run["final_scores"] = {{"s_target", outcome.result.best_score.s_target},
                         {"s_guide", outcome.result.best_score.s_guide},
                         {"s_final", outcome.result.best_score.s_final}};
  run["best_unit_vector"] = outcome.result.best_x;
  WriteTextFile(dir / "run.json", run.dump(2) + "\n");
}

int CmdOptimize(const RunConfig& config, std::ostream& out, std::ostream& err,
                std::shared_ptr<EmbeddingBackend> backend) {
  std::optional<AudioBuffer> input;
  try {
    std::filesystem::create_directories(config.output_dir);
    input = LoadWav(config.input_path);
  } catch (const std::filesystem::filesystem_error& e) {
    err << "config: cannot create output directory: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "config: " << e.what() << "\n";
    return kExitConfig;
  }
  out << "seed " << config.search.seed << "\n";

  if (!backend) backend = MakeBackend(config);
  SearchOutcome outcome{SearchResult{}, FxParams{}, *input, BackendInfo{}};
  try {
    outcome = SearchForParams(*input, config, backend, out);
  } catch (const TransportError& e) {
    err << "backend: " << e.what() << "\n";
    return kExitBackend;
  } catch (const ProtocolError& e) {
    err << "backend: " << e.what() << "\n";
    return kExitBackend;
  } catch (const OptimizationAborted& e) {
    err << "optimize: " << e.what() << "\n";
    return kExitAborted;
  } catch (const ConfigError& e) {
    err << "config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const PreconditionError& e) {
    err << "config: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "optimize: " << e.what() << "\n";
    return kExitFailure;
  }

  try {
    WriteRunOutputs(config, outcome);
  } catch (const Error& e) {
    err << "output: " << e.what() << "\n";
    return kExitFailure;
  }
  out << "best s_final " << outcome.result.best_score.s_final << " at evaluation "
      << outcome.result.best_iteration << " of " << outcome.result.evaluations
      << " (stopped: " << StopReasonName(outcome.result.stop_reason) << ")\n";
  return kExitOk;
}

int CmdApply(const std::filesystem::path& input_path,
             const std::filesystem::path& params_path,
             const std::filesystem::path& output_path, const StageSet& stages,
             std::ostream& err) {
  FxParams params;
  try {
    params = ParamsFromJson(ReadTextFile(params_path));
  } catch (const Error& e) {
    err << "config: " << e.what() << "\n";
    return kExitConfig;
  }
  std::optional<AudioBuffer> input;
  try {
    input = LoadWav(input_path);
  } catch (const Error& e) {
    err << "audio: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    SaveWav(ApplyChain(*input, params, stages), output_path);
  } catch (const Error& e) {
    err << "output: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace fxsearcher
