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

// Command-line entry point: optimize, apply, report and serve-builtin.

#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "fxsearcher/builtin_backend.h"
#include "fxsearcher/errors.h"
#include "fxsearcher/http_backend.h"
#include "fxsearcher/pipeline.h"
#include "fxsearcher/report.h"
#include "fxsearcher/run_config.h"
#include "fxsearcher/trace_io.h"

namespace {

using fxsearcher::RunConfigLayer;

template <typename T>
void Bind(CLI::Option* opt, std::optional<T>& target, const T& value) {
  if (opt->count() > 0) target = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Text-driven audio effect parameter search"};
  app.require_subcommand(1);

  auto* optimize = app.add_subcommand("optimize", "Search effect parameters for a prompt");
  std::string input, out_dir, prompt, guide_prompt, backend_url, stages, config_path;
  int max_iters = 0, patience = 0, init_samples = 0;
  std::uint64_t seed = 0;
  auto* o_input = optimize->add_option("--input", input, "Source WAV file");
  auto* o_out = optimize->add_option("--out-dir", out_dir, "Directory for run outputs");
  auto* o_prompt = optimize->add_option("--prompt", prompt, "Target text prompt");
  auto* o_guide = optimize->add_option("--guide-prompt", guide_prompt,
                                       "Guiding prompt describing artifacts to avoid");
  auto* o_no_guide = optimize->add_flag("--no-guide", "Score with the target prompt only");
  auto* o_url = optimize->add_option("--backend-url", backend_url,
                                     "Embedding service, e.g. http://127.0.0.1:8000");
  auto* o_builtin = optimize->add_flag("--builtin-backend",
                                       "Use the deterministic builtin test backend");
  auto* o_stages = optimize->add_option(
      "--stages", stages,
      "Comma-separated subset of equalizer,distortion,bitcrush,pitch_shift,delay,reverb");
  auto* o_iters = optimize->add_option("--max-iters", max_iters, "Evaluation budget");
  auto* o_patience = optimize->add_option("--patience", patience, "Early-stopping patience");
  auto* o_init = optimize->add_option("--init-samples", init_samples,
                                      "Sobol points before the first GP fit");
  auto* o_seed = optimize->add_option("--seed", seed, "Random seed");
  auto* o_no_timing = optimize->add_flag(
      "--no-timing", "Write 0 for wall_time_ms so traces are byte-reproducible");
  optimize->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  auto* apply = app.add_subcommand("apply", "Render a saved parameter set");
  std::string apply_input, apply_params, apply_output, apply_stages;
  apply->add_option("--input", apply_input, "Source WAV file")->required();
  apply->add_option("--params", apply_params, "params.json from a run")->required();
  apply->add_option("--output", apply_output, "Output WAV file")->required();
  apply->add_option("--stages", apply_stages, "Restrict the chain (default: all)");

  auto* report = app.add_subcommand("report", "Summarize a run trace");
  std::string trace_path, svg_path;
  report->add_option("trace", trace_path, "trace.csv of a run")->required();
  report->add_option("--svg", svg_path, "Where to write the plot");

  auto* serve = app.add_subcommand("serve-builtin",
                                   "Serve the builtin test backend over HTTP");
  std::string host = "127.0.0.1";
  int port = 8000;
  serve->add_option("--host", host);
  serve->add_option("--port", port);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : fxsearcher::kExitConfig;
  }

  if (optimize->parsed()) {
    RunConfigLayer file;
    RunConfigLayer cli;
    fxsearcher::RunConfig config;
    try {
      if (!config_path.empty()) {
        file = fxsearcher::LayerFromJson(fxsearcher::ReadTextFile(config_path));
      }
      Bind(o_input, cli.input_path, input);
      Bind(o_out, cli.output_dir, out_dir);
      Bind(o_prompt, cli.target_prompt, prompt);
      Bind(o_guide, cli.guide_prompt, guide_prompt);
      if (o_no_guide->count() > 0) cli.guide_enabled = false;
      Bind(o_url, cli.backend_url, backend_url);
      if (o_builtin->count() > 0) cli.builtin_backend = true;
      Bind(o_stages, cli.stages, stages);
      Bind(o_iters, cli.max_iterations, max_iters);
      Bind(o_patience, cli.patience, patience);
      Bind(o_init, cli.init_samples, init_samples);
      Bind(o_seed, cli.seed, seed);
      if (o_no_timing->count() > 0) cli.record_timing = false;
      config = fxsearcher::ResolveRunConfig(cli, file);
    } catch (const fxsearcher::Error& e) {
      std::cerr << "config: " << e.what() << "\n";
      return fxsearcher::kExitConfig;
    }
    return fxsearcher::CmdOptimize(config, std::cout, std::cerr);
  }

  if (apply->parsed()) {
    fxsearcher::StageSet stage_set = fxsearcher::StageSet::All();
    try {
      if (!apply_stages.empty()) stage_set = fxsearcher::ParseStages(apply_stages);
    } catch (const fxsearcher::Error& e) {
      std::cerr << "config: " << e.what() << "\n";
      return fxsearcher::kExitConfig;
    }
    return fxsearcher::CmdApply(apply_input, apply_params, apply_output, stage_set,
                                std::cerr);
  }

  if (report->parsed()) {
    return fxsearcher::CmdReport(trace_path, svg_path, std::cout, std::cerr);
  }

  if (serve->parsed()) {
    fxsearcher::BackendServer server(std::make_shared<fxsearcher::BuiltinTestBackend>());
    std::cout << "serving builtin test backend on http://" << host << ":" << port
              << std::endl;
    return server.Listen(host, port) ? fxsearcher::kExitOk : fxsearcher::kExitFailure;
  }
  return fxsearcher::kExitFailure;
}
