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

// Acceptance runner. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fxsearcher/acquisition.h"
#include "fxsearcher/audio_buffer.h"
#include "fxsearcher/effects.h"
#include "fxsearcher/fx_chain.h"
#include "fxsearcher/fx_params.h"
#include "fxsearcher/gaussian_process.h"
#include "fxsearcher/optimizer.h"
#include "fxsearcher/pipeline.h"
#include "fxsearcher/run_config.h"
#include "fxsearcher/trace_io.h"
#include "oracles.h"
#include "test_util.h"

namespace fxsearcher {
namespace {

using testing::DenseOracle;
using testing::DftPeakBin;
using testing::Noise;
using testing::QuadratureEi;
using testing::Rms;
using testing::Sine;
using testing::TempDir;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  // Records a failed check; keeps the first few messages.
  void Check(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail << "failed: ";
    else detail << "; ";
    pass = false;
    detail << what;
  }
};

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

AudioBuffer MonoOf(std::vector<double> x, int rate) { return AudioBuffer::Mono(std::move(x), rate); }

// ---------------------------------------------------------------------------

void DspOracleSuite(Outcome& o) {
  const auto start = Clock::now();

  // Distortion.
  {
    const AudioBuffer x = MonoOf({0.5, 0.0, -0.5}, 48000);
    const AudioBuffer y0 = ApplyDistortion(x, 0.0);
    const AudioBuffer y20 = ApplyDistortion(x, 20.0);
    o.Check(std::abs(y0.channel(0)[0] - 0.46212) < 1e-5 &&
                std::abs(y0.channel(0)[0] - std::tanh(0.5)) < 1e-6,
            "tanh(0.5)");
    o.Check(std::abs(y20.channel(0)[0] - 0.99991) < 1e-5 &&
                std::abs(y20.channel(0)[0] - std::tanh(5.0)) < 1e-6,
            "tanh(5)");
    o.Check(y0.channel(0)[1] == 0.0 && y20.channel(0)[1] == 0.0, "tanh(0)");
    o.Check(std::abs(y0.channel(0)[2] + std::tanh(0.5)) < 1e-6, "tanh odd symmetry");
  }

  // Bitcrush.
  {
    const AudioBuffer y = ApplyBitcrush(MonoOf({0.3, 0.0}, 48000), 8.0);
    o.Check(y.channel(0)[0] == 38.0 / 128.0, "bitcrush 0.3 @ 8 bits");
    o.Check(y.channel(0)[1] == 0.0, "bitcrush zero");
    for (double depth : {4.0, 9.3, 16.0}) {
      o.Check(ApplyBitcrush(MonoOf({0.0}, 48000), depth).channel(0)[0] == 0.0, "bitcrush zero");
    }
    const std::vector<double> noise = Noise(10000, 5, 1.0);
    const AudioBuffer c16 = ApplyBitcrush(MonoOf(noise, 48000), 16.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < noise.size(); ++i) {
      worst = std::max(worst, std::abs(c16.channel(0)[i] - noise[i]));
    }
    o.Check(worst <= 1.0 / 32768.0, "bitcrush 16-bit step bound");
  }

  // Delay.
  {
    std::vector<double> impulse(400, 0.0);
    impulse[0] = 1.0;
    const AudioBuffer y = ApplyDelay(MonoOf(impulse, 1000), 0.1);
    const double want[] = {0.5, 0.5, 0.15, 0.045};
    for (int k = 0; k < 4; ++k) {
      o.Check(std::abs(y.channel(0)[100 * k] - want[k]) <= 1e-9,
              "delay tap " + std::to_string(k) + " = " + Fmt(y.channel(0)[100 * k]));
    }
    o.Check(y.num_frames() == impulse.size(), "delay length");
    const AudioBuffer silent = ApplyDelay(MonoOf(std::vector<double>(2000, 0.0), 2000), 0.3);
    o.Check(std::all_of(silent.channel(0).begin(), silent.channel(0).end(),
                        [](double v) { return v == 0.0; }),
            "delay silence");
    const std::vector<double> n = Noise(1000, 9);
    const AudioBuffer trunc = ApplyDelay(MonoOf(n, 2000), 1.0);
    bool half = true;
    for (std::size_t i = 0; i < n.size(); ++i) half &= trunc.channel(0)[i] == 0.5 * n[i];
    o.Check(half, "delay truncation");
  }

  // Equalizer.
  {
    std::array<double, kNumEqBands> gains{};
    const std::vector<double> sine = Sine(1000.0, 48000, 48000);
    const AudioBuffer flat = ApplyEqualizer(MonoOf(sine, 48000), gains);
    double flat_err = 0.0;
    for (std::size_t i = 0; i < sine.size(); ++i) {
      flat_err = std::max(flat_err, std::abs(flat.channel(0)[i] - sine[i]));
    }
    o.Check(flat_err <= 1e-9, "EQ flat identity");
    gains[8] = 6.0;
    const AudioBuffer boosted = ApplyEqualizer(MonoOf(sine, 48000), gains);
    const std::vector<double> out(boosted.channel(0).begin(), boosted.channel(0).end());
    const double gain_db = 20.0 * std::log10(Rms(out, 24000, 48000) / Rms(sine, 24000, 48000));
    o.Check(std::abs(gain_db - 6.0) <= 0.1, "EQ +6 dB at 1 kHz measured " + Fmt(gain_db));
    std::array<double, kNumEqBands> high{};
    high[14] = -12.0;
    const std::vector<double> n = Noise(4000, 3);
    const AudioBuffer skipped = ApplyEqualizer(MonoOf(n, 22050), high);
    bool same = true;
    for (std::size_t i = 0; i < n.size(); ++i) same &= std::abs(skipped.channel(0)[i] - n[i]) <= 1e-9;
    o.Check(same, "EQ band above Nyquist skipped");
  }

  // Pitch shift.
  {
    const std::vector<double> tone = Sine(440.0, 48000, 48000);
    o.Check(ApplyPitchShift(MonoOf(tone, 48000), 0.0) == MonoOf(tone, 48000), "pitch bypass");
    for (double semis : {12.0, -12.0}) {
      const AudioBuffer y = ApplyPitchShift(MonoOf(tone, 48000), semis);
      const std::vector<double> out(y.channel(0).begin(), y.channel(0).end());
      const double want_bin = 440.0 * std::exp2(semis / 12.0) * 8192.0 / 48000.0;
      const int got_bin = DftPeakBin(out, 16000, 8192);
      o.Check(std::abs(got_bin - want_bin) <= 1.0,
              "pitch " + Fmt(semis) + " peak bin " + std::to_string(got_bin));
      o.Check(std::abs(static_cast<double>(out.size()) - 48000.0) <= 480.0, "pitch length");
    }
  }

  // Reverb.
  {
    const std::vector<double> n = Noise(2000, 4);
    o.Check(ApplyReverb(MonoOf(n, 44100), 0.7, 0.3, 0.0) == MonoOf(n, 44100), "reverb dry");
    const AudioBuffer silent = ApplyReverb(MonoOf(std::vector<double>(4410, 0.0), 44100), 0.9, 0.2, 1.0);
    o.Check(std::all_of(silent.channel(0).begin(), silent.channel(0).end(),
                        [](double v) { return v == 0.0; }),
            "reverb silence");
    std::vector<double> impulse(44100, 0.0);
    impulse[0] = 1.0;
    const AudioBuffer y = ApplyReverb(MonoOf(impulse, 44100), 0.9, 0.2, 1.0);
    double tail = 0.0;
    for (std::size_t i = 22050; i < 44100; ++i) tail += y.channel(0)[i] * y.channel(0)[i];
    o.Check(tail > 1e-6, "reverb tail energy " + Fmt(tail));
  }

  // Chain composition examples.
  {
    const std::vector<double> n = Noise(4800, 8);
    FxParams p = NeutralParams();
    p.enable_distortion = true;
    p.distortion_drive_db = 0.0;
    const AudioBuffer y = ApplyChain(MonoOf(n, 48000), p);
    bool tanh_ok = true;
    for (std::size_t i = 0; i < n.size(); ++i) tanh_ok &= std::abs(y.channel(0)[i] - std::tanh(n[i])) <= 1e-12;
    o.Check(tanh_ok, "chain distortion-only equals tanh");

    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::array<double, kNumParams> coords{};
    for (double& c : coords) c = u(rng);
    const FxParams a = DecodeParams(UnitVector(coords));
    FxParams b = a;
    b.distortion_drive_db = 25.0;
    b.bitcrush_bit_depth = 5.0;
    b.pitch_shift_semitones = 7.0;
    b.delay_seconds = 0.5;
    b.enable_distortion = !a.enable_distortion;
    b.enable_bitcrush = !a.enable_bitcrush;
    b.enable_pitch_shift = !a.enable_pitch_shift;
    b.enable_delay = !a.enable_delay;
    const StageSet baseline = ParseStages("equalizer,reverb");
    o.Check(ApplyChain(MonoOf(n, 48000), a, baseline) == ApplyChain(MonoOf(n, 48000), b, baseline),
            "equalizer,reverb chain ignores other effects");
  }

  const double elapsed = Seconds(start);
  o.Check(elapsed < 60.0, "runtime " + Fmt(elapsed) + " s");
  o.detail << (o.pass ? "all examples hold" : "") << " (" << Fmt(elapsed) << " s)";
}

void NeutralIdentity(Outcome& o) {
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const int rate = trial % 2 ? 44100 : 48000;
    const int channels = 1 + trial % 2;
    std::vector<std::vector<double>> data;
    for (int c = 0; c < channels; ++c) data.push_back(Noise(rate / 2, 100 + 10 * trial + c, 0.9));
    const AudioBuffer in(data, rate);
    const AudioBuffer out = ApplyChain(in, NeutralParams());
    o.Check(out.num_frames() == in.num_frames() && out.num_channels() == in.num_channels(),
            "shape changed");
    for (int c = 0; c < channels; ++c) {
      for (std::size_t i = 0; i < in.num_frames(); ++i) {
        worst = std::max(worst, std::abs(out.channel(c)[i] - in.channel(c)[i]));
      }
    }
  }
  o.Check(worst <= 1e-9, "max deviation " + Fmt(worst));
  o.detail << "10 buffers, max deviation " << Fmt(worst);
}

void GpVsDenseOracle(Outcome& o) {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  std::uniform_int_distribution<int> dims(1, 26);
  double worst = 0.0;
  for (int problem = 0; problem < 50; ++problem) {
    const int d = dims(rng);
    const int n = 5;
    Eigen::MatrixXd x(n, d);
    Eigen::VectorXd y(n);
    DenseOracle oracle;
    for (int i = 0; i < n; ++i) {
      std::vector<double> row(d);
      for (int k = 0; k < d; ++k) x(i, k) = row[k] = u01(rng);
      y[i] = 4.0 * u01(rng) - 2.0;
      oracle.x.push_back(row);
    }
    GpHyperparameters hp;
    hp.lengthscales.resize(d);
    for (int k = 0; k < d; ++k) {
      hp.lengthscales[k] = oracle.lengthscales.emplace_back(std::pow(10.0, -1.0 + 1.5 * u01(rng)));
    }
    hp.signal_variance = oracle.sf2 = 0.1 + 3.0 * u01(rng);
    hp.noise_variance = oracle.sn2 = std::pow(10.0, -6.0 + 5.0 * u01(rng));
    double m = 0.0;
    for (int i = 0; i < n; ++i) m += y[i];
    m /= n;
    double v = 0.0;
    for (int i = 0; i < n; ++i) v += (y[i] - m) * (y[i] - m);
    oracle.mean = m;
    oracle.scale = std::sqrt(v / n);
    for (int i = 0; i < n; ++i) oracle.y.push_back((y[i] - m) / oracle.scale);

    const GpModel model = GpModel::Build(x, y, hp);
    if (model.effective_noise() != hp.noise_variance) {
      o.Check(false, "jitter escalated on problem " + std::to_string(problem));
      continue;
    }
    for (int q = 0; q < 10; ++q) {
      std::vector<double> query(d);
      Eigen::VectorXd eq(d);
      for (int k = 0; k < d; ++k) eq[k] = query[k] = u01(rng);
      const auto [want_mean, want_var] = oracle.Posterior(query);
      const GpPrediction got = model.Predict(eq);
      const double em = std::abs(got.mean - want_mean) / std::max(std::abs(want_mean), 1e-300);
      const double ev = std::abs(got.stddev * got.stddev - want_var) / std::max(want_var, 1e-300);
      worst = std::max({worst, em, ev});
    }
  }
  o.Check(worst <= 1e-8, "max relative error " + Fmt(worst));
  o.detail << "50 problems x 10 queries, max relative error " << Fmt(worst);
}

void EiVsQuadrature(Outcome& o) {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> mu_d(-3.0, 3.0), sigma_d(0.01, 3.0), best_d(-4.0, 4.0);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const double mu = mu_d(rng), sigma = sigma_d(rng), best = best_d(rng);
    worst = std::max(worst, std::abs(ExpectedImprovement(mu, sigma, best) -
                                     QuadratureEi(mu, sigma, best, 1000001)));
  }
  o.Check(worst <= 1e-6, "max abs error " + Fmt(worst));
  o.detail << "100 triples vs 10^6-point Simpson, max abs error " << Fmt(worst);
}

void EndToEndSynthetic(Outcome& o) {
  const auto start = Clock::now();
  const int active[3] = {2, 11, 19};
  int within = 0, beats_random = 0;
  std::ostringstream per_seed;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed * 7919);
    std::uniform_real_distribution<double> u(0.0, 1.0), u_target(0.1, 0.9);
    double p_star[3];
    for (double& p : p_star) p = u_target(rng);
    auto f = [&](std::span<const double> x) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (x[active[k]] - p_star[k]) * (x[active[k]] - p_star[k]);
      return -s;
    };

    SearchConfig config;
    config.seed = seed;
    const SearchResult r =
        Optimize([&](std::span<const double> x) { return MakeScore(f(x), 0.0); }, config);

    double linf = 0.0;
    for (int k = 0; k < 3; ++k) linf = std::max(linf, std::abs(r.best_x[active[k]] - p_star[k]));

    double random_best = -std::numeric_limits<double>::infinity();
    std::vector<double> x(kNumParams);
    for (int i = 0; i < 50000; ++i) {
      for (double& c : x) c = u(rng);
      random_best = std::max(random_best, f(x));
    }
    within += linf <= 0.1;
    beats_random += r.best_score.s_final >= random_best;
    per_seed << " [seed " << seed << ": bo " << Fmt(r.best_score.s_final) << " rs "
             << Fmt(random_best) << " linf " << Fmt(linf) << " n " << r.evaluations << "]";
  }
  const double elapsed = Seconds(start);
  o.Check(within == 10, std::to_string(within) + "/10 seeds within L-inf 0.1");
  o.Check(beats_random >= 8, std::to_string(beats_random) + "/10 seeds beat random search");
  o.Check(elapsed < 300.0, "runtime " + Fmt(elapsed) + " s");
  o.detail << within << "/10 within L-inf 0.1, " << beats_random
           << "/10 >= 50000-sample random search (" << Fmt(elapsed) << " s);" << per_seed.str();
}

void ControlFlowConstants(Outcome& o) {
  const SearchConfig defaults;
  o.Check(defaults.max_iterations == 100 && defaults.patience == 30, "default budget/patience");

  // Always improving: only the budget can stop it.
  int calls = 0;
  const SearchResult full =
      Optimize([&calls](std::span<const double>) { return MakeScore(1e-3 * calls++, 0.0); },
               defaults);
  o.Check(full.evaluations == 100 && full.trace.size() == 100 &&
              full.stop_reason == StopReason::kBudget,
          "improving objective ran " + std::to_string(full.evaluations) + " evaluations");

  // Improves through evaluation 10, then constant.
  calls = 0;
  const SearchResult flat = Optimize(
      [&calls](std::span<const double>) {
        const int c = calls++;
        return MakeScore(c < 10 ? 0.05 * c : 0.0, 0.0);
      },
      defaults);
  o.Check(flat.evaluations == 40 && flat.stop_reason == StopReason::kPatience,
          "constant-after-10 objective ran " + std::to_string(flat.evaluations));
  o.detail << "improving objective: " << full.evaluations
           << " evaluations; constant-after-10 objective: " << flat.evaluations << " ("
           << StopReasonName(flat.stop_reason) << ")";
}

RunConfig PipelineConfig(const std::filesystem::path& out, std::uint64_t seed) {
  RunConfigLayer cli;
  cli.input_path = FXSEARCHER_SAMPLE_WAV;
  cli.output_dir = out.string();
  cli.target_prompt = "bright";  // catalogued; the default guide is catalogued too
  cli.builtin_backend = true;
  cli.seed = seed;
  cli.record_timing = false;
  return ResolveRunConfig(cli, {});
}

bool RunPipeline(const RunConfig& config, Outcome& o) {
  std::ostringstream out, err;
  const int code = CmdOptimize(config, out, err);
  o.Check(code == kExitOk, "optimize exited " + std::to_string(code) + ": " + err.str());
  return code == kExitOk;
}

void GuideAblation(Outcome& o) {
  TempDir dir;
  RunConfig with_guide = PipelineConfig(dir.path() / "guided", 2026);
  RunConfig without = PipelineConfig(dir.path() / "unguided", 2026);
  without.prompts.guide_enabled = false;
  if (!RunPipeline(with_guide, o) || !RunPipeline(without, o)) return;

  const auto guided_rows = ReadTraceCsv(with_guide.output_dir / "trace.csv");
  const auto plain_rows = ReadTraceCsv(without.output_dir / "trace.csv");
  bool identity = !plain_rows.empty();
  for (const auto& r : plain_rows) identity &= r.score.s_final == r.score.s_target && r.score.s_guide == 0.0;
  o.Check(identity, "--no-guide trace has s_final != s_target");
  bool guide_active = false;
  for (const auto& r : guided_rows) guide_active |= r.score.s_guide != 0.0;
  o.Check(guide_active, "guided trace never used the guide");

  const std::string a = ReadTextFile(with_guide.output_dir / "params.json");
  const std::string b = ReadTextFile(without.output_dir / "params.json");
  o.Check(a != b, "guided and unguided incumbents are identical");
  o.detail << "no-guide rows " << plain_rows.size() << " with s_final == s_target; guided rows "
           << guided_rows.size() << "; incumbents " << (a != b ? "differ" : "equal");
}

void Determinism(Outcome& o) {
  TempDir dir;
  const RunConfig a = PipelineConfig(dir.path() / "a", 99);
  const RunConfig b = PipelineConfig(dir.path() / "b", 99);
  if (!RunPipeline(a, o) || !RunPipeline(b, o)) return;
  for (const char* f : {"params.json", "trace.csv"}) {
    o.Check(ReadTextFile(a.output_dir / f) == ReadTextFile(b.output_dir / f),
            std::string(f) + " differs");
  }
  o.detail << "params.json and trace.csv byte-identical across two seeded runs";
}

void Fuzz(Outcome& o) {
  std::mt19937_64 rng(0xF022);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int rates[] = {16000, 22050, 44100, 48000};
  int bad = 0;
  for (int t = 0; t < 1000; ++t) {
    std::array<double, kNumParams> coords{};
    for (double& c : coords) c = u(rng);
    const FxParams p = DecodeParams(UnitVector(coords));
    const int rate = rates[t % 4];
    const int channels = 1 + (t / 4) % 2;
    std::vector<std::vector<double>> data;
    for (int c = 0; c < channels; ++c) data.push_back(Noise(rate / 2, rng(), 0.25 + 0.75 * u(rng)));
    const AudioBuffer in(data, rate);
    try {
      const AudioBuffer out = ApplyChain(in, p);
      bool ok = out.num_channels() == channels && out.sample_rate() == rate &&
                std::abs(static_cast<double>(out.num_frames()) - in.num_frames()) <=
                    0.0125 * rate + 1;
      for (const auto& ch : out.channels()) {
        for (double v : ch) ok &= std::isfinite(v);
      }
      if (!ok) {
        if (bad++ == 0) o.Check(false, "trial " + std::to_string(t) + ": " + ParamsToJson(p));
      }
    } catch (const std::exception& e) {
      if (bad++ == 0) o.Check(false, "trial " + std::to_string(t) + " threw " + e.what());
    }
  }
  o.Check(bad == 0, std::to_string(bad) + " bad trials");
  o.detail << "1000 random parameter sets, " << bad << " non-finite or failed outputs";
}

}  // namespace
}  // namespace fxsearcher

int main() {
  using namespace fxsearcher;
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"dsp-oracle-suite", DspOracleSuite},
      {"neutral-chain-identity", NeutralIdentity},
      {"gp-vs-dense-oracle", GpVsDenseOracle},
      {"ei-vs-quadrature", EiVsQuadrature},
      {"end-to-end-synthetic", EndToEndSynthetic},
      {"control-flow-constants", ControlFlowConstants},
      {"guide-ablation", GuideAblation},
      {"determinism", Determinism},
      {"fuzz", Fuzz},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      run(o);
    } catch (const std::exception& e) {
      o.Check(false, std::string("exception: ") + e.what());
    }
    std::printf("%s %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.str().c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
