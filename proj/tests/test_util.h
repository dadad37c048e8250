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

#ifndef FXSEARCHER_TESTS_TEST_UTIL_H_
#define FXSEARCHER_TESTS_TEST_UTIL_H_

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "fxsearcher/audio_buffer.h"

namespace fxsearcher::testing {

inline std::vector<double> Sine(double freq, int rate, std::size_t n,
                                double amplitude = 0.5) {
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = amplitude * std::sin(2.0 * std::numbers::pi * freq * i / rate);
  }
  return x;
}

inline std::vector<double> Noise(std::size_t n, std::uint64_t seed,
                                 double amplitude = 0.5) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-amplitude, amplitude);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

inline double Rms(const std::vector<double>& x, std::size_t begin, std::size_t end) {
  double s = 0.0;
  for (std::size_t i = begin; i < end; ++i) s += x[i] * x[i];
  return std::sqrt(s / static_cast<double>(end - begin));
}

// Index of the largest-magnitude bin of a direct (O(N^2)) DFT of `size`
// samples starting at `offset`, Hann-windowed. Independent of any FFT library.
inline int DftPeakBin(const std::vector<double>& x, std::size_t offset, int size) {
  std::vector<double> w(size), cos_table(size), sin_table(size);
  for (int i = 0; i < size; ++i) {
    w[i] = (0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * i / size)) * x[offset + i];
    cos_table[i] = std::cos(2.0 * std::numbers::pi * i / size);
    sin_table[i] = std::sin(2.0 * std::numbers::pi * i / size);
  }
  int best_bin = 0;
  double best_mag = -1.0;
  for (int k = 1; k < size / 2; ++k) {
    double re = 0.0, im = 0.0;
    std::size_t phase = 0;
    for (int i = 0; i < size; ++i) {
      re += w[i] * cos_table[phase];
      im -= w[i] * sin_table[phase];
      phase += k;
      if (phase >= static_cast<std::size_t>(size)) phase -= size;
    }
    const double mag = re * re + im * im;
    if (mag > best_mag) {
      best_mag = mag;
      best_bin = k;
    }
  }
  return best_bin;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("fxsearcher_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace fxsearcher::testing

#endif  // FXSEARCHER_TESTS_TEST_UTIL_H_
