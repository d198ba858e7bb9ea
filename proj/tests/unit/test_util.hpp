// Copyright 2026 The AxialVC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "axialvc/dsp/waveform.hpp"

namespace axialvc::testing {

inline std::vector<double> normal_values(std::size_t n, std::uint64_t seed, double std = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, std);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline std::vector<double> uniform_values(std::size_t n, std::uint64_t seed, double lo = 0.0,
                                          double hi = 1.0) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

inline std::vector<float> to_float(const std::vector<double>& v) {
  return std::vector<float>(v.begin(), v.end());
}

// Sum of sinusoids at `freqs_hz` with equal amplitude `amp`.
inline dsp::Waveform tone(std::size_t n, std::vector<double> freqs_hz, double amp = 0.3,
                          double sr = dsp::kDefaultSampleRate) {
  dsp::Waveform w;
  w.sample_rate = sr;
  w.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (double f : freqs_hz) s += std::sin(2.0 * std::numbers::pi * f * double(i) / sr);
    w.samples[i] = amp * s;
  }
  return w;
}

}  // namespace axialvc::testing
