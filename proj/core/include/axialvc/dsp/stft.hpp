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

#include <complex>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "axialvc/dsp/waveform.hpp"

namespace axialvc::dsp {

struct StftConfig {
  std::size_t window_length = 1024;
  std::size_t hop = 256;
  double sample_rate = kDefaultSampleRate;

  std::size_t bins() const { return window_length / 2 + 1; }
  // Frames produced from `samples` samples: 1 + (N - window) / hop, no
  // center padding. Zero when N < window.
  std::size_t frame_count(std::size_t samples) const;
  // Smallest signal length yielding exactly `frames` frames.
  std::size_t samples_for_frames(std::size_t frames) const;
  double bin_hz(std::size_t bin) const;
  void validate() const;

  bool operator==(const StftConfig&) const = default;
};

// Periodic Hann taper of `length` points.
std::vector<double> hann_window(std::size_t length);

// Linear magnitude, row-major [bins x frames].
struct Spectrogram {
  StftConfig config;
  std::size_t bins = 0;
  std::size_t frames = 0;
  std::vector<double> mag;

  double at(std::size_t bin, std::size_t frame) const { return mag[bin * frames + frame]; }
  double& at(std::size_t bin, std::size_t frame) { return mag[bin * frames + frame]; }
  void validate() const;
};

struct ComplexSpectrogram {
  StftConfig config;
  std::size_t bins = 0;
  std::size_t frames = 0;
  std::vector<std::complex<double>> values;  // [bins x frames]
};

ComplexSpectrogram stft(const Waveform& wave, const StftConfig& cfg);
Spectrogram stft_magnitude(const Waveform& wave, const StftConfig& cfg);

// Windowed overlap-add divided by the summed squared window (floored at
// 1e-8). Output length is window + (frames - 1) * hop.
Waveform istft(const ComplexSpectrogram& spec);

// Griffin-Lim phase reconstruction with a seeded uniform random initial
// phase. When `convergence` is non-null it receives iterations + 1 values of
// the spectral convergence ||STFT(y_i)| - mag|_F / |mag|_F, where y_i is
// the waveform synthesized at iteration i (i = 0 uses the initial phase).
Waveform griffin_lim(const Spectrogram& mag, std::size_t iterations = 32, std::uint64_t seed = 0,
                     std::vector<double>* convergence = nullptr);

}  // namespace axialvc::dsp
