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

#include <cstddef>
#include <vector>

#include "axialvc/dsp/stft.hpp"

namespace axialvc::dsp {

// HTK mel scale: 2595 * log10(1 + f / 700).
double hz_to_mel(double hz);
double mel_to_hz(double mel);

struct MelFilterbank {
  std::size_t n_mels = 0;
  std::size_t bins = 0;
  double sample_rate = kDefaultSampleRate;
  double f_min = 0.0;
  double f_max = 8000.0;
  std::vector<double> centers_hz;
  std::vector<double> weights;  // [n_mels x bins]

  double at(std::size_t mel, std::size_t bin) const { return weights[mel * bins + bin]; }
};

// Triangular filters with unit apex, centers equally spaced in mel between
// f_min and f_max. Throws if f_max exceeds Nyquist or a filter lands between
// FFT bins and would be empty.
MelFilterbank mel_matrix(std::size_t n_mels = 40, std::size_t bins = 513,
                         double sample_rate = kDefaultSampleRate, double f_min = 0.0,
                         double f_max = 8000.0);

struct MelSpectrogram {
  std::size_t n_mels = 0;
  std::size_t frames = 0;
  std::vector<double> logmel;  // [n_mels x frames]

  double at(std::size_t mel, std::size_t frame) const { return logmel[mel * frames + frame]; }
};

inline constexpr double kLogMelFloor = 1e-5;

// ln(max(fb * mag, floor)), natural log.
MelSpectrogram log_mel(const Spectrogram& spec, const MelFilterbank& fb,
                       double floor = kLogMelFloor);

}  // namespace axialvc::dsp
