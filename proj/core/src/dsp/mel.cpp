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

#include "axialvc/dsp/mel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "axialvc/error.hpp"

namespace axialvc::dsp {

double hz_to_mel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }
double mel_to_hz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

MelFilterbank mel_matrix(std::size_t n_mels, std::size_t bins, double sample_rate, double f_min,
                         double f_max) {
  if (n_mels == 0) throw ValidationError("mel_matrix: n_mels must be at least 1");
  if (bins < 2) throw ValidationError("mel_matrix: need at least 2 frequency bins");
  if (f_max > sample_rate / 2.0) {
    throw ValidationError("mel_matrix: f_max " + std::to_string(f_max) + " Hz exceeds Nyquist " +
                          std::to_string(sample_rate / 2.0) + " Hz");
  }
  if (!(f_min >= 0.0 && f_min < f_max)) {
    throw ValidationError("mel_matrix: require 0 <= f_min < f_max");
  }

  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.bins = bins;
  fb.sample_rate = sample_rate;
  fb.f_min = f_min;
  fb.f_max = f_max;
  fb.weights.assign(n_mels * bins, 0.0);

  const double mel_lo = hz_to_mel(f_min);
  const double mel_hi = hz_to_mel(f_max);
  std::vector<double> edges(n_mels + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(mel_lo + (mel_hi - mel_lo) * double(i) / double(n_mels + 1));
  }
  edges.front() = f_min;
  edges.back() = f_max;

  const double n_fft = 2.0 * double(bins - 1);
  for (std::size_t m = 0; m < n_mels; ++m) {
    const double lo = edges[m], center = edges[m + 1], hi = edges[m + 2];
    fb.centers_hz.push_back(center);
    bool any = false;
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = double(k) * sample_rate / n_fft;
      double w = 0.0;
      if (f > lo && f <= center) {
        w = (f - lo) / (center - lo);
      } else if (f > center && f < hi) {
        w = (hi - f) / (hi - center);
      }
      w = std::clamp(w, 0.0, 1.0);
      fb.weights[m * bins + k] = w;
      any = any || w > 0.0;
    }
    if (!any) {
      throw ValidationError("mel_matrix: filter " + std::to_string(m) + " (center " +
                            std::to_string(center) +
                            " Hz) covers no FFT bin; use fewer mel channels or a longer window");
    }
  }
  return fb;
}

MelSpectrogram log_mel(const Spectrogram& spec, const MelFilterbank& fb, double floor) {
  if (spec.bins != fb.bins) {
    throw ValidationError("log_mel: spectrogram has " + std::to_string(spec.bins) +
                          " bins, filterbank expects " + std::to_string(fb.bins));
  }
  if (!(floor > 0.0)) throw ValidationError("log_mel: floor must be positive");
  MelSpectrogram out{fb.n_mels, spec.frames, std::vector<double>(fb.n_mels * spec.frames, 0.0)};
  for (std::size_t m = 0; m < fb.n_mels; ++m) {
    double* row = out.logmel.data() + m * spec.frames;
    for (std::size_t k = 0; k < fb.bins; ++k) {
      const double w = fb.weights[m * fb.bins + k];
      if (w == 0.0) continue;
      const double* src = spec.mag.data() + k * spec.frames;
      for (std::size_t t = 0; t < spec.frames; ++t) row[t] += w * src[t];
    }
    for (std::size_t t = 0; t < spec.frames; ++t) row[t] = std::log(std::max(row[t], floor));
  }
  return out;
}

}  // namespace axialvc::dsp
