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

#include "axialvc/dsp/preprocess.hpp"

#include <algorithm>
#include <cmath>

#include "axialvc/error.hpp"

namespace axialvc::dsp {

Waveform preprocess(const Waveform& wave, const StftConfig& cfg,
                    std::optional<std::size_t> target_frames, const PreprocessConfig& pc) {
  cfg.validate();
  wave.validate();
  if (wave.empty()) throw ValidationError("preprocess: empty waveform");

  double peak = 0.0;
  for (double s : wave.samples) peak = std::max(peak, std::abs(s));
  if (peak == 0.0) throw ValidationError("preprocess: waveform is empty after trim (all silent)");

  Waveform out = wave;
  const double gain = pc.peak / peak;
  // Already-normalized input is left bit-identical.
  if (std::abs(gain - 1.0) > 1e-12) {
    for (double& s : out.samples) s *= gain;
  }

  const double threshold = pc.peak * std::pow(10.0, pc.trim_db / 20.0);
  const auto window = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::lround(out.sample_rate * pc.trim_window_ms / 1000.0)));
  const std::size_t n = out.size();
  std::vector<double> energy(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) energy[i + 1] = energy[i] + out.samples[i] * out.samples[i];

  std::size_t start = n;
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(out.samples[i]) < threshold) continue;
    const std::size_t end = std::min(n, i + window);
    const double rms = std::sqrt((energy[end] - energy[i]) / double(window));
    if (rms >= threshold) {
      start = i;
      break;
    }
  }
  if (start == n) throw ValidationError("preprocess: waveform is empty after trim");
  out.samples.erase(out.samples.begin(), out.samples.begin() + static_cast<std::ptrdiff_t>(start));

  std::size_t frames = out.size() <= cfg.window_length
                           ? 1
                           : 1 + (out.size() - cfg.window_length + cfg.hop - 1) / cfg.hop;
  if (target_frames) frames = std::max(frames, *target_frames);
  const std::size_t length = cfg.samples_for_frames(frames);
  if (out.size() < length) out.samples.resize(length, 0.0);
  return out;
}

}  // namespace axialvc::dsp
