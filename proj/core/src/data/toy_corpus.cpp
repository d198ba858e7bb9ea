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

#include "axialvc/data/toy_corpus.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

namespace axialvc::data {

ToySpeaker toy_speaker_a() { return ToySpeaker{"toy_a", 110.0, 0.15, 900.0, 600.0, 0.02}; }

ToySpeaker toy_speaker_b() { return ToySpeaker{"toy_b", 230.0, 0.15, 3600.0, 1200.0, 0.02}; }

std::vector<dsp::Waveform> synthesize_toy_utterances(const ToySpeaker& speaker, std::size_t count,
                                                     std::uint64_t seed, double sample_rate) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> noise(0.0, 1.0);
  const double nyquist = sample_rate / 2.0;
  const double two_pi = 2.0 * std::numbers::pi;

  std::vector<dsp::Waveform> out;
  for (std::size_t u = 0; u < count; ++u) {
    dsp::Waveform w;
    w.sample_rate = sample_rate;
    const auto lead = static_cast<std::size_t>(sample_rate * (0.03 + 0.04 * unit(rng)));
    w.samples.assign(lead, 0.0);

    const int syllables = 3 + static_cast<int>(unit(rng) * 3.0);
    for (int s = 0; s < syllables; ++s) {
      const double dur = 0.12 + 0.12 * unit(rng);
      const auto n = static_cast<std::size_t>(dur * sample_rate);
      const double start_f0 = speaker.f0_hz * (1.0 + speaker.f0_glide * (2.0 * unit(rng) - 1.0));
      const double end_f0 = speaker.f0_hz * (1.0 + speaker.f0_glide * (2.0 * unit(rng) - 1.0));
      const double formant = speaker.formant_hz * (1.0 + 0.1 * (2.0 * unit(rng) - 1.0));
      const double loud = 0.6 + 0.4 * unit(rng);
      double phase = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double pos = double(i) / double(n);
        const double f0 = start_f0 + (end_f0 - start_f0) * pos;
        phase += two_pi * f0 / sample_rate;
        double v = 0.0;
        for (int h = 1; h * f0 < nyquist * 0.95; ++h) {
          const double f = h * f0;
          const double z = (f - formant) / speaker.formant_width_hz;
          const double amp = std::exp(-0.5 * z * z) + speaker.envelope_floor;
          v += amp * std::sin(h * phase);
        }
        const double env = std::sin(std::numbers::pi * pos);
        w.samples.push_back(loud * env * v * 0.1);
      }
      const auto gap = static_cast<std::size_t>(sample_rate * (0.02 + 0.04 * unit(rng)));
      w.samples.insert(w.samples.end(), gap, 0.0);
    }
    for (auto& x : w.samples) x += 1e-5 * noise(rng);
    out.push_back(std::move(w));
  }
  return out;
}

CorpusDataset make_toy_dataset(const ToySpeaker& speaker, std::size_t count, std::uint64_t seed,
                               const dsp::StftConfig& stft,
                               std::optional<std::size_t> target_frames,
                               const dsp::PreprocessConfig& pc) {
  CorpusDataset ds{stft, {}};
  const auto waves = synthesize_toy_utterances(speaker, count, seed, stft.sample_rate);
  for (std::size_t i = 0; i < waves.size(); ++i) {
    const auto spec = dsp::stft_magnitude(dsp::preprocess(waves[i], stft, target_frames, pc), stft);
    char name[64];
    std::snprintf(name, sizeof name, "%s_%03zu", speaker.name.c_str(), i);
    ds.items.push_back(make_item(speaker.name, name, spec));
  }
  return ds;
}

}  // namespace axialvc::data
