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

#include <cstdint>
#include <string>
#include <vector>

#include "axialvc/data/dataset.hpp"
#include "axialvc/dsp/preprocess.hpp"
#include "axialvc/dsp/waveform.hpp"

namespace axialvc::data {

// A synthetic "speaker": voiced syllables built from harmonic stacks whose
// amplitudes follow a Gaussian spectral envelope.
struct ToySpeaker {
  std::string name;
  double f0_hz = 120.0;
  double f0_glide = 0.15;      // relative pitch excursion within a syllable
  double formant_hz = 1000.0;  // envelope center
  double formant_width_hz = 700.0;
  double envelope_floor = 0.02;
};

ToySpeaker toy_speaker_a();
ToySpeaker toy_speaker_b();

// Deterministic given `seed`. Each utterance opens with a short stretch of
// near-silence, then 3-5 syllables separated by brief pauses.
std::vector<dsp::Waveform> synthesize_toy_utterances(const ToySpeaker& speaker, std::size_t count,
                                                     std::uint64_t seed,
                                                     double sample_rate = dsp::kDefaultSampleRate);

// Synthesizes, preprocesses and analyzes `count` utterances. Item names are
// "<speaker>_<index>"; the identity is the speaker name.
CorpusDataset make_toy_dataset(const ToySpeaker& speaker, std::size_t count, std::uint64_t seed,
                               const dsp::StftConfig& stft,
                               std::optional<std::size_t> target_frames = std::nullopt,
                               const dsp::PreprocessConfig& pc = {});

}  // namespace axialvc::data
