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

#include <optional>

#include "axialvc/dsp/stft.hpp"

namespace axialvc::dsp {

struct PreprocessConfig {
  double peak = 0.95;
  double trim_db = -40.0;  // relative to peak
  double trim_window_ms = 10.0;
};

// Peak-normalizes, removes leading silence and zero-pads the end to a whole
// number of STFT frames. With `target_frames` the result has at least that
// many frames, exactly that many whenever the trimmed audio fits.
//
// Leading silence ends at the first sample that is itself above the
// threshold and starts a 10 ms window whose RMS is above it as well, so the
// operation is idempotent.
Waveform preprocess(const Waveform& wave, const StftConfig& cfg,
                    std::optional<std::size_t> target_frames = std::nullopt,
                    const PreprocessConfig& pc = {});

}  // namespace axialvc::dsp
