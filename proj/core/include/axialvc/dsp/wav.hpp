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

#include <filesystem>

#include "axialvc/dsp/waveform.hpp"

namespace axialvc::dsp {

// Reads a mono RIFF/WAVE file holding 16-bit PCM or 32-bit IEEE float
// samples and resamples it to `target_rate` by linear interpolation.
// Multi-channel files are rejected.
Waveform read_wav(const std::filesystem::path& path, double target_rate = kDefaultSampleRate);

// Writes 16-bit PCM mono. Samples outside [-1, 1] are clipped.
void write_wav(const std::filesystem::path& path, const Waveform& wave);

Waveform resample_linear(const Waveform& wave, double target_rate);

}  // namespace axialvc::dsp
