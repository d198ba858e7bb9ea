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
#include <filesystem>
#include <string>
#include <vector>

#include "axialvc/dsp/stft.hpp"

namespace axialvc::data {

// One preprocessed utterance, magnitudes row-major [bins x frames].
struct SpectrogramItem {
  std::string identity;
  std::string name;
  std::size_t frames = 0;
  std::vector<float> mag;
};

// Spectrograms of one or more identities sharing an STFT configuration.
struct CorpusDataset {
  dsp::StftConfig stft;
  std::vector<SpectrogramItem> items;

  std::size_t bins() const { return stft.bins(); }
  std::size_t size() const { return items.size(); }
  bool empty() const { return items.empty(); }
  std::size_t total_frames() const;
  // Checks storage sizes and that every magnitude is finite and >= 0.
  void validate() const;
};

SpectrogramItem make_item(std::string identity, std::string name, const dsp::Spectrogram& spec);
dsp::Spectrogram to_spectrogram(const SpectrogramItem& item, const dsp::StftConfig& stft);

// Items with fewer than `min_frames` frames are dropped.
CorpusDataset with_min_frames(const CorpusDataset& ds, std::size_t min_frames);

// Binary container: magic "AXVCSPEC", version, STFT config, length-prefixed
// items as little-endian float32, trailing FNV-1a checksum.
inline constexpr std::uint32_t kDatasetVersion = 1;
void save_dataset(const std::filesystem::path& path, const CorpusDataset& ds);
CorpusDataset load_dataset(const std::filesystem::path& path);

}  // namespace axialvc::data
