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

#include "axialvc/data/dataset.hpp"

#include <cmath>

#include "../common/binary_io.hpp"

namespace axialvc::data {

namespace {
constexpr std::string_view kMagic = "AXVCSPEC";
}

std::size_t CorpusDataset::total_frames() const {
  std::size_t n = 0;
  for (const auto& it : items) n += it.frames;
  return n;
}

void CorpusDataset::validate() const {
  stft.validate();
  for (const auto& it : items) {
    if (it.mag.size() != bins() * it.frames) {
      throw ValidationError("dataset item " + it.name + ": storage does not match " +
                            std::to_string(bins()) + " x " + std::to_string(it.frames));
    }
    for (float m : it.mag) {
      if (!(m >= 0.0f) || !std::isfinite(m)) {
        throw ValidationError("dataset item " + it.name + ": magnitudes must be finite and >= 0");
      }
    }
  }
}

SpectrogramItem make_item(std::string identity, std::string name, const dsp::Spectrogram& spec) {
  SpectrogramItem it;
  it.identity = std::move(identity);
  it.name = std::move(name);
  it.frames = spec.frames;
  it.mag.assign(spec.mag.begin(), spec.mag.end());
  return it;
}

dsp::Spectrogram to_spectrogram(const SpectrogramItem& item, const dsp::StftConfig& stft) {
  dsp::Spectrogram s{stft, stft.bins(), item.frames,
                     std::vector<double>(item.mag.begin(), item.mag.end())};
  if (s.mag.size() != s.bins * s.frames) {
    throw ValidationError("item " + item.name + " does not match the STFT configuration");
  }
  return s;
}

CorpusDataset with_min_frames(const CorpusDataset& ds, std::size_t min_frames) {
  CorpusDataset out{ds.stft, {}};
  for (const auto& it : ds.items) {
    if (it.frames >= min_frames) out.items.push_back(it);
  }
  return out;
}

void save_dataset(const std::filesystem::path& path, const CorpusDataset& ds) {
  ds.validate();
  detail::BinaryWriter w;
  w.bytes(kMagic);
  w.u32(kDatasetVersion);
  w.u32(static_cast<std::uint32_t>(ds.stft.window_length));
  w.u32(static_cast<std::uint32_t>(ds.stft.hop));
  w.f64(ds.stft.sample_rate);
  w.u32(static_cast<std::uint32_t>(ds.bins()));
  w.u64(ds.items.size());
  for (const auto& it : ds.items) {
    w.str(it.identity);
    w.str(it.name);
    w.u32(static_cast<std::uint32_t>(it.frames));
    w.f32_array(it.mag);
  }
  w.finish(path);
}

CorpusDataset load_dataset(const std::filesystem::path& path) {
  detail::BinaryReader r(path, kMagic);
  const std::uint32_t version = r.u32();
  if (version != kDatasetVersion) {
    throw FormatError(path.string() + ": dataset version " + std::to_string(version) +
                      ", expected " + std::to_string(kDatasetVersion));
  }
  CorpusDataset ds;
  ds.stft.window_length = r.u32();
  ds.stft.hop = r.u32();
  ds.stft.sample_rate = r.f64();
  const std::uint32_t bins = r.u32();
  ds.stft.validate();
  if (bins != ds.bins()) throw FormatError(path.string() + ": bin count disagrees with window");
  const std::uint64_t count = r.u64();
  for (std::uint64_t i = 0; i < count; ++i) {
    SpectrogramItem it;
    it.identity = r.str();
    it.name = r.str();
    it.frames = r.u32();
    it.mag = r.f32_array<float>(bins * it.frames);
    ds.items.push_back(std::move(it));
  }
  r.expect_end();
  ds.validate();
  return ds;
}

}  // namespace axialvc::data
