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

#include "axialvc/training/trainer.hpp"

namespace axialvc::training {

inline constexpr std::uint32_t kCheckpointVersion = 1;

struct Checkpoint {
  std::string config_text;
  TrainState state;
};

// Layout: magic "AXVCCKPT", version, model-config hash, model config,
// config text, then each network's named parameter blocks (float32) and
// spectral-norm vectors, the four Adam states, epoch, step, RNG state and
// a trailing FNV-1a checksum.
void save_checkpoint(const std::filesystem::path& path, const TrainState& state,
                     const std::string& config_text = {});

// Throws FormatError on a bad magic, version, hash or checksum; nothing is
// returned unless the whole file parsed.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace axialvc::training
