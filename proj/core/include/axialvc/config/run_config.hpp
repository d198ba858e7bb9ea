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
#include <string_view>
#include <vector>

#include "axialvc/dsp/preprocess.hpp"
#include "axialvc/dsp/stft.hpp"
#include "axialvc/training/trainer.hpp"

namespace axialvc::config {

// Every tunable of a run, serialized as flat `key=value` lines. Defaults
// are the full-scale model and training schedule.
struct RunConfig {
  // analysis
  double sample_rate = 22050.0;
  std::uint64_t window_length = 1024;
  std::uint64_t hop = 256;
  std::uint64_t bins = 513;  // must equal window_length / 2 + 1
  double preprocess_peak = 0.95;
  double trim_db = -40.0;
  double trim_window_ms = 10.0;

  // generator
  std::uint64_t gen_blocks = 7;
  std::uint64_t temporal_kernel = 17;
  std::string temporal_mode = "depthwise";  // depthwise | lightweight
  std::uint64_t lightweight_share = 1;
  std::uint64_t freq_kernel = 3;
  double gen_slope = 0.01;
  std::string residual_mode = "once";  // once | twice
  double input_scale = 1.0;

  // discriminator
  std::uint64_t disc_blocks = 5;
  std::uint64_t disc_channels = 256;
  std::uint64_t disc_kernel = 5;
  std::uint64_t disc_prenet_kernel = 1;
  std::uint64_t disc_postnet_kernel = 1;
  double disc_slope = 0.2;
  double disc_noise_std = 0.01;
  std::uint64_t sn_iterations = 1;

  // training
  std::uint64_t epochs = 200;
  std::uint64_t batch_size = 16;
  std::uint64_t crop_frames = 128;
  double learning_rate = 2.0e-4;
  double beta1 = 0.5;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
  double anneal_factor = 0.1;
  std::uint64_t anneal_every = 50;
  std::uint64_t d_updates_per_step = 1;
  std::uint64_t max_steps = 0;
  double lambda_adv = 1.0;
  double lambda_cyc = 10.0;
  double lambda_id = 1.0;
  bool feature_matching = true;
  bool extended_identity = true;
  bool saturating_adversarial = false;
  std::uint64_t seed = 0;
  std::uint64_t checkpoint_every = 10;

  // synthesis and evaluation
  std::uint64_t griffin_lim_iterations = 32;
  std::uint64_t eval_n_mels = 40;
  double eval_f_min = 0.0;
  double eval_f_max = 8000.0;
  double msd_multiplier = 1.0;
  std::uint64_t eval_references = 0;  // 0 = every reference utterance

  // built-in synthetic corpus
  std::uint64_t toy_utterances = 24;
  std::uint64_t toy_heldout = 10;

  // paths
  std::string data_x;
  std::string data_y;
  std::string out_dir;

  // Desk-scale preset: 128-sample window, 65 bins, 3 generator blocks.
  static RunConfig toy();

  void validate() const;
  dsp::StftConfig stft() const;
  dsp::PreprocessConfig preprocess() const;
  training::ModelConfig model() const;
  training::TrainConfig train() const;

  bool operator==(const RunConfig&) const = default;
};

// Keys in declaration order.
const std::vector<std::string_view>& run_config_keys();

// Applies `key=value` lines on top of `base`. Blank lines and `#` comments
// are ignored; unknown or repeated keys and malformed values throw
// ValidationError naming the line.
RunConfig parse_run_config(std::string_view text, const RunConfig& base = {});
RunConfig load_run_config(const std::filesystem::path& path, const RunConfig& base = {});
// Sets a single key; throws ValidationError on an unknown key or bad value.
void set_run_config_value(RunConfig& cfg, std::string_view key, std::string_view value);
std::string serialize_run_config(const RunConfig& cfg);

}  // namespace axialvc::config
