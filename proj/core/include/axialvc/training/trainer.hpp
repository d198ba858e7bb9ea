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
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "axialvc/data/dataset.hpp"
#include "axialvc/model/losses.hpp"
#include "axialvc/model/networks.hpp"
#include "axialvc/training/adam.hpp"

namespace axialvc::training {

struct ModelConfig {
  model::GeneratorConfig generator;
  model::DiscriminatorConfig discriminator;

  std::size_t bins() const { return generator.channels(); }
  void validate() const;
  // FNV-1a over a canonical text rendering; stored in checkpoints.
  std::uint64_t hash() const;
  std::string canonical() const;
  bool operator==(const ModelConfig&) const = default;
};

struct TrainConfig {
  std::uint64_t epochs = 200;
  std::size_t batch_size = 16;
  std::size_t crop_frames = 128;
  AdamConfig adam;
  double anneal_factor = 0.1;
  std::uint64_t anneal_every = 50;
  std::size_t d_updates_per_step = 1;
  std::uint64_t max_steps = 0;  // 0 = no cap beyond epochs
  model::LossWeights weights;
  model::LossOptions options;
  std::uint64_t seed = 0;

  void validate() const;
  double learning_rate(std::uint64_t epoch) const {
    return lr_schedule(epoch, adam.learning_rate, anneal_factor, anneal_every);
  }
};

struct CropDraw {
  std::size_t item = 0;
  std::size_t start = 0;
};

// Crops stored row-major [channels x frames], one vector per batch entry.
struct Batch {
  std::size_t channels = 0;
  std::size_t frames = 0;
  std::vector<std::vector<float>> x, y;
  std::vector<CropDraw> draws_x, draws_y;
};

// For each batch entry: an X draw (item, then start) followed by a Y draw,
// all from `rng`, uniform with replacement.
Batch sample_batch(const data::CorpusDataset& ds_x, const data::CorpusDataset& ds_y,
                   std::size_t batch_size, std::size_t crop_frames, std::mt19937_64& rng);

// Both generator/discriminator pairs with their optimizer moments.
struct TrainState {
  TrainState(const ModelConfig& cfg, std::uint64_t seed);

  ModelConfig config;
  model::Generator<float> g_xy, g_yx;
  model::Discriminator<float> d_x, d_y;
  AdamState<float> adam_g_xy, adam_g_yx, adam_d_x, adam_d_y;
  std::uint64_t epoch = 0;
  std::uint64_t step = 0;
  std::mt19937_64 rng;
};

// D_x and D_y update on the discriminator loss with generator outputs held
// constant, then G_xy and G_yx update jointly on the weighted total. Each
// phase advances spectral-norm power iteration once per discriminator.
// Throws NonFiniteError on any non-finite value.
model::LossReport train_step(TrainState& state, const Batch& batch, const TrainConfig& cfg,
                             double lr);

// One epoch = floor(min(|X|, |Y|) / batch_size) steps, at least one.
std::uint64_t steps_per_epoch(std::size_t nx, std::size_t ny, std::size_t batch_size);

struct TrainOptions {
  std::filesystem::path out_dir;        // empty: no files written
  std::uint64_t checkpoint_every = 10;  // epochs; 0 disables periodic saves
  std::string config_text;              // echoed into checkpoints and out_dir
  std::function<void(std::uint64_t step, const model::LossReport&)> on_step;
};

struct TrainSummary {
  std::uint64_t steps_run = 0;
  std::vector<model::LossReport> reports;
  std::filesystem::path final_checkpoint;
};

// Runs from state.step until the epoch budget or cfg.max_steps is reached.
// Appends to out_dir/train_log.csv, writing the header on a fresh run. On
// a non-finite value, saves out_dir/diverged.ckpt and rethrows.
TrainSummary train(TrainState& state, const data::CorpusDataset& ds_x,
                   const data::CorpusDataset& ds_y, const TrainConfig& cfg,
                   const TrainOptions& opts);

std::string format_log_row(std::uint64_t step, const model::LossReport& r);
inline constexpr const char* kLogHeader = "step,adv_d_x,adv_d_y,adv_g,cyc,id,total";

// Runs fn(i) for i in [0, n) on up to hardware_concurrency threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace axialvc::training
