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

// End-to-end operations shared by the command-line tool and the tests.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "axialvc/config/run_config.hpp"
#include "axialvc/data/dataset.hpp"
#include "axialvc/dsp/mel.hpp"
#include "axialvc/eval/report.hpp"
#include "axialvc/training/trainer.hpp"

namespace axialvc::pipeline {

// Two synthetic speakers (X = toy_a, Y = toy_b), each with a training set
// of cfg.toy_utterances items and a disjoint held-out set of
// cfg.toy_heldout items, all derived from cfg.seed.
struct ToyCorpus {
  data::CorpusDataset x_train, y_train, x_eval, y_eval;
};
ToyCorpus build_toy_corpus(const config::RunConfig& cfg);

struct PrepareSummary {
  std::size_t files = 0;
  std::size_t skipped = 0;
  std::size_t total_frames = 0;
  std::vector<std::string> warnings;
};

// Every *.wav directly inside `dir`, in name order, preprocessed to at least
// crop_frames frames. The identity label is the directory name. Unreadable
// files are skipped with a warning; no usable file is a ValidationError.
data::CorpusDataset prepare_directory(const std::filesystem::path& dir,
                                      const config::RunConfig& cfg,
                                      PrepareSummary* summary = nullptr);

enum class Direction { x2y, y2x };
Direction parse_direction(const std::string& s);

const model::Generator<float>& generator_for(const training::TrainState& s, Direction d);

// preprocess -> STFT -> generator over the whole utterance -> Griffin-Lim.
dsp::Waveform convert_wave(const training::TrainState& s, Direction d, const dsp::Waveform& in,
                           const config::RunConfig& cfg, std::uint64_t seed);

dsp::MelFilterbank eval_filterbank(const config::RunConfig& cfg);

// Converts every source item with `d` and scores it against the target
// items: paired by position under the parallel protocol, against the
// (first eval_references, or all) target items otherwise.
eval::EvalReport evaluate(const training::TrainState& s, Direction d,
                          const data::CorpusDataset& source, const data::CorpusDataset& target,
                          eval::Protocol protocol, const config::RunConfig& cfg);

}  // namespace axialvc::pipeline
