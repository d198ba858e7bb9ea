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

#include <cstddef>
#include <vector>

#include "axialvc/dsp/mel.hpp"
#include "axialvc/dsp/stft.hpp"

namespace axialvc::eval {

// Mean Euclidean log-mel distance along the DTW path, times `multiplier`.
double msd_parallel(const dsp::MelSpectrogram& converted, const dsp::MelSpectrogram& reference,
                    double multiplier = 1.0);

struct UtteranceMsd {
  double mean = 0.0;  // over references
  double std = 0.0;   // population std over references
};

// Per-utterance mean and spread of msd_parallel against every reference.
std::vector<UtteranceMsd> msd_against_references(const std::vector<dsp::MelSpectrogram>& converted,
                                                 const std::vector<dsp::MelSpectrogram>& references,
                                                 double multiplier = 1.0);

// Real target-identity utterances and the pairwise baseline among them.
struct TargetStats {
  std::vector<dsp::MelSpectrogram> references;
  double multiplier = 1.0;
  // Mean over every ordered pair (i, j) of references, i == j included.
  double ground_truth = 0.0;
};

TargetStats make_target_stats(std::vector<dsp::MelSpectrogram> references, double multiplier = 1.0);

struct NonParallelMsd {
  std::vector<UtteranceMsd> per_utterance;
  double converted = 0.0;     // mean of the per-utterance means
  double ground_truth = 0.0;  // TargetStats::ground_truth
};

NonParallelMsd msd_nonparallel(const std::vector<dsp::MelSpectrogram>& converted_set,
                               const TargetStats& stats);

// Power-weighted mean bin frequency per frame, averaged over frames with
// nonzero energy. Throws on an all-zero spectrogram.
double spectral_centroid(const dsp::Spectrogram& spec);

}  // namespace axialvc::eval
