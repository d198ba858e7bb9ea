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

#include "axialvc/eval/msd.hpp"

#include <cmath>

#include "axialvc/error.hpp"
#include "axialvc/eval/dtw.hpp"

namespace axialvc::eval {

double msd_parallel(const dsp::MelSpectrogram& converted, const dsp::MelSpectrogram& reference,
                    double multiplier) {
  return multiplier * dtw_align(converted, reference).normalized_cost;
}

std::vector<UtteranceMsd> msd_against_references(const std::vector<dsp::MelSpectrogram>& converted,
                                                 const std::vector<dsp::MelSpectrogram>& references,
                                                 double multiplier) {
  if (references.empty()) throw ValidationError("msd: empty reference sample");
  std::vector<UtteranceMsd> out;
  out.reserve(converted.size());
  for (const auto& c : converted) {
    std::vector<double> d;
    d.reserve(references.size());
    for (const auto& r : references) d.push_back(msd_parallel(c, r, multiplier));
    UtteranceMsd u;
    for (double v : d) u.mean += v;
    u.mean /= double(d.size());
    for (double v : d) u.std += (v - u.mean) * (v - u.mean);
    u.std = std::sqrt(u.std / double(d.size()));
    out.push_back(u);
  }
  return out;
}

namespace {
double mean_of_means(const std::vector<UtteranceMsd>& u) {
  double s = 0.0;
  for (const auto& x : u) s += x.mean;
  return u.empty() ? 0.0 : s / double(u.size());
}
}  // namespace

TargetStats make_target_stats(std::vector<dsp::MelSpectrogram> references, double multiplier) {
  if (references.empty()) throw ValidationError("msd: empty reference sample");
  TargetStats s;
  s.multiplier = multiplier;
  s.ground_truth = mean_of_means(msd_against_references(references, references, multiplier));
  s.references = std::move(references);
  return s;
}

NonParallelMsd msd_nonparallel(const std::vector<dsp::MelSpectrogram>& converted_set,
                               const TargetStats& stats) {
  NonParallelMsd r;
  r.per_utterance = msd_against_references(converted_set, stats.references, stats.multiplier);
  r.converted = mean_of_means(r.per_utterance);
  r.ground_truth = stats.ground_truth;
  return r;
}

double spectral_centroid(const dsp::Spectrogram& spec) {
  spec.validate();
  double sum = 0.0;
  std::size_t used = 0;
  for (std::size_t t = 0; t < spec.frames; ++t) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < spec.bins; ++k) {
      const double p = spec.at(k, t) * spec.at(k, t);
      num += p * spec.config.bin_hz(k);
      den += p;
    }
    if (den > 0.0) {
      sum += num / den;
      ++used;
    }
  }
  if (used == 0) throw ValidationError("spectral_centroid: spectrogram is all zero");
  return sum / double(used);
}

}  // namespace axialvc::eval
