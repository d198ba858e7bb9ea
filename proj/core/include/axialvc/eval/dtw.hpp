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
#include <span>
#include <utility>
#include <vector>

#include "axialvc/dsp/mel.hpp"

namespace axialvc::eval {

struct DtwResult {
  std::vector<std::pair<std::size_t, std::size_t>> path;
  double total_cost = 0.0;
  double normalized_cost = 0.0;  // total_cost / path.size()
};

// Minimal-cost monotone alignment with steps (1,0), (0,1), (1,1) and the
// Euclidean distance between frame vectors as the local cost. Frames are
// the columns of the [n_mels x frames] matrices.
DtwResult dtw_align(const dsp::MelSpectrogram& a, const dsp::MelSpectrogram& b);

// Same, on row-major [dim x ta] and [dim x tb] matrices.
DtwResult dtw_align(std::span<const double> a, std::size_t ta, std::span<const double> b,
                    std::size_t tb, std::size_t dim);

// Euclidean distance between column i of a and column j of b.
double frame_distance(std::span<const double> a, std::size_t ta, std::size_t i,
                      std::span<const double> b, std::size_t tb, std::size_t j, std::size_t dim);

}  // namespace axialvc::eval
