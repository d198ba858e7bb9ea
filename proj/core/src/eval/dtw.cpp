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

#include "axialvc/eval/dtw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "axialvc/error.hpp"

namespace axialvc::eval {

double frame_distance(std::span<const double> a, std::size_t ta, std::size_t i,
                      std::span<const double> b, std::size_t tb, std::size_t j, std::size_t dim) {
  double s = 0.0;
  for (std::size_t d = 0; d < dim; ++d) {
    const double diff = a[d * ta + i] - b[d * tb + j];
    s += diff * diff;
  }
  return std::sqrt(s);
}

DtwResult dtw_align(std::span<const double> a, std::size_t ta, std::span<const double> b,
                    std::size_t tb, std::size_t dim) {
  if (ta == 0 || tb == 0 || dim == 0) throw ValidationError("dtw: empty input");
  if (a.size() != dim * ta || b.size() != dim * tb) {
    throw ValidationError("dtw: storage does not match dimensions");
  }
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> acc(ta * tb, inf);
  auto at = [&](std::size_t i, std::size_t j) -> double& { return acc[i * tb + j]; };
  for (std::size_t i = 0; i < ta; ++i) {
    for (std::size_t j = 0; j < tb; ++j) {
      const double c = frame_distance(a, ta, i, b, tb, j, dim);
      if (i == 0 && j == 0) {
        at(i, j) = c;
        continue;
      }
      double best = inf;
      if (i > 0 && j > 0) best = at(i - 1, j - 1);
      if (i > 0) best = std::min(best, at(i - 1, j));
      if (j > 0) best = std::min(best, at(i, j - 1));
      at(i, j) = best + c;
    }
  }

  DtwResult r;
  r.total_cost = at(ta - 1, tb - 1);
  std::size_t i = ta - 1, j = tb - 1;
  r.path.emplace_back(i, j);
  while (i > 0 || j > 0) {
    // Ties prefer the diagonal, then advancing a, then b.
    if (i > 0 && j > 0 && at(i - 1, j - 1) <= at(i - 1, j) && at(i - 1, j - 1) <= at(i, j - 1)) {
      --i;
      --j;
    } else if (i > 0 && (j == 0 || at(i - 1, j) <= at(i, j - 1))) {
      --i;
    } else {
      --j;
    }
    r.path.emplace_back(i, j);
  }
  std::reverse(r.path.begin(), r.path.end());
  r.normalized_cost = r.total_cost / double(r.path.size());
  return r;
}

DtwResult dtw_align(const dsp::MelSpectrogram& a, const dsp::MelSpectrogram& b) {
  if (a.n_mels != b.n_mels) {
    throw ValidationError("dtw: mel channel counts differ (" + std::to_string(a.n_mels) + " vs " +
                          std::to_string(b.n_mels) + ")");
  }
  return dtw_align(a.logmel, a.frames, b.logmel, b.frames, a.n_mels);
}

}  // namespace axialvc::eval
