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

#include "axialvc/model/inference.hpp"

#include "axialvc/error.hpp"

namespace axialvc::model {

template <typename T>
dsp::Spectrogram convert_spectrogram(const Generator<T>& g, const dsp::Spectrogram& spec) {
  spec.validate();
  if (spec.bins != g.config().channels()) {
    throw ValidationError("bin mismatch: model expects " + std::to_string(g.config().channels()) +
                          " bins, input has " + std::to_string(spec.bins));
  }
  ad::Tape<T> tape;
  const auto bound = g.bind(tape, false);
  const auto x =
      tape.constant({spec.bins, spec.frames}, std::vector<T>(spec.mag.begin(), spec.mag.end()));
  const auto y = bound(x);
  const auto v = y.values();
  return dsp::Spectrogram{spec.config, spec.bins, spec.frames,
                          std::vector<double>(v.begin(), v.end())};
}

template dsp::Spectrogram convert_spectrogram(const Generator<float>&, const dsp::Spectrogram&);
template dsp::Spectrogram convert_spectrogram(const Generator<double>&, const dsp::Spectrogram&);

}  // namespace axialvc::model
