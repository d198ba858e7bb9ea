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
#include <cstdint>
#include <span>
#include <vector>

namespace axialvc::model {

inline constexpr double kSigmaFloor = 1e-12;

// Power-iteration state for one weight, viewed as a [rows x cols] matrix
// (a conv kernel reshaped to [C_out x C_in/groups * k]). `u` is the running
// estimate of the leading left singular vector, kept at unit norm.
template <typename T>
struct SpectralNormState {
  std::vector<T> u;
  std::size_t iterations = 1;
};

template <typename T>
SpectralNormState<T> make_spectral_norm_state(std::size_t rows, std::size_t iterations,
                                              std::uint64_t seed);

// Runs `iterations` rounds of v = W^T u / |W^T u|, u = W v / |W v|.
template <typename T>
void power_iterate(std::span<const T> w, std::size_t rows, SpectralNormState<T>& state,
                   std::size_t iterations);

// sigma ~= u^T W v with v = W^T u / |W^T u|, i.e. |W^T u|, floored at 1e-12.
template <typename T>
double estimate_sigma(std::span<const T> w, std::size_t rows, const SpectralNormState<T>& state);

// Advances the state by state.iterations rounds and returns W / sigma.
template <typename T>
std::vector<T> spectral_normalize(std::span<const T> w, std::size_t rows,
                                  SpectralNormState<T>& state, double* sigma = nullptr);

}  // namespace axialvc::model
