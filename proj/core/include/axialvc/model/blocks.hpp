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

#include "axialvc/autodiff/ops.hpp"

namespace axialvc::model {

enum class TemporalMode { depthwise, lightweight };
enum class ResidualMode { once, twice };

struct AxialBlockConfig {
  std::size_t channels = 513;
  std::size_t temporal_kernel = 17;
  TemporalMode temporal_mode = TemporalMode::depthwise;
  std::size_t lightweight_share = 1;  // channels per shared kernel
  std::size_t freq_kernel = 3;
  double activation_slope = 0.01;
  ResidualMode residual_mode = ResidualMode::once;

  void validate() const;
  // [C x 1 x k] for depthwise, [C/H x k] for lightweight.
  ad::Shape temporal_weight_shape() const;
  ad::Shape freq_weight_shape() const { return {channels, channels, freq_kernel}; }

  bool operator==(const AxialBlockConfig&) const = default;
};

struct ConvBlockConfig {
  std::size_t channels = 256;
  std::size_t kernel = 5;
  double activation_slope = 0.2;

  void validate() const;
  bool operator==(const ConvBlockConfig&) const = default;
};

template <typename T>
struct AxialBlockWeights {
  ad::Tensor<T> temporal_weight;
  ad::Tensor<T> temporal_bias;
  ad::Tensor<T> freq_weight;
  ad::Tensor<T> freq_bias;
};

template <typename T>
struct ConvBlockWeights {
  ad::Tensor<T> conv1_weight;
  ad::Tensor<T> conv1_bias;
  ad::Tensor<T> conv2_weight;
  ad::Tensor<T> conv2_bias;
};

// Channel c is filtered with kernel c / H, so C/H kernels of length k serve
// all C channels. kernels: [C/H x k], bias: [C].
template <typename T>
ad::Tensor<T> lightweight_temporal_conv(const ad::Tensor<T>& x, const ad::Tensor<T>& kernels,
                                        const ad::Tensor<T>& bias, const AxialBlockConfig& cfg);

// once:  y = x + Freq(LeakyReLU(Temporal(x)))
// twice: h = x + Temporal(x); y = h + Freq(LeakyReLU(h))
// Temporal is a stride-1 depthwise (or lightweight) conv over frames,
// Freq a full C -> C conv of width freq_kernel. Output shape equals input
// shape for every T >= 1.
template <typename T>
ad::Tensor<T> axial_block_forward(const ad::Tensor<T>& x, const AxialBlockWeights<T>& w,
                                  const AxialBlockConfig& cfg);

// y = x + Conv(LeakyReLU(Conv(x))), both convs full and shape-preserving.
template <typename T>
ad::Tensor<T> conv_residual_block_forward(const ad::Tensor<T>& x, const ConvBlockWeights<T>& w,
                                          const ConvBlockConfig& cfg);

struct ReceptiveField {
  std::size_t samples = 0;
  double milliseconds = 0.0;
  double hertz = 0.0;
};

// Audio span seen by a stack of `blocks` temporal convs of width
// `temporal_kernel` on frames of `window` samples spaced `hop` apart.
ReceptiveField receptive_field(std::size_t temporal_kernel, std::size_t blocks, std::size_t hop,
                               std::size_t window, double sample_rate);

}  // namespace axialvc::model
