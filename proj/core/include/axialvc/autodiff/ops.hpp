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
#include <span>

#include "axialvc/autodiff/tensor.hpp"

namespace axialvc::ad {

// Grouped 1D convolution geometry. Padding is symmetric, in frames.
struct ConvSpec {
  std::size_t in_channels = 1;
  std::size_t out_channels = 1;
  std::size_t kernel = 1;
  std::size_t stride = 1;
  std::size_t groups = 1;
  std::size_t padding = 0;

  // Throws ValidationError if channels are not divisible by groups.
  void validate() const;
  // Output length for an input of `frames` frames; throws if the stride does
  // not divide the padded span evenly or the kernel does not fit.
  std::size_t output_frames(std::size_t frames) const;

  // Stride-1 conv with (k - 1) / 2 padding on each side. Preserves length
  // for odd kernels.
  static ConvSpec same(std::size_t in_channels, std::size_t out_channels, std::size_t kernel,
                       std::size_t groups = 1);
};

// Cross-correlation (no kernel flip) with zero padding.
// input [C_in x T], weight [C_out x C_in/groups x k], bias [C_out].
template <typename T>
Tensor<T> conv1d(const Tensor<T>& input, const Tensor<T>& weight, const Tensor<T>& bias,
                 const ConvSpec& spec);

template <typename T>
Tensor<T> relu(const Tensor<T>& x);

// Copy of `x` recorded as a constant; gradients stop here.
template <typename T>
Tensor<T> detach(const Tensor<T>& x);

// max(x, slope * x); the subgradient at 0 is `slope`.
template <typename T>
Tensor<T> leaky_relu(const Tensor<T>& x, double slope);

template <typename T>
Tensor<T> add(const Tensor<T>& a, const Tensor<T>& b);

// Elementwise product. Used by the gradient-check harness to reduce
// non-scalar outputs with random weights.
template <typename T>
Tensor<T> mul(const Tensor<T>& a, const Tensor<T>& b);

template <typename T>
Tensor<T> scale(const Tensor<T>& x, double factor);

template <typename T>
Tensor<T> sum(const Tensor<T>& x);

template <typename T>
Tensor<T> mean(const Tensor<T>& x);

// Stacks 2D tensors [C_i x T] into [sum(C_i) x T].
template <typename T>
Tensor<T> concat_channels(std::span<const Tensor<T>> parts);

template <typename T>
Tensor<T> reshape(const Tensor<T>& x, Shape shape);

// Repeats every slice along axis 0 `times` times in place:
// [R x ...] -> [R*times x ...], row r of the output is row r / times.
template <typename T>
Tensor<T> repeat_rows(const Tensor<T>& x, std::size_t times);

// Mean absolute difference. Subgradient at a == b is 0.
template <typename T>
Tensor<T> l1_loss(const Tensor<T>& a, const Tensor<T>& b);

// Mean of softplus(-z) when target_is_real, softplus(z) otherwise.
template <typename T>
Tensor<T> bce_with_logits(const Tensor<T>& logits, bool target_is_real);

// x + N(0, std^2) drawn from a generator seeded with `seed`. The noise is a
// constant for backward.
template <typename T>
Tensor<T> gaussian_noise(const Tensor<T>& x, double std, std::uint64_t seed);

}  // namespace axialvc::ad
