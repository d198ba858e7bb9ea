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
#include <vector>

#include "axialvc/model/blocks.hpp"
#include "axialvc/model/parameters.hpp"
#include "axialvc/model/spectral_norm.hpp"

namespace axialvc::model {

struct GeneratorConfig {
  AxialBlockConfig block;
  std::size_t blocks = 7;
  // Static gain applied to the input and undone on the output.
  double input_scale = 1.0;

  std::size_t channels() const { return block.channels; }
  void validate() const;
  bool operator==(const GeneratorConfig&) const = default;
};

struct DiscriminatorConfig {
  std::size_t in_channels = 513;
  std::size_t hidden_channels = 256;
  std::size_t blocks = 5;
  std::size_t kernel = 5;
  std::size_t prenet_kernel = 1;
  std::size_t postnet_kernel = 1;
  double activation_slope = 0.2;
  double noise_std = 0.01;
  std::size_t sn_iterations = 1;

  ConvBlockConfig block() const { return {hidden_channels, kernel, activation_slope}; }
  void validate() const;
  bool operator==(const DiscriminatorConfig&) const = default;
};

// Bound view of a generator on one tape.
template <typename T>
struct BoundGenerator {
  GeneratorConfig config;
  std::vector<ad::Tensor<T>> leaves;  // aligned with Generator::parameters()

  ad::Tensor<T> operator()(const ad::Tensor<T>& spec) const;
};

// relu(postnet(blocks(prenet(x)))): 1x1 prenet, a stack of axial residual
// blocks, 1x1 postnet, all C -> C.
template <typename T>
class Generator {
 public:
  Generator(GeneratorConfig cfg, std::uint64_t seed);

  // Pre/postnet set to the identity and every block zeroed, so the network
  // maps nonnegative inputs to themselves.
  static Generator identity(GeneratorConfig cfg);

  const GeneratorConfig& config() const { return cfg_; }
  ParameterSet<T>& parameters() { return params_; }
  const ParameterSet<T>& parameters() const { return params_; }

  BoundGenerator<T> bind(ad::Tape<T>& tape, bool trainable) const;

 private:
  explicit Generator(GeneratorConfig cfg);
  GeneratorConfig cfg_;
  ParameterSet<T> params_;
};

template <typename T>
ad::Tensor<T> generator_forward(const ad::Tensor<T>& spec, const BoundGenerator<T>& g);

template <typename T>
struct DiscriminatorOutput {
  ad::Tensor<T> logits;                 // [1 x T]
  std::vector<ad::Tensor<T>> features;  // one per residual block
};

template <typename T>
struct BoundDiscriminator {
  DiscriminatorConfig config;
  std::vector<ad::Tensor<T>> leaves;   // raw parameters, aligned with parameters()
  std::vector<ad::Tensor<T>> weights;  // spectrally normalized weights, one per conv
  std::vector<ad::Tensor<T>> biases;   // one per conv

  DiscriminatorOutput<T> operator()(const ad::Tensor<T>& spec, std::uint64_t noise_seed,
                                    bool training) const;
};

// Per-frame discriminator: noise, 1x1 prenet + LeakyReLU, conventional
// residual blocks, postnet to a single logit per frame. Every conv weight is
// spectrally normalized.
template <typename T>
class Discriminator {
 public:
  Discriminator(DiscriminatorConfig cfg, std::uint64_t seed);

  const DiscriminatorConfig& config() const { return cfg_; }
  ParameterSet<T>& parameters() { return params_; }
  const ParameterSet<T>& parameters() const { return params_; }

  // Conv layers in forward order; index into parameters() of each weight.
  std::size_t conv_count() const { return weight_index_.size(); }
  std::size_t weight_index(std::size_t conv) const { return weight_index_.at(conv); }
  std::vector<SpectralNormState<T>>& spectral_state() { return sn_; }
  const std::vector<SpectralNormState<T>>& spectral_state() const { return sn_; }

  // One round of `config().sn_iterations` power iterations on every conv.
  void advance_spectral_norm();
  // Current sigma estimate for every conv.
  std::vector<double> sigmas() const;

  // Weights enter the tape as W / sigma with sigma held constant.
  BoundDiscriminator<T> bind(ad::Tape<T>& tape, bool trainable) const;
  // Same, from leaves aligned with parameters() and explicit sigmas.
  BoundDiscriminator<T> bind_leaves(std::vector<ad::Tensor<T>> leaves,
                                    std::span<const double> sigmas) const;

 private:
  DiscriminatorConfig cfg_;
  ParameterSet<T> params_;
  std::vector<std::size_t> weight_index_;
  std::vector<SpectralNormState<T>> sn_;
};

template <typename T>
DiscriminatorOutput<T> discriminator_forward(const ad::Tensor<T>& spec,
                                             const BoundDiscriminator<T>& d,
                                             std::uint64_t noise_seed, bool training);

extern template class Generator<float>;
extern template class Generator<double>;
extern template class Discriminator<float>;
extern template class Discriminator<double>;

}  // namespace axialvc::model
