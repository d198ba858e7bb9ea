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

#include "axialvc/model/networks.hpp"

#include <string>

namespace axialvc::model {
namespace {

void require_odd(std::size_t k, const char* what) {
  if (k == 0 || k % 2 == 0) throw ValidationError(std::string(what) + " kernel must be odd");
}

template <typename T>
void check_input(const ad::Tensor<T>& x, std::size_t channels, const char* who) {
  if (x.shape().size() != 2 || x.dim(0) != channels) {
    throw ValidationError(std::string(who) + ": expected " + std::to_string(channels) +
                          " channels, got input " + ad::to_string(x.shape()));
  }
}

}  // namespace

void GeneratorConfig::validate() const {
  block.validate();
  if (blocks == 0) throw ValidationError("generator: need at least one axial block");
  if (!(input_scale > 0.0)) throw ValidationError("generator: input scale must be positive");
}

void DiscriminatorConfig::validate() const {
  if (in_channels == 0 || hidden_channels == 0) {
    throw ValidationError("discriminator: channel counts must be positive");
  }
  if (blocks == 0) throw ValidationError("discriminator: need at least one residual block");
  require_odd(kernel, "discriminator block");
  require_odd(prenet_kernel, "discriminator prenet");
  require_odd(postnet_kernel, "discriminator postnet");
  if (!(noise_std >= 0.0)) throw ValidationError("discriminator: noise std must be >= 0");
  block().validate();
}

template <typename T>
Generator<T>::Generator(GeneratorConfig cfg) : cfg_(std::move(cfg)) {
  cfg_.validate();
  const std::size_t c = cfg_.channels();
  const auto& b = cfg_.block;
  params_.add_zeros("prenet.weight", {c, c, 1});
  params_.add_zeros("prenet.bias", {c});
  for (std::size_t i = 0; i < cfg_.blocks; ++i) {
    const std::string p = "blocks." + std::to_string(i) + ".";
    params_.add_zeros(p + "temporal.weight", b.temporal_weight_shape());
    params_.add_zeros(p + "temporal.bias", {c});
    params_.add_zeros(p + "freq.weight", b.freq_weight_shape());
    params_.add_zeros(p + "freq.bias", {c});
  }
  params_.add_zeros("postnet.weight", {c, c, 1});
  params_.add_zeros("postnet.bias", {c});
}

template <typename T>
Generator<T>::Generator(GeneratorConfig cfg, std::uint64_t seed) : Generator(std::move(cfg)) {
  std::mt19937_64 rng(seed);
  const std::size_t c = cfg_.channels();
  const auto& b = cfg_.block;
  for (auto& p : params_) {
    std::size_t fan_in = c;
    if (p.name.find("temporal") != std::string::npos) {
      fan_in = b.temporal_kernel;
    } else if (p.name.find("freq") != std::string::npos) {
      fan_in = c * b.freq_kernel;
    }
    init_uniform(p.value, fan_in, rng);
  }
}

template <typename T>
Generator<T> Generator<T>::identity(GeneratorConfig cfg) {
  Generator g(std::move(cfg));
  const std::size_t c = g.cfg_.channels();
  for (const char* name : {"prenet.weight", "postnet.weight"}) {
    auto& w = g.params_.at(name).value;
    for (std::size_t i = 0; i < c; ++i) w[i * c + i] = T(1);
  }
  return g;
}

template <typename T>
BoundGenerator<T> Generator<T>::bind(ad::Tape<T>& tape, bool trainable) const {
  return BoundGenerator<T>{cfg_, params_.bind(tape, trainable)};
}

template <typename T>
ad::Tensor<T> BoundGenerator<T>::operator()(const ad::Tensor<T>& spec) const {
  return generator_forward(spec, *this);
}

template <typename T>
ad::Tensor<T> generator_forward(const ad::Tensor<T>& spec, const BoundGenerator<T>& g) {
  const auto& cfg = g.config;
  const std::size_t c = cfg.channels();
  check_input(spec, c, "generator");
  if (g.leaves.size() != 4 + 4 * cfg.blocks) {
    throw ValidationError("generator: bound parameter count does not match config");
  }
  const auto pointwise = ad::ConvSpec::same(c, c, 1);
  auto h = cfg.input_scale == 1.0 ? spec : ad::scale(spec, cfg.input_scale);
  h = ad::conv1d(h, g.leaves[0], g.leaves[1], pointwise);
  for (std::size_t i = 0; i < cfg.blocks; ++i) {
    const std::size_t o = 2 + 4 * i;
    AxialBlockWeights<T> w{g.leaves[o], g.leaves[o + 1], g.leaves[o + 2], g.leaves[o + 3]};
    h = axial_block_forward(h, w, cfg.block);
  }
  const std::size_t post = 2 + 4 * cfg.blocks;
  h = ad::conv1d(h, g.leaves[post], g.leaves[post + 1], pointwise);
  if (cfg.input_scale != 1.0) h = ad::scale(h, 1.0 / cfg.input_scale);
  return ad::relu(h);
}

template <typename T>
Discriminator<T>::Discriminator(DiscriminatorConfig cfg, std::uint64_t seed)
    : cfg_(std::move(cfg)) {
  cfg_.validate();
  std::mt19937_64 rng(seed);
  const std::size_t c = cfg_.in_channels;
  const std::size_t h = cfg_.hidden_channels;
  auto add_conv = [&](const std::string& name, std::size_t out, std::size_t in, std::size_t k) {
    weight_index_.push_back(params_.size());
    auto& w = params_.add_zeros(name + ".weight", {out, in, k});
    init_uniform(w.value, in * k, rng);
    auto& b = params_.add_zeros(name + ".bias", {out});
    init_uniform(b.value, in * k, rng);
  };
  add_conv("prenet", h, c, cfg_.prenet_kernel);
  for (std::size_t i = 0; i < cfg_.blocks; ++i) {
    const std::string p = "blocks." + std::to_string(i) + ".";
    add_conv(p + "conv1", h, h, cfg_.kernel);
    add_conv(p + "conv2", h, h, cfg_.kernel);
  }
  add_conv("postnet", 1, h, cfg_.postnet_kernel);
  for (std::size_t idx : weight_index_) {
    sn_.push_back(make_spectral_norm_state<T>(params_[idx].shape[0], cfg_.sn_iterations, rng()));
  }
}

template <typename T>
void Discriminator<T>::advance_spectral_norm() {
  for (std::size_t i = 0; i < weight_index_.size(); ++i) {
    const auto& w = params_[weight_index_[i]];
    power_iterate<T>(w.value, w.shape[0], sn_[i], cfg_.sn_iterations);
  }
}

template <typename T>
std::vector<double> Discriminator<T>::sigmas() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < weight_index_.size(); ++i) {
    const auto& w = params_[weight_index_[i]];
    out.push_back(estimate_sigma<T>(w.value, w.shape[0], sn_[i]));
  }
  return out;
}

template <typename T>
BoundDiscriminator<T> Discriminator<T>::bind(ad::Tape<T>& tape, bool trainable) const {
  if (sn_.size() != weight_index_.size()) {
    throw ValidationError("discriminator: missing spectral-norm state");
  }
  return bind_leaves(params_.bind(tape, trainable), sigmas());
}

template <typename T>
BoundDiscriminator<T> Discriminator<T>::bind_leaves(std::vector<ad::Tensor<T>> leaves,
                                                    std::span<const double> sigmas) const {
  if (leaves.size() != params_.size() || sigmas.size() != weight_index_.size()) {
    throw ValidationError("discriminator: leaves or sigmas do not match the parameter set");
  }
  BoundDiscriminator<T> d;
  d.config = cfg_;
  d.leaves = std::move(leaves);
  for (std::size_t i = 0; i < weight_index_.size(); ++i) {
    const std::size_t wi = weight_index_[i];
    d.weights.push_back(ad::scale(d.leaves[wi], 1.0 / sigmas[i]));
    d.biases.push_back(d.leaves[wi + 1]);
  }
  return d;
}

template <typename T>
DiscriminatorOutput<T> BoundDiscriminator<T>::operator()(const ad::Tensor<T>& spec,
                                                         std::uint64_t noise_seed,
                                                         bool training) const {
  return discriminator_forward(spec, *this, noise_seed, training);
}

template <typename T>
DiscriminatorOutput<T> discriminator_forward(const ad::Tensor<T>& spec,
                                             const BoundDiscriminator<T>& d,
                                             std::uint64_t noise_seed, bool training) {
  const auto& cfg = d.config;
  check_input(spec, cfg.in_channels, "discriminator");
  if (d.weights.size() != 2 + 2 * cfg.blocks || d.biases.size() != d.weights.size()) {
    throw ValidationError("discriminator: missing spectral-norm state or weights");
  }
  const std::size_t hc = cfg.hidden_channels;
  auto h =
      training && cfg.noise_std > 0.0 ? ad::gaussian_noise(spec, cfg.noise_std, noise_seed) : spec;
  h = ad::conv1d(h, d.weights[0], d.biases[0],
                 ad::ConvSpec::same(cfg.in_channels, hc, cfg.prenet_kernel));
  h = ad::leaky_relu(h, cfg.activation_slope);
  DiscriminatorOutput<T> out;
  const auto block = cfg.block();
  for (std::size_t i = 0; i < cfg.blocks; ++i) {
    const std::size_t o = 1 + 2 * i;
    ConvBlockWeights<T> w{d.weights[o], d.biases[o], d.weights[o + 1], d.biases[o + 1]};
    h = conv_residual_block_forward(h, w, block);
    out.features.push_back(h);
  }
  out.logits = ad::conv1d(h, d.weights.back(), d.biases.back(),
                          ad::ConvSpec::same(hc, 1, cfg.postnet_kernel));
  return out;
}

template class Generator<float>;
template class Generator<double>;
template class Discriminator<float>;
template class Discriminator<double>;
template struct BoundGenerator<float>;
template struct BoundGenerator<double>;
template struct BoundDiscriminator<float>;
template struct BoundDiscriminator<double>;
template ad::Tensor<float> generator_forward(const ad::Tensor<float>&,
                                             const BoundGenerator<float>&);
template ad::Tensor<double> generator_forward(const ad::Tensor<double>&,
                                              const BoundGenerator<double>&);
template DiscriminatorOutput<float> discriminator_forward(const ad::Tensor<float>&,
                                                          const BoundDiscriminator<float>&,
                                                          std::uint64_t, bool);
template DiscriminatorOutput<double> discriminator_forward(const ad::Tensor<double>&,
                                                           const BoundDiscriminator<double>&,
                                                           std::uint64_t, bool);

}  // namespace axialvc::model
